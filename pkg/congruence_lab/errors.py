"""
Exception hierarchy for congruence-lab.

Every error raised by the library derives from ``CongruenceLabError``; the
arithmetic ones also derive from ``ArithmeticError`` and the lookup ones from
``KeyError`` so callers may catch the builtin family instead.
"""

from typing import Any, Optional


class CongruenceLabError(Exception):
    """Base class for all congruence-lab errors."""


class NotInvertible(CongruenceLabError, ArithmeticError):
    """A residue shares a factor with its modulus."""

    def __init__(self, value: int, modulus: int):
        self.value = value
        self.modulus = modulus
        super().__init__(f"{value} is not invertible mod {modulus}")


class ModulusMismatch(CongruenceLabError, ArithmeticError):
    """Arithmetic was attempted between residues of different moduli."""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"cannot combine residues mod {left} and mod {right}")


class KTooLarge(CongruenceLabError, ArithmeticError):
    """A binomial lower index is not below the prime, so k! is not a unit."""

    def __init__(self, k: int, p: int):
        self.k = k
        self.p = p
        super().__init__(f"binomial index k={k} must be below p={p}")


class DivByP(CongruenceLabError, ArithmeticError):
    """The Fermat quotient base is divisible by the prime."""

    def __init__(self, a: int, p: int):
        self.a = a
        self.p = p
        super().__init__(f"{p} divides {a}")


class NonResidue(CongruenceLabError, ArithmeticError):
    """No square root exists modulo the prime."""

    def __init__(self, value: int, p: int):
        self.value = value
        self.p = p
        super().__init__(f"{value} is not a quadratic residue mod {p}")


class WrongResidueClass(CongruenceLabError, ValueError):
    """The prime is not congruent to 1 mod 4."""

    def __init__(self, p: int):
        self.p = p
        super().__init__(f"{p} is not a prime congruent to 1 mod 4")


class OrderMismatch(CongruenceLabError, ArithmeticError):
    """Two power series were combined at different truncation orders."""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"series orders differ: {left} != {right}")


class ZeroConstantTerm(CongruenceLabError, ArithmeticError):
    """A power series with zero constant term cannot be inverted."""

    def __init__(self):
        super().__init__("cannot invert a series with zero constant term")


class IndexPastOrder(CongruenceLabError, IndexError):
    """A coefficient beyond the truncation order was requested."""

    def __init__(self, index: int, order: int):
        self.index = index
        self.order = order
        super().__init__(f"coefficient {index} is past truncation order {order}")


class NonIntegerSolution(CongruenceLabError, ArithmeticError):
    """Back-substitution on the Shanks identity left a fractional entry."""

    def __init__(self, n: int, i: int, m: int, value: Any):
        self.n = n
        self.i = i
        self.m = m
        self.value = value
        super().__init__(f"E^({i})({n},{m}) solved to non-integer {value}")


class EvenIndex(CongruenceLabError, ValueError):
    """Tangent numbers are only indexed by odd integers."""

    def __init__(self, n: int):
        self.n = n
        super().__init__(f"tangent numbers need an odd index, got {n}")


class InexactDivision(CongruenceLabError, ArithmeticError):
    """An integer division that must be exact left a remainder."""

    def __init__(self, numerator: int, denominator: int):
        self.numerator = numerator
        self.denominator = denominator
        super().__init__(f"{denominator} does not divide {numerator}")


class TooLarge(CongruenceLabError, ValueError):
    """An enumeration was requested beyond its cap."""

    def __init__(self, what: str, size: Any, cap: Any):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class NotApplicable(CongruenceLabError):
    """A check does not apply at the requested prime or parameters."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class UnknownIdentity(CongruenceLabError, KeyError):
    """No identity is registered under the given id."""

    def __init__(self, identity_id: str):
        self.identity_id = identity_id
        super().__init__(f"unknown identity {identity_id!r}")

    def __str__(self) -> str:
        return self.args[0]


class UnknownCheck(CongruenceLabError, KeyError):
    """No congruence check is registered under the given id."""

    def __init__(self, check_id: str):
        self.check_id = check_id
        super().__init__(f"unknown check {check_id!r}")

    def __str__(self) -> str:
        return self.args[0]


class ConfigError(CongruenceLabError, ValueError):
    """Invalid suite configuration or command-line usage."""

    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        super().__init__(message)
