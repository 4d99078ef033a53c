"""
Exact and modular arithmetic.

Integers are Python ``int`` (arbitrary precision) and rationals are
``fractions.Fraction``; ``Residue`` is the fixed-modulus carrier used by every
congruence check.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

import numpy as np

from .errors import (
    DivByP,
    KTooLarge,
    ModulusMismatch,
    NonResidue,
    NotInvertible,
    WrongResidueClass,
)

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

# numpy bitmaps above this size are refused by primes_in
SIEVE_LIMIT = 2 ** 31


@dataclass(frozen=True)
class Residue:
    """
    A value of Z/m. The value is always reduced into ``[0, modulus)``.

    Arithmetic is only defined between residues of the same modulus; plain
    integers are coerced into the ring.
    """

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(self.modulus, other.modulus)
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return to_residue(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(self.value * inverse_mod(v, self.modulus), self.modulus)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(v * inverse_mod(self.value, self.modulus), self.modulus)

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pow__(self, exponent: int):
        return mod_pow(self, exponent)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)

    def inverse(self) -> "Residue":
        return mod_inverse(self)

    def is_unit(self) -> bool:
        return math.gcd(self.value, self.modulus) == 1


@dataclass(frozen=True)
class PrimeRange:
    """Closed range ``[lo, hi]`` of primes; 2 and 3 are never produced."""

    lo: int
    hi: int

    def __iter__(self):
        return iter(primes_in(self))


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended Euclidean algorithm.

    Returns:
        Tuple[int, int, int]: ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)``
    """
    x0, x1, y0, y1 = 0, 1, 1, 0
    while a != 0:
        q, b, a = b // a, a, b % a
        y0, y1 = y1, y0 - q * y1
        x0, x1 = x1, x0 - q * x1
    return b, x0, y0


def inverse_mod(value: int, modulus: int) -> int:
    """Inverse of ``value`` mod ``modulus`` as a plain integer in ``[0, modulus)``."""
    value %= modulus
    g, x, _ = xgcd(value, modulus)
    if g != 1:
        raise NotInvertible(value, modulus)
    return x % modulus


def to_residue(x: Rational, modulus: int) -> int:
    """
    Reduce an exact integer or rational into ``[0, modulus)``.

    Args:
        x (int | Fraction): exact value
        modulus (int): target modulus

    Returns:
        int: ``num * inv(den) mod modulus``

    Raises:
        NotInvertible: if the denominator is not a unit
    """
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator % modulus
        return x.numerator * inverse_mod(x.denominator, modulus) % modulus
    return x % modulus


def mod_inverse(a: Residue) -> Residue:
    """
    Multiplicative inverse of a unit residue.

    Raises:
        NotInvertible: when ``gcd(a.value, a.modulus) != 1``
    """
    return Residue(inverse_mod(a.value, a.modulus), a.modulus)


def mod_pow(a: Residue, e: int) -> Residue:
    """Square-and-multiply power ``a**e`` for a nonnegative exponent of any size."""
    if e < 0:
        return mod_pow(mod_inverse(a), -e)
    return Residue(pow(a.value, e, a.modulus), a.modulus)


def binomial_exact(n: int, k: int) -> int:
    """Exact binomial coefficient; ``k > n`` yields 0."""
    if k < 0 or n < 0:
        return 0
    return math.comb(n, k)


def binomial_poly(y: Rational, k: int) -> Rational:
    """
    Binomial coefficient as the polynomial ``y(y-1)...(y-k+1)/k!``.

    Unlike ``binomial_exact`` this accepts negative and rational upper indices,
    which the Worpitsky and Shanks identities need.
    """
    if k < 0:
        return 0
    num: Rational = 1
    for j in range(k):
        num *= y - j
    result = Fraction(num, math.factorial(k))
    return result.numerator if result.denominator == 1 else result


def binomial_mod(n: int, k: int, p: int, e: int = 1) -> Residue:
    """
    ``C(n, k) mod p**e`` for a small ``k < p`` and an arbitrarily large ``n``.

    The falling factorial is reduced mod ``p**e`` factor by factor and then
    multiplied by the inverse of ``k!``, which is a unit because ``k < p``.

    Raises:
        KTooLarge: if ``k >= p``
    """
    if k >= p:
        raise KTooLarge(k, p)
    modulus = p ** e
    if k < 0:
        return Residue(0, modulus)
    if 0 <= n < k:
        return Residue(0, modulus)
    num = 1
    for j in range(k):
        num = num * ((n - j) % modulus) % modulus
    return Residue(num * inverse_mod(math.factorial(k), modulus), modulus)


def primes_in(prime_range: PrimeRange) -> List[int]:
    """
    Ascending primes of ``[lo, hi]`` excluding 2 and 3.

    Uses an Eratosthenes bitmap held in a numpy boolean array.
    """
    lo, hi = max(prime_range.lo, 5), prime_range.hi
    if hi >= SIEVE_LIMIT:
        raise ValueError(f"sieve limit is {SIEVE_LIMIT}, got hi={hi}")
    if hi < lo:
        return []
    is_prime = np.ones(hi + 1, dtype=bool)
    is_prime[:2] = False
    for q in range(2, math.isqrt(hi) + 1):
        if is_prime[q]:
            is_prime[q * q : hi + 1 : q] = False
    return [int(q) for q in np.flatnonzero(is_prime[lo:]) + lo]


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for the sizes used here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def fermat_quotient(a: int, p: int, e: int = 1) -> Residue:
    """
    Fermat quotient ``q_a(p) = (a**(p-1) - 1) / p`` reduced mod ``p**e``.

    The power is taken mod ``p**(e+1)`` so the exact division by ``p`` leaves
    the quotient correct to ``e`` digits.

    Raises:
        DivByP: if ``p`` divides ``a``
    """
    if a % p == 0:
        raise DivByP(a, p)
    top = p ** (e + 1)
    return Residue((pow(a, p - 1, top) - 1) // p, p ** e)


def legendre_symbol(a: int, p: int) -> int:
    """Euler's criterion: 1, -1, or 0 when ``p`` divides ``a``."""
    ls = pow(a, (p - 1) // 2, p)
    return -1 if ls == p - 1 else ls


def sqrt_mod_prime(a: Residue) -> Residue:
    """
    Tonelli-Shanks square root modulo an odd prime.

    Returns the canonical root, the one lying in ``[0, (p-1)/2]``.

    Raises:
        NonResidue: if ``a`` has no square root
    """
    p = a.modulus
    n = a.value
    if n == 0:
        return Residue(0, p)
    if legendre_symbol(n, p) != 1:
        raise NonResidue(n, p)

    # p - 1 = q * 2**s with q odd
    q, s = p - 1, 0
    while q & 1 == 0:
        s += 1
        q >>= 1

    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1
    c = pow(z, q, p)

    x = pow(n, (q + 1) // 2, p)
    t = pow(n, q, p)
    m = s
    while t != 1:
        # lowest i with t**(2**i) == 1
        t2i = t
        i = 0
        for i in range(1, m):
            t2i = t2i * t2i % p
            if t2i == 1:
                break
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i

    return Residue(min(x, p - x), p)


def represent_a2_plus_4b2(p: int) -> Tuple[int, int]:
    """
    Write a prime ``p = 1 mod 4`` as ``a**2 + 4*b**2`` with ``a`` odd, ``a, b > 0``.

    Cornacchia's algorithm on ``x**2 + y**2 = p`` seeded by a square root of
    -1, then ``b`` is half the even coordinate.

    Raises:
        WrongResidueClass: if ``p % 4 != 1``
    """
    if p % 4 != 1 or not is_prime(p):
        raise WrongResidueClass(p)
    r = sqrt_mod_prime(Residue(-1, p)).value
    a, b = p, r
    while b * b > p:
        a, b = b, a % b
    x = b
    y = math.isqrt(p - x * x)
    if x * x + y * y != p:
        raise ArithmeticError(f"Cornacchia failed for {p}")
    odd, even = (x, y) if x % 2 else (y, x)
    logger.debug(f"{p} = {odd}^2 + 4*{even // 2}^2")
    return odd, even // 2


def euler_totient_prime_power(p: int, a: int) -> int:
    """``phi(p**a) = p**(a-1) * (p - 1)``."""
    if a < 1:
        raise ValueError(f"exponent must be positive, got {a}")
    return p ** (a - 1) * (p - 1)
