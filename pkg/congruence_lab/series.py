"""
Truncated formal power series over exact rationals.

Only ring operations, inversion, termwise derivation and ``exp(c*t)`` are
provided; every generating function the lab validates is reachable from them.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, Union

from .errors import IndexPastOrder, OrderMismatch, ZeroConstantTerm

Rational = Union[int, Fraction]

DEFAULT_ORDER = 16


@dataclass(frozen=True)
class PowerSeries:
    """
    ``coeffs[0] + coeffs[1] t + ... + coeffs[order] t**order + O(t**(order+1))``.
    """

    coeffs: tuple
    order: int

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"expected {self.order + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Rational], order: int) -> "PowerSeries":
        """Build a series from a prefix of coefficients, padding with zeros."""
        values = [Fraction(c) for c in list(coeffs)[: order + 1]]
        values.extend(Fraction(0) for _ in range(order + 1 - len(values)))
        return cls(tuple(values), order)

    @classmethod
    def constant(cls, c: Rational, order: int) -> "PowerSeries":
        return cls.from_coeffs([c], order)

    @classmethod
    def variable(cls, order: int) -> "PowerSeries":
        """The series ``t``."""
        return cls.from_coeffs([0, 1], order)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        return ps_add(self, other)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return ps_sub(self, other)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        return ps_mul(self, other)

    def __neg__(self) -> "PowerSeries":
        return self.scale(-1)

    def scale(self, c: Rational) -> "PowerSeries":
        return PowerSeries(tuple(c * a for a in self.coeffs), self.order)

    def __getitem__(self, n: int) -> Fraction:
        if n > self.order:
            raise IndexPastOrder(n, self.order)
        return self.coeffs[n]


def _check_orders(a: PowerSeries, b: PowerSeries) -> None:
    if a.order != b.order:
        raise OrderMismatch(a.order, b.order)


def ps_add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    _check_orders(a, b)
    return PowerSeries(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), a.order)


def ps_sub(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    _check_orders(a, b)
    return PowerSeries(tuple(x - y for x, y in zip(a.coeffs, b.coeffs)), a.order)


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Schoolbook Cauchy product truncated at the common order."""
    _check_orders(a, b)
    n = a.order
    out = [Fraction(0)] * (n + 1)
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j in range(n + 1 - i):
            out[i + j] += ai * b.coeffs[j]
    return PowerSeries(tuple(out), n)


def ps_invert(a: PowerSeries) -> PowerSeries:
    """
    Multiplicative inverse by the coefficient recurrence
    ``r_n = -(a_1 r_{n-1} + ... + a_n r_0) / a_0``.

    Raises:
        ZeroConstantTerm: if ``a_0 == 0``
    """
    a0 = a.coeffs[0]
    if a0 == 0:
        raise ZeroConstantTerm()
    r: List[Fraction] = [1 / Fraction(a0)]
    for n in range(1, a.order + 1):
        acc = sum((a.coeffs[k] * r[n - k] for k in range(1, n + 1)), Fraction(0))
        r.append(-acc / a0)
    return PowerSeries(tuple(r), a.order)


def ps_derive(a: PowerSeries) -> PowerSeries:
    """Termwise derivative; the result has order ``a.order - 1``."""
    if a.order == 0:
        return PowerSeries((Fraction(0),), 0)
    return PowerSeries(
        tuple(n * a.coeffs[n] for n in range(1, a.order + 1)), a.order - 1
    )


def truncate(a: PowerSeries, order: int) -> PowerSeries:
    """Drop coefficients above ``order`` (which must not exceed ``a.order``)."""
    if order > a.order:
        raise IndexPastOrder(order, a.order)
    return PowerSeries(a.coeffs[: order + 1], order)


def exp_series(c: Rational, order: int) -> PowerSeries:
    """``exp(c*t)``: coefficients ``c**n / n!``."""
    c = Fraction(c)
    return PowerSeries(
        tuple(c ** n / math.factorial(n) for n in range(order + 1)), order
    )


def nth_coeff_times_factorial(a: PowerSeries, n: int) -> Fraction:
    """
    ``n! * [t**n] a``, the exponential-generating-function coefficient.

    Raises:
        IndexPastOrder: if ``n > a.order``
    """
    return a[n] * math.factorial(n)


def egf_values(a: PowerSeries, upto: int) -> List[Fraction]:
    """``[n! * [t**n] a for n in 0..upto]``."""
    return [nth_coeff_times_factorial(a, n) for n in range(upto + 1)]


def _rotate(a: PowerSeries, keep: Callable[[int], bool]) -> PowerSeries:
    # hyperbolic -> trigonometric: coefficient n picks up (-1)**(n // 2)
    return PowerSeries(
        tuple(
            (c if n % 4 < 2 else -c) if keep(n) else Fraction(0)
            for n, c in enumerate(a.coeffs)
        ),
        a.order,
    )


def cosh_series(order: int) -> PowerSeries:
    return (exp_series(1, order) + exp_series(-1, order)).scale(Fraction(1, 2))


def sinh_series(order: int) -> PowerSeries:
    return (exp_series(1, order) - exp_series(-1, order)).scale(Fraction(1, 2))


def cos_series(order: int) -> PowerSeries:
    return _rotate(cosh_series(order), lambda n: n % 2 == 0)


def sin_series(order: int) -> PowerSeries:
    return _rotate(sinh_series(order), lambda n: n % 2 == 1)


def sech_series(order: int) -> PowerSeries:
    """Generating function of the Euler numbers ``E_n``."""
    return ps_invert(cosh_series(order))


def sec_series(order: int) -> PowerSeries:
    return ps_invert(cos_series(order))


def tan_series(order: int) -> PowerSeries:
    return sin_series(order) * ps_invert(cos_series(order))


def genocchi_gf(order: int) -> PowerSeries:
    """``2t / (e**t + 1)``."""
    denom = exp_series(1, order) + PowerSeries.constant(1, order)
    return PowerSeries.variable(order).scale(2) * ps_invert(denom)


def euler_polynomial_gf(x: Rational, order: int) -> PowerSeries:
    """``2 e**(x t) / (e**t + 1)``, whose coefficients are the ``E_n(x)``."""
    denom = exp_series(1, order) + PowerSeries.constant(1, order)
    return exp_series(x, order).scale(2) * ps_invert(denom)


def eulerian_gf(x: Rational, order: int) -> PowerSeries:
    """``(1 - x) / (e**t - x)`` at a fixed rational ``x != 1``."""
    x = Fraction(x)
    denom = exp_series(1, order) - PowerSeries.constant(x, order)
    return ps_invert(denom).scale(1 - x)


def ode_residual(order: int = DEFAULT_ORDER) -> PowerSeries:
    """
    ``2y' - y**2 - 1`` for ``y = sec t + tan t``, truncated at ``order - 1``.

    Every coefficient is zero when the zigzag generating function is correct.
    """
    y = sec_series(order) + tan_series(order)
    lhs = ps_derive(y).scale(2)
    yy = truncate(y * y, order - 1)
    one = PowerSeries.constant(1, order - 1)
    return lhs - yy - one
