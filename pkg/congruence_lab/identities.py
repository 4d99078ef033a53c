"""
Registry of exact identities among the sequence families.

Each entry evaluates both sides of one identity at given parameters over
``int``/``Fraction``; ``sweep`` runs an entry over its whole parameter grid.
Entries marked ``flagged`` are known to fail as printed and are reported as
discrepancies rather than failures.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from .arith import binomial_exact, binomial_poly
from .errors import UnknownIdentity
from .sequences import SequenceEngine, generalized_eulerian_row, eulerian_closed
from .series import (
    DEFAULT_ORDER,
    egf_values,
    euler_polynomial_gf,
    eulerian_gf,
    genocchi_gf,
    nth_coeff_times_factorial,
    ode_residual,
    sec_series,
    sech_series,
    tan_series,
)

logger = logging.getLogger(__name__)

Params = Dict[str, Any]
Sides = Tuple[Any, Any]

EULERIAN_GF_POINTS = (Fraction(2), Fraction(3), Fraction(1, 2), Fraction(-1))


@dataclass(frozen=True)
class IdentityResult:
    """Outcome of one identity at one parameter set."""

    identity: str
    params: Params
    lhs: Any
    rhs: Any

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class IdentitySweep:
    """Outcome of an identity over its whole grid; keeps the first failure."""

    identity: str
    flagged: bool
    instances: int = 0
    failures: int = 0
    first_failure: Optional[IdentityResult] = None
    last: Optional[IdentityResult] = None

    @property
    def holds(self) -> bool:
        return self.failures == 0

    @property
    def status(self) -> str:
        if self.instances == 0:
            return "SKIP"
        if self.holds:
            return "PASS"
        return "DISCREPANCY" if self.flagged else "FAIL"


@dataclass(frozen=True)
class IdentityDefinition:
    id: str
    title: str
    anchor: str
    evaluate: Callable[[SequenceEngine, Params], Sides]
    grid: Callable[[int, int], Iterable[Params]]
    cap: int
    flagged: bool = False


def harmonic_exact(n: int) -> List[Fraction]:
    """``[H_0, ..., H_n]`` as exact rationals."""
    hs = [Fraction(0)]
    for k in range(1, n + 1):
        hs.append(hs[-1] + Fraction(1, k))
    return hs


def _cosine_quarter(d: int) -> int:
    """``cos(d * pi / 2)`` for an integer ``d``."""
    if d % 2:
        return 0
    return 1 if d % 4 == 0 else -1


def bareiss_determinant(matrix: List[List[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    m = [list(row) for row in matrix]
    size = len(m)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[size - 1][size - 1]


# evaluators


def _worpitsky(engine: SequenceEngine, params: Params) -> Sides:
    n, x = params["n"], params["x"]
    row = engine.eulerian_row(n)
    return x ** n, sum(e * binomial_poly(x + m, n) for m, e in enumerate(row))


def _shanks(engine: SequenceEngine, params: Params) -> Sides:
    n, i, x = params["n"], params["i"], params["x"]
    row = generalized_eulerian_row(n, i)
    lhs = binomial_poly(x, i) ** n
    return lhs, sum(e * binomial_poly(x + m, i * n) for m, e in enumerate(row))


def _alternating_row_sum(engine: SequenceEngine, n: int) -> int:
    return sum(v if m % 2 == 0 else -v for m, v in enumerate(engine.eulerian_row(n)))


def _bernoulli_alternating(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    b = engine.bernoulli(n + 1)
    lhs = 2 ** (n + 1) * (2 ** (n + 1) - 1) * b / (n + 1)
    return lhs, _alternating_row_sum(engine, n)


def _comtet(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    return [eulerian_closed(n, m) for m in range(n)], engine.eulerian_row(n)


def _symbolic_euler(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    lhs = sum(binomial_exact(2 * n, 2 * s) * engine.euler_number(2 * s) for s in range(n + 1))
    return lhs, 0


def _chen_recurrence(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    acc = sum(
        Fraction(binomial_exact(n, k) * engine.euler_number(k), 2 ** k) for k in range(n)
    )
    return engine.euler_number(n) + 2 ** (n - 1) * acc, 1


def _euler_polynomial(engine: SequenceEngine, params: Params) -> Sides:
    n, order = params["n"], params["order"]
    value = nth_coeff_times_factorial(euler_polynomial_gf(Fraction(1, 2), order), n)
    return engine.euler_number(n), 2 ** n * value


def _secant_sign(engine: SequenceEngine, params: Params) -> Sides:
    k, order = params["k"], params["order"]
    secant = nth_coeff_times_factorial(sec_series(order), 2 * k)
    return secant, (-1) ** k * engine.euler_number(2 * k)


def _zigzag_convolution(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    z = engine.zigzag(n + 1)
    return 2 * z[n + 1], sum(binomial_exact(n, k) * z[k] * z[n - k] for k in range(n + 1))


def _ode(engine: SequenceEngine, params: Params) -> Sides:
    residual = ode_residual(params["order"])
    return list(residual.coeffs), [Fraction(0)] * len(residual.coeffs)


def _ehat_genocchi(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    rhs = Fraction(-engine.genocchi_number(n + 1) * 2 ** n, n + 1)
    return engine.generalized_euler(n), rhs


def _genocchi_from_bernoulli(engine: SequenceEngine, n: int) -> Fraction:
    return 2 * (1 - 2 ** n) * engine.bernoulli(n)


def _tangent_genocchi(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    g = _genocchi_from_bernoulli(engine, 2 * n + 2)
    return engine.tangent_number(2 * n + 1), abs(g) * 4 ** n / (n + 1)


def _genocchi_bernoulli(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    return engine.genocchi_number(n), _genocchi_from_bernoulli(engine, n)


def _chen_closed(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    acc = sum(
        binomial_exact(n + 1, k) * 2 ** (k - 1) * engine.genocchi_number(k)
        for k in range(2, n + 2)
    )
    return engine.euler_number(n), 1 + Fraction(acc, n + 1)


def _convolved_powers(engine: SequenceEngine, params: Params) -> Sides:
    i, j, n = params["i"], params["j"], params["n"]
    lhs = sum(k ** i * (n - k) ** j for k in range(n + 1))
    ri, rj = engine.eulerian_row(i), engine.eulerian_row(j)

    def at(row: List[int], s: int) -> int:
        return row[s] if 0 <= s < len(row) else 0

    rhs = 0
    for r in range(i + j + 1):
        inner = sum(at(ri, s) * at(rj, r - s) for s in range(r + 1))
        rhs += binomial_exact(i + j + 1 + n - r, i + j + 1) * inner
    return lhs, rhs


def _spivey(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    hs = harmonic_exact(n)
    lhs = sum(binomial_exact(n, k) * hs[k] for k in range(n + 1))
    tail = sum((Fraction(1, k * 2 ** k) for k in range(1, n + 1)), Fraction(0))
    return lhs, 2 ** n * (hs[n] - tail)


def _binomial_transform(seq: List[Fraction], n: int) -> Fraction:
    return sum((binomial_exact(n, k) * seq[k] for k in range(n + 1)), Fraction(0))


def _spivey_transforms(engine: SequenceEngine, params: Params) -> Sides:
    n, kind = params["n"], params["b"]
    hs = harmonic_exact(n + 2)
    if kind == "H_k":
        b = hs
    else:
        b = [k * hs[k] for k in range(n + 3)]
    a = [b[k + 1] - b[k] for k in range(n + 2)]
    h = [_binomial_transform(b, m) for m in range(n + 2)]
    g = [_binomial_transform(a, m) for m in range(n + 1)]
    rebuilt = 2 ** n * (b[0] + sum((g[k - 1] / 2 ** k for k in range(1, n + 1)), Fraction(0)))
    return (g[n], h[n]), (h[n + 1] - 2 * h[n], rebuilt)


def _paule_schneider(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    hs = harmonic_exact(n)
    lhs = sum((n - 2 * j) * hs[j] * binomial_exact(n, j) for j in range(n + 1))
    return lhs, 1 - 2 ** n


def _weighted_alternating(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    row = engine.eulerian_row(n)
    lhs = sum((-1) ** m * (2 * m + 3) * v for m, v in enumerate(row))
    return lhs, (n + 2) * _alternating_row_sum(engine, n)


def _gf_tables(engine: SequenceEngine, params: Params) -> Sides:
    table, order = params["table"], params["order"]
    upto = min(order, 12)
    if table == "sech":
        return egf_values(sech_series(order), upto), [
            engine.euler_number(n) for n in range(upto + 1)
        ]
    if table == "tan":
        odd = range(1, min(order, 13) + 1, 2)
        values = egf_values(tan_series(order), min(order, 13))
        return [values[n] for n in odd], [engine.tangent_number(n) for n in odd]
    if table == "genocchi":
        values = egf_values(genocchi_gf(order), upto)
        return values[1:], [engine.genocchi_number(n) for n in range(1, upto + 1)]
    # eulerian GF at a rational point: (x-1)^n H_n(x) = sum_m E(n,m) x^m
    x = Fraction(params["x"])
    upto = min(order, 10)
    values = egf_values(eulerian_gf(x, order), upto)
    lhs = [(x - 1) ** n * values[n] for n in range(1, upto + 1)]
    rhs = [
        sum(e * x ** m for m, e in enumerate(engine.eulerian_row(n)))
        for n in range(1, upto + 1)
    ]
    return lhs, rhs


def euler_determinant_matrix(n: int) -> List[List[int]]:
    """The ``2n x 2n`` matrix ``C(i, j-1) cos((i-j+1) pi/2)``, 1-based."""
    size = 2 * n
    return [
        [
            binomial_exact(i, j - 1) * _cosine_quarter(i - j + 1)
            for j in range(1, size + 1)
        ]
        for i in range(1, size + 1)
    ]


def _determinant(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    det = bareiss_determinant(euler_determinant_matrix(n))
    return engine.euler_number(2 * n), (-1) ** n * det


def _double_sum(engine: SequenceEngine, params: Params) -> Sides:
    n = params["n"]
    total = Fraction(0)
    for l in range(1, 2 * n + 1):
        inner = sum(binomial_exact(l, q) * (2 * q - l) ** (2 * n) for q in range(l + 1))
        total += Fraction((-1) ** n * binomial_exact(2 * n, l) * inner, 2 ** l * (l + 1))
    return engine.euler_number(2 * n), (2 * n + 1) * total


def _even_row_vanishes(engine: SequenceEngine, params: Params) -> Sides:
    return _alternating_row_sum(engine, params["n"]), 0


# parameter grids: (max_n, series_order) -> params


def _upto(cap: int, max_n: int, start: int = 1, step: int = 1) -> range:
    return range(start, min(cap, max_n) + 1, step)


def _shanks_grid(max_n: int, order: int) -> Iterable[Params]:
    for n in _upto(4, max_n):
        for i in range(1, 4):
            if n * i > 10:
                continue
            for x in range(-2, 9):
                yield {"n": n, "i": i, "x": x}


def _gf_grid(max_n: int, order: int) -> Iterable[Params]:
    order = min(order, max(max_n, 1))
    for table in ("sech", "tan", "genocchi"):
        yield {"table": table, "order": order}
    for x in EULERIAN_GF_POINTS:
        yield {"table": "eulerian", "x": str(x), "order": order}


def _convolution_grid(max_n: int, order: int) -> Iterable[Params]:
    for i in range(1, 5):
        for j in range(1, 5):
            for n in range(0, min(8, max_n) + 1):
                yield {"i": i, "j": j, "n": n}


def _spivey_transform_grid(max_n: int, order: int) -> Iterable[Params]:
    for kind in ("H_k", "kH_k"):
        for n in range(0, min(15, max_n) + 1):
            yield {"b": kind, "n": n}


REGISTRY: Tuple[IdentityDefinition, ...] = (
    IdentityDefinition(
        "I01", "Worpitsky identity", "x^n = sum_m E(n,m) C(x+m, n)",
        _worpitsky,
        lambda mx, o: ({"n": n, "x": x} for n in _upto(10, mx) for x in range(-3, 7)),
        10,
    ),
    IdentityDefinition(
        "I02", "Shanks identity", "C(x,i)^n = sum_m E^(i)(n,m) C(x+m, in)",
        _shanks, _shanks_grid, 4,
    ),
    IdentityDefinition(
        "I03", "alternating Eulerian sum and Bernoulli numbers",
        "2^(n+1)(2^(n+1)-1) B_(n+1)/(n+1) = sum_m (-1)^m E(n,m)",
        _bernoulli_alternating, lambda mx, o: ({"n": n} for n in _upto(25, mx)), 25,
    ),
    IdentityDefinition(
        "I04", "Comtet closed formula", "closed formula equals the recurrence",
        _comtet, lambda mx, o: ({"n": n} for n in _upto(30, mx)), 30,
    ),
    IdentityDefinition(
        "I05", "symbolic Euler recurrence", "sum_s C(2n,2s) E_2s = 0",
        _symbolic_euler, lambda mx, o: ({"n": n} for n in _upto(15, mx)), 15,
    ),
    IdentityDefinition(
        "I06", "Chen recurrence", "E_n + 2^(n-1) sum_k C(n,k) E_k / 2^k = 1",
        _chen_recurrence, lambda mx, o: ({"n": n} for n in _upto(20, mx)), 20,
    ),
    IdentityDefinition(
        "I07", "Euler polynomial special value", "E_n = 2^n E_n(1/2)",
        _euler_polynomial,
        lambda mx, o: ({"n": n, "order": o} for n in range(0, min(12, mx, o) + 1)),
        12,
    ),
    IdentityDefinition(
        "I08", "secant numbers", "S_2k = (-1)^k E_2k",
        _secant_sign,
        lambda mx, o: ({"k": k, "order": o} for k in range(0, min(6, mx, o // 2) + 1)),
        6,
    ),
    IdentityDefinition(
        "I09", "zigzag binomial convolution",
        "2 z(n+1) = sum_k C(n,k) z(k) z(n-k)",
        _zigzag_convolution, lambda mx, o: ({"n": n} for n in _upto(20, mx)), 20,
    ),
    IdentityDefinition(
        "I10", "differential equation of sec + tan", "2y' = y^2 + 1",
        _ode, lambda mx, o: iter([{"order": o}]), 0,
    ),
    IdentityDefinition(
        "I11", "generalized Euler numbers and Genocchi numbers",
        "Ê_n = -G_(n+1) 2^n / (n+1), n odd",
        _ehat_genocchi, lambda mx, o: ({"n": n} for n in _upto(13, mx, step=2)), 13,
    ),
    IdentityDefinition(
        "I12", "tangent numbers and Genocchi numbers",
        "T_(2n+1) = |G_(2n+2)| 4^n / (n+1)",
        _tangent_genocchi, lambda mx, o: ({"n": n} for n in range(0, min(6, mx) + 1)), 6,
    ),
    IdentityDefinition(
        "I13", "Genocchi and Bernoulli numbers", "G_n = 2(1-2^n) B_n",
        _genocchi_bernoulli, lambda mx, o: ({"n": n} for n in _upto(25, mx)), 25,
    ),
    IdentityDefinition(
        "I14", "Chen closed formula",
        "E_n = 1 + 1/(n+1) sum_k C(n+1,k) 2^(k-1) G_k",
        _chen_closed, lambda mx, o: ({"n": n} for n in range(0, min(20, mx) + 1)), 20,
    ),
    IdentityDefinition(
        "I15", "convolved powers",
        "sum_k k^i (n-k)^j = sum_r C(i+j+1+n-r, i+j+1) sum_s E(i,s) E(j,r-s)",
        _convolved_powers, _convolution_grid, 8, flagged=True,
    ),
    IdentityDefinition(
        "I16", "Spivey harmonic binomial sum",
        "sum_k C(n,k) H_k = 2^n (H_n - sum_k 1/(k 2^k))",
        _spivey, lambda mx, o: ({"n": n} for n in range(0, min(20, mx) + 1)), 20,
    ),
    IdentityDefinition(
        "I17", "Spivey binomial transforms",
        "g_n = h_(n+1) - 2h_n and h_n = 2^n (b_0 + sum_k g_(k-1)/2^k)",
        _spivey_transforms, _spivey_transform_grid, 15,
    ),
    IdentityDefinition(
        "I18", "Paule-Schneider identity", "sum_j (n-2j) H_j C(n,j) = 1 - 2^n",
        _paule_schneider, lambda mx, o: ({"n": n} for n in range(0, min(20, mx) + 1)), 20,
    ),
    IdentityDefinition(
        "I19", "weighted alternating Eulerian sum",
        "sum_m (-1)^m (2m+3) E(n,m) = (n+2) sum_m (-1)^m E(n,m), n odd",
        _weighted_alternating, lambda mx, o: ({"n": n} for n in _upto(15, mx, step=2)), 15,
    ),
    IdentityDefinition(
        "I20", "generating function tables", "n! [t^n] of each generating function",
        _gf_tables, _gf_grid, 12,
    ),
    IdentityDefinition(
        "I21a", "Euler numbers as a determinant",
        "E_2n = (-1)^n det[C(i,j-1) cos((i-j+1) pi/2)]",
        _determinant, lambda mx, o: ({"n": n} for n in _upto(5, mx)), 5,
    ),
    IdentityDefinition(
        "I21b", "Euler numbers as a double sum",
        "E_2n = (2n+1) sum_l (-1)^n C(2n,l)/(2^l (l+1)) sum_q C(l,q) (2q-l)^2n",
        _double_sum, lambda mx, o: ({"n": n} for n in _upto(5, mx)), 5, flagged=True,
    ),
    IdentityDefinition(
        "I22", "alternating Eulerian sum vanishes for even n",
        "sum_m (-1)^m E(n,m) = 0, n even",
        _even_row_vanishes, lambda mx, o: ({"n": n} for n in _upto(20, mx, start=2, step=2)), 20,
    ),
)


class IdentityRegistry:
    """
    Lookup and evaluation of the registered identities.

    Args:
        engine (SequenceEngine): shared sequence engine; a fresh one if omitted
    """

    def __init__(self, engine: Optional[SequenceEngine] = None):
        self.engine = engine or SequenceEngine()
        self.logger = logging.getLogger(__name__)
        self._by_id = {d.id: d for d in REGISTRY}

    def ids(self) -> List[str]:
        return [d.id for d in REGISTRY]

    def get(self, identity_id: str) -> IdentityDefinition:
        try:
            return self._by_id[identity_id]
        except KeyError:
            raise UnknownIdentity(identity_id) from None

    def verify(self, identity_id: str, params: Params) -> IdentityResult:
        definition = self.get(identity_id)
        lhs, rhs = definition.evaluate(self.engine, params)
        return IdentityResult(identity_id, dict(params), lhs, rhs)

    def sweep(
        self,
        identity_id: str,
        max_n: Optional[int] = None,
        series_order: int = DEFAULT_ORDER,
    ) -> IdentitySweep:
        """
        Evaluate an identity over its parameter grid.

        Args:
            identity_id (str): registry id such as ``"I01"``
            max_n (Optional[int]): extra cap on the main index
            series_order (int): truncation order for series-based entries

        Returns:
            IdentitySweep: counts and the first failing instance
        """
        definition = self.get(identity_id)
        limit = max_n if max_n is not None else 10 ** 6
        outcome = IdentitySweep(identity_id, definition.flagged)
        for params in definition.grid(limit, series_order):
            result = self.verify(identity_id, params)
            outcome.instances += 1
            outcome.last = result
            if not result.holds:
                outcome.failures += 1
                if outcome.first_failure is None:
                    outcome.first_failure = result
                    self.logger.debug(
                        f"{identity_id} fails at {params}: {result.lhs} != {result.rhs}"
                    )
        return outcome


def verify_identity(
    identity_id: str, params: Params, engine: Optional[SequenceEngine] = None
) -> IdentityResult:
    """Evaluate one registered identity at one parameter set."""
    return IdentityRegistry(engine).verify(identity_id, params)
