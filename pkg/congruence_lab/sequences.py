"""
Sequence engines: Eulerian and generalized Eulerian rows, the boustrophedon
(zigzag) family with the Euler, tangent, generalized Euler and Genocchi
numbers derived from it, Bernoulli numbers, harmonic residues and power sums.

Exact values are ``int`` or ``Fraction``. Modular mirrors work in Z/p^e and
agree with the exact values after reduction.
"""

import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Dict, List, Optional, Tuple

from .arith import Residue, binomial_exact, binomial_mod, inverse_mod
from .cache import ResidueCache
from .errors import (
    EvenIndex,
    InexactDivision,
    KTooLarge,
    NonIntegerSolution,
    TooLarge,
)

logger = logging.getLogger(__name__)

# (in)! / (i!)^n above this is refused by generalized_eulerian_row
GENERALIZED_EULERIAN_CAP = 10 ** 7

# exact Eulerian rows up to this index stay memoized
_ROW_MEMO_LIMIT = 64


@dataclass(frozen=True)
class HarmonicTable:
    """
    Harmonic residues mod ``p**e``: ``H[k]`` for ``k = 0..p-1`` with
    ``H[0] = 0``, and ``Hprime`` the sum of reciprocals of the odd integers
    below ``p``.
    """

    p: int
    e: int
    H: Tuple[Residue, ...]
    Hprime: Residue

    @property
    def modulus(self) -> int:
        return self.p ** self.e


def multinomial_size(n: int, i: int) -> int:
    """``(in)! / (i!)**n``, the number of words on ``{1^i, ..., n^i}``."""
    return math.factorial(i * n) // math.factorial(i) ** n


def next_eulerian_row(row: List[int], n: int, modulus: Optional[int] = None) -> List[int]:
    """
    Row ``n`` from row ``n-1`` by ``E(n,m) = (n-m)E(n-1,m-1) + (m+1)E(n-1,m)``.
    """
    prev = [0] + row + [0]
    new = [(n - m) * prev[m] + (m + 1) * prev[m + 1] for m in range(n)]
    if modulus is not None:
        new = [v % modulus for v in new]
    return new


def eulerian_closed(n: int, m: int) -> int:
    """Comtet's closed form ``sum_{k=0}^{m+1} (-1)^k C(n+1,k) (m+1-k)^n``."""
    return sum(
        (-1) ** k * binomial_exact(n + 1, k) * (m + 1 - k) ** n for k in range(m + 2)
    )


def eulerian_mod(n: int, m: int, p: int, e: int = 1) -> Residue:
    """
    ``E(n, m) mod p**e`` for a possibly huge ``n`` and a small ``m``.

    Raises:
        KTooLarge: if ``m + 1 >= p``
    """
    if m + 1 >= p:
        raise KTooLarge(m + 1, p)
    modulus = p ** e
    total = Residue(0, modulus)
    for k in range(m + 2):
        term = binomial_mod(n + 1, k, p, e) * pow(m + 1 - k, n, modulus)
        total = total - term if k % 2 else total + term
    return total


def generalized_eulerian_row(n: int, i: int) -> List[int]:
    """
    Row ``[E^(i)(n,0), ..., E^(i)(n, i(n-1))]`` solved from the Shanks identity
    ``C(x,i)^n = sum_m E^(i)(n,m) C(x+m, in)``.

    Evaluating at ``x = in - k`` only keeps the terms with ``m >= k``, so going
    from ``k = i(n-1)`` down to 0 is a back-substitution with unit diagonal.

    Raises:
        TooLarge: if the multiset size exceeds ``GENERALIZED_EULERIAN_CAP``
        NonIntegerSolution: if an entry solves to a non-integer
    """
    if n < 1 or i < 1:
        raise ValueError(f"need n >= 1 and i >= 1, got n={n}, i={i}")
    size = multinomial_size(n, i)
    if size > GENERALIZED_EULERIAN_CAP:
        raise TooLarge("generalized_eulerian_row", size, GENERALIZED_EULERIAN_CAP)

    top = i * (n - 1)
    width = i * n
    row = [0] * (top + 1)
    for k in range(top, -1, -1):
        x = width - k
        rhs = binomial_exact(x, i) ** n
        rhs -= sum(row[m] * binomial_exact(x + m, width) for m in range(k + 1, top + 1))
        value = Fraction(rhs, binomial_exact(x + k, width))
        if value.denominator != 1:
            raise NonIntegerSolution(n, i, k, value)
        row[k] = value.numerator
    return row


def power_sum(k: int, p: int, e: int = 1) -> Residue:
    """``S_k = 1^k + 2^k + ... + ((p-1)/2)^k mod p**e``."""
    modulus = p ** e
    return Residue(sum(pow(r, k, modulus) for r in range(1, (p - 1) // 2 + 1)), modulus)


def odd_power_sums(p: int, e: int, lo: int, hi: int) -> Residue:
    """
    ``S_lo + S_{lo+2} + ... + S_hi mod p**e`` for odd ``lo <= hi``.

    Each inner sum over ``k`` is geometric in ``r``; ``r**2 - 1`` is a unit for
    ``2 <= r <= (p-1)/2``.
    """
    if lo % 2 == 0 or hi % 2 == 0:
        raise ValueError(f"bounds must be odd, got {lo}, {hi}")
    modulus = p ** e
    if hi < lo:
        return Residue(0, modulus)
    terms = (hi - lo) // 2 + 1
    total = terms  # r = 1
    for r in range(2, (p - 1) // 2 + 1):
        num = pow(r, lo, modulus) * (pow(r, 2 * terms, modulus) - 1)
        total += num * inverse_mod(r * r - 1, modulus)
    return Residue(total, modulus)


class SequenceEngine:
    """
    Memoizing builder for every sequence family, exact and modular.

    Tables are filled on demand under a lock so concurrent readers only ever
    see absent or complete entries. Modular tables may be persisted through a
    ``ResidueCache``.
    """

    def __init__(self, cache: Optional[ResidueCache] = None):
        self.cache = cache
        self.logger = logging.getLogger(__name__)
        self._lock = threading.RLock()

        self._eulerian_rows: Dict[int, List[int]] = {1: [1]}
        self._eulerian_mod_rows: Dict[Tuple[int, int, int], List[int]] = {}
        # modulus (None for exact) -> (values, last boustrophedon row)
        self._zigzag: Dict[Optional[int], Tuple[List[int], List[int]]] = {}
        self._zigzag_loaded: Dict[int, List[int]] = {}
        self._bernoulli: List[Fraction] = [Fraction(1)]
        self._harmonic: Dict[Tuple[int, int], HarmonicTable] = {}

    # Eulerian numbers

    def eulerian_row(self, n: int) -> List[int]:
        """
        Row ``n`` of the Eulerian triangle, ``[E(n,0), ..., E(n,n-1)]``.

        Args:
            n (int): row index, ``1 <= n``

        Returns:
            List[int]: exact row (a fresh list)
        """
        if n < 1:
            raise ValueError(f"Eulerian rows start at n=1, got {n}")
        with self._lock:
            if n in self._eulerian_rows:
                return list(self._eulerian_rows[n])
            start = max(k for k in self._eulerian_rows if k <= n)
            row = self._eulerian_rows[start]
            for k in range(start + 1, n + 1):
                row = next_eulerian_row(row, k)
                if k <= _ROW_MEMO_LIMIT:
                    self._eulerian_rows[k] = row
            self._eulerian_rows[n] = row
            self.logger.debug(f"built Eulerian rows {start + 1}..{n}")
            return list(row)

    def eulerian_row_mod(self, n: int, p: int, e: int = 1) -> List[int]:
        """Row ``n`` reduced mod ``p**e`` (rows ``p-2`` are cached on disk)."""
        key = (n, p, e)
        with self._lock:
            if key in self._eulerian_mod_rows:
                return self._eulerian_mod_rows[key]
            use_disk = self.cache is not None and n == p - 2
            row = self.cache.load("eulerian", p, e, n) if use_disk else None
            if row is None or len(row) != n:
                modulus = p ** e
                row = [1]
                for k in range(2, n + 1):
                    row = next_eulerian_row(row, k, modulus)
                if use_disk:
                    self.cache.store("eulerian", p, e, row)
            self._eulerian_mod_rows[key] = row
            return row

    def even_ascent_count(self, n: int) -> int:
        """``N_n``: permutations of ``n`` letters with an even number of ascents."""
        return sum(self.eulerian_row(n)[0::2])

    def even_ascent_count_mod(self, n: int, p: int, e: int = 1) -> Residue:
        return Residue(sum(self.eulerian_row_mod(n, p, e)[0::2]), p ** e)

    # Boustrophedon family

    def _zigzag_table(self, upto: int, modulus: Optional[int]) -> List[int]:
        with self._lock:
            values, row = self._zigzag.get(modulus, ([1], [1]))
            if len(values) > upto:
                return values
            start = len(values)
            if modulus is None:
                while len(values) <= upto:
                    row = [0, *accumulate(reversed(row))]
                    values.append(row[-1])
            else:
                add = lambda a, b: (a + b) % modulus  # noqa: E731
                while len(values) <= upto:
                    row = [0, *accumulate(reversed(row), add)]
                    values.append(row[-1])
            self._zigzag[modulus] = (values, row)
            self.logger.debug(
                f"boustrophedon {start}..{upto} mod {modulus or 'exact'}"
            )
            return values

    def zigzag(self, N: int) -> List[int]:
        """Zigzag numbers ``1, 1, 1, 2, 5, 16, 61, 272, ...`` for ``n = 0..N``."""
        return list(self._zigzag_table(N, None)[: N + 1])

    def _zigzag_mod_values(self, N: int, p: int, e: int) -> List[int]:
        modulus = p ** e
        with self._lock:
            loaded = self._zigzag_loaded.get(modulus)
            if loaded is not None and len(loaded) > N:
                return loaded
            if self.cache is not None and len(self._zigzag.get(modulus, ([],))[0]) <= N:
                values = self.cache.load("zigzag", p, e, N + 1)
                if values is not None:
                    self._zigzag_loaded[modulus] = values
                    return values
            values = self._zigzag_table(N, modulus)
            if self.cache is not None and len(values) == N + 1:
                self.cache.store("zigzag", p, e, values)
            return values

    def zigzag_mod(self, N: int, p: int, e: int = 1) -> List[int]:
        """Zigzag numbers mod ``p**e`` for ``n = 0..N``."""
        return list(self._zigzag_mod_values(N, p, e)[: N + 1])

    def euler_number(self, n: int) -> int:
        """``E_n``: zero at odd ``n``, ``(-1)^(n/2)`` times the secant number."""
        if n % 2:
            return 0
        z = self._zigzag_table(n, None)[n]
        return -z if n % 4 == 2 else z

    def euler_mod(self, n: int, p: int, e: int = 1) -> Residue:
        modulus = p ** e
        if n % 2:
            return Residue(0, modulus)
        z = self._zigzag_mod_values(n, p, e)[n]
        return Residue(-z if n % 4 == 2 else z, modulus)

    def generalized_euler(self, n: int) -> int:
        """
        ``Ê_n``: ``E_n`` for even ``n`` and ``sum_m (-1)^m E(n,m)`` for odd ``n``.
        """
        if n % 2 == 0:
            return self.euler_number(n)
        return sum(v if m % 2 == 0 else -v for m, v in enumerate(self.eulerian_row(n)))

    def ehat_mod(self, n: int, p: int, e: int = 1) -> Residue:
        """``Ê_n mod p**e`` through ``Ê_n = (-1)^(n // 2) zigzag(n)``."""
        z = self._zigzag_mod_values(n, p, e)[n]
        return Residue(-z if (n // 2) % 2 else z, p ** e)

    def tangent_number(self, n: int) -> int:
        """
        ``T_n`` for odd ``n``.

        Raises:
            EvenIndex: for even ``n``
        """
        if n % 2 == 0:
            raise EvenIndex(n)
        return self._zigzag_table(n, None)[n]

    def tangent_mod(self, n: int, p: int, e: int = 1) -> Residue:
        if n % 2 == 0:
            raise EvenIndex(n)
        return Residue(self._zigzag_mod_values(n, p, e)[n], p ** e)

    def genocchi_number(self, n: int) -> int:
        """
        ``G_n`` from ``G_{2k} = (-1)^k k T_{2k-1} / 4^(k-1)``, ``G_1 = 1``.

        Raises:
            InexactDivision: if the tangent number is not divisible as required
        """
        if n < 1:
            raise ValueError(f"Genocchi numbers start at n=1, got {n}")
        if n == 1:
            return 1
        if n % 2:
            return 0
        k = n // 2
        num = k * self.tangent_number(n - 1)
        den = 4 ** (k - 1)
        q, r = divmod(num, den)
        if r:
            raise InexactDivision(num, den)
        return -q if k % 2 else q

    def genocchi_mod(self, n: int, p: int, e: int = 1) -> Residue:
        """``G_n mod p**e``; ``4`` is a unit because ``p`` is odd."""
        modulus = p ** e
        if n == 1:
            return Residue(1, modulus)
        if n < 1 or n % 2:
            return Residue(0, modulus)
        k = n // 2
        t = self.tangent_mod(n - 1, p, e)
        g = t * k * pow(inverse_mod(4, modulus), k - 1, modulus)
        return -g if k % 2 else g

    def divided_genocchi(self, k: int, p: int, e: int = 1) -> Residue:
        """
        ``G_k / k mod p**e``.

        Raises:
            NotInvertible: when ``p`` divides ``k``
        """
        return self.genocchi_mod(k, p, e) / k

    # Bernoulli numbers

    def bernoulli_exact(self, N: int) -> List[Fraction]:
        """
        ``B_0..B_N`` by ``sum_{k=0}^{n} C(n+1,k) B_k = 0`` (so ``B_1 = -1/2``).
        """
        with self._lock:
            bs = self._bernoulli
            for n in range(len(bs), N + 1):
                if n > 1 and n % 2:
                    bs.append(Fraction(0))
                    continue
                acc = sum(binomial_exact(n + 1, k) * bs[k] for k in range(n))
                bs.append(-acc / (n + 1))
            return bs[: N + 1]

    def bernoulli(self, n: int) -> Fraction:
        return self.bernoulli_exact(n)[n]

    def bernoulli_mod(self, n: int, p: int, e: int = 1) -> Residue:
        """
        ``B_n mod p**e`` through ``B_n = G_n / (2(1 - 2^n))``.

        Raises:
            NotInvertible: when ``1 - 2^n`` is divisible by ``p``
        """
        modulus = p ** e
        if n == 0:
            return Residue(1, modulus)
        denom = 2 * (1 - pow(2, n, modulus))
        return self.genocchi_mod(n, p, e) / Residue(denom, modulus)

    def divided_bernoulli(self, k: int, p: int, e: int = 1) -> Residue:
        """``B_k / k mod p**e`` for ``k >= 1``."""
        return self.bernoulli_mod(k, p, e) / k

    # Harmonic residues

    def harmonic_table(self, p: int, e: int = 1) -> HarmonicTable:
        """
        ``H_0..H_{p-1}`` and ``H'_{p-1}`` mod ``p**e``.

        Args:
            p (int): prime above 3
            e (int): exponent, at most 3

        Returns:
            HarmonicTable: the residues
        """
        key = (p, e)
        with self._lock:
            if key in self._harmonic:
                return self._harmonic[key]
            modulus = p ** e
            values = None
            if self.cache is not None:
                values = self.cache.load("harmonic", p, e, p + 1)
                if values is not None and len(values) != p + 1:
                    values = None
            if values is None:
                inverses = [0] + [inverse_mod(k, modulus) for k in range(1, p)]
                partial = list(accumulate(inverses, lambda a, b: (a + b) % modulus))
                hprime = sum(inverses[1::2]) % modulus
                values = partial + [hprime]
                if self.cache is not None:
                    self.cache.store("harmonic", p, e, values)
            table = HarmonicTable(
                p=p,
                e=e,
                H=tuple(Residue(v, modulus) for v in values[:p]),
                Hprime=Residue(values[p], modulus),
            )
            self._harmonic[key] = table
            return table
