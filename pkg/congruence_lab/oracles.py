"""
Brute-force enumerators used as ground truth for the formula engines.

Nothing here calls the sequence engines except ``oracle_pair``, which puts an
enumerated value next to the engine's value for comparison.
"""

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import TooLarge
from .sequences import SequenceEngine, generalized_eulerian_row, multinomial_size

logger = logging.getLogger(__name__)

ASCENT_CAP = 10
ALTERNATING_CAP = 10
DUMONT_CAP = 9  # size of the permuted set, 2n - 1
GUN_CAP = 14  # size of the domain, 2n - 2
NEWCOMB_CAP = 9
MULTISET_CAP = 10 ** 6


@dataclass(frozen=True)
class PermutationStatVector:
    """``counts[m]`` is the number of arrangements whose statistic equals ``m``."""

    n: int
    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def as_list(self) -> List[int]:
        return list(self.counts)


def _require(what: str, size: int, cap: int) -> None:
    if size > cap:
        raise TooLarge(what, size, cap)


def _count_arrangements(size: int, step_ok: Callable[[int, int, int], bool]) -> int:
    """
    Count permutations of ``1..size`` built left to right, where appending
    ``value`` after ``prev`` at 1-based position ``pos`` must satisfy
    ``step_ok(pos, prev, value)``. Iterative depth-first search with pruning.
    """
    if size <= 1:
        return 1
    count = 0
    stack: List[Tuple[int, int, int]] = [(v, 1 << v, 1) for v in range(size, 0, -1)]
    while stack:
        last, used, length = stack.pop()
        if length == size:
            count += 1
            continue
        for v in range(1, size + 1):
            if not used & (1 << v) and step_ok(length, last, v):
                stack.append((v, used | (1 << v), length + 1))
    return count


def ascents(seq: Sequence[int]) -> int:
    return sum(1 for a, b in zip(seq, seq[1:]) if a < b)


def descents(seq: Sequence[int]) -> int:
    return sum(1 for a, b in zip(seq, seq[1:]) if a > b)


def ascent_distribution(n: int) -> PermutationStatVector:
    """
    Permutations of ``Sym(n)`` counted by number of ascents.

    Raises:
        TooLarge: if ``n > 10``
    """
    _require("ascent_distribution", n, ASCENT_CAP)
    counts = [0] * max(n, 1)
    for perm in permutations(range(1, n + 1)):
        counts[ascents(perm)] += 1
    return PermutationStatVector(n, tuple(counts))


def alternating_count(n: int) -> int:
    """
    Permutations of ``Sym(n)`` whose descents are exactly the odd positions.
    """
    _require("alternating_count", n, ALTERNATING_CAP)

    def step_ok(pos: int, prev: int, value: int) -> bool:
        return prev > value if pos % 2 else prev < value

    return _count_arrangements(n, step_ok)


def dumont_count(n: int) -> int:
    """
    Permutations of ``Sym(2n-1)`` ascending after an odd value and descending
    after an even one.
    """
    size = 2 * n - 1
    _require("dumont_count", size, DUMONT_CAP)

    def step_ok(pos: int, prev: int, value: int) -> bool:
        return prev < value if prev % 2 else prev > value

    return _count_arrangements(size, step_ok)


def gun_count(n: int) -> int:
    """
    Alternating guns on ``[1, 2n-2]``: maps with ``g(2i-1), g(2i) <= i``,
    ``g(2i-1) >= g(2i)`` and ``g(2i) <= g(2i+1)``. The empty domain counts 1.
    """
    size = 2 * n - 2
    _require("gun_count", size, GUN_CAP)
    if size <= 0:
        return 1

    count = 0
    # (next 1-based position, previous value)
    stack: List[Tuple[int, int]] = [(2, 1)]
    while stack:
        pos, prev = stack.pop()
        if pos > size:
            count += 1
            continue
        bound = (pos + 1) // 2
        if pos % 2 == 0:
            values = range(1, min(bound, prev) + 1)
        else:
            values = range(prev, bound + 1)
        for v in values:
            stack.append((pos + 1, v))
    return count


def newcomb_piles(deck: Sequence[int]) -> int:
    """
    Deal the deck face up: a card goes on top of the previous one when its
    number is less, otherwise it starts a new pile.
    """
    piles = 0
    top: Optional[int] = None
    for card in deck:
        if top is None or card >= top:
            piles += 1
        top = card
    return piles


def newcomb_distribution(n: int) -> PermutationStatVector:
    """
    Decks of ``n`` cards by pile count; ``counts[m]`` is the number of decks
    leading to ``m + 1`` piles.
    """
    _require("newcomb_distribution", n, NEWCOMB_CAP)
    counts = [0] * max(n, 1)
    for deck in permutations(range(1, n + 1)):
        counts[newcomb_piles(deck) - 1] += 1
    return PermutationStatVector(n, tuple(counts))


def _next_permutation(word: List[int]) -> bool:
    """Advance ``word`` to its lexicographic successor in place."""
    k = len(word) - 2
    while k >= 0 and word[k] >= word[k + 1]:
        k -= 1
    if k < 0:
        return False
    j = len(word) - 1
    while word[j] <= word[k]:
        j -= 1
    word[k], word[j] = word[j], word[k]
    word[k + 1 :] = reversed(word[k + 1 :])
    return True


def multiset_descent_distribution(n: int, i: int) -> PermutationStatVector:
    """
    Distinct words on ``{1^i, ..., n^i}`` counted by number of descents.

    Raises:
        TooLarge: if there are more than ``10**6`` words
    """
    _require("multiset_descent_distribution", multinomial_size(n, i), MULTISET_CAP)
    counts = [0] * (i * (n - 1) + 1)
    word = [v for v in range(1, n + 1) for _ in range(i)]
    while True:
        counts[descents(word)] += 1
        if not _next_permutation(word):
            break
    return PermutationStatVector(n, tuple(counts))


def multiset_shapes(cap: int = MULTISET_CAP) -> List[Tuple[int, int]]:
    """
    Every ``(n, i)`` whose word count is at most ``cap``.

    Multiplicities stop at the largest ``i`` for which two letters still fit;
    ``n = 1`` is a single word for any ``i``.
    """
    shapes: List[Tuple[int, int]] = []
    i = 1
    while multinomial_size(2, i) <= cap:
        n = 1
        while multinomial_size(n, i) <= cap:
            shapes.append((n, i))
            n += 1
        i += 1
    return shapes


ORACLE_FAMILIES = ("ascents", "alternating", "dumont", "guns", "newcomb", "multiset")


def oracle_pair(
    family: str, n: int, engine: SequenceEngine, i: int = 2
) -> Tuple[List[int], List[int]]:
    """
    Enumerated values next to the formula engine's values.

    Args:
        family (str): one of ``ORACLE_FAMILIES``
        n (int): size parameter
        engine (SequenceEngine): engine supplying the formula side
        i (int): multiplicity, for the ``multiset`` family only

    Returns:
        Tuple[List[int], List[int]]: ``(oracle, formula)``
    """
    if family == "ascents":
        return ascent_distribution(n).as_list(), engine.eulerian_row(n)
    if family == "alternating":
        return [alternating_count(n)], [engine.zigzag(n)[n]]
    if family == "dumont":
        return [dumont_count(n)], [abs(engine.genocchi_number(2 * n))]
    if family == "guns":
        return [gun_count(n)], [abs(engine.genocchi_number(2 * n))]
    if family == "newcomb":
        return newcomb_distribution(n).as_list(), engine.eulerian_row(n)
    if family == "multiset":
        return multiset_descent_distribution(n, i).as_list(), generalized_eulerian_row(n, i)
    raise KeyError(family)
