"""Arc multisets, index assignments, balanced-multiset census and closed-walk counts.

An arc multiset on ``[n]`` is stored as an ``n x n`` matrix of multiplicities;
``E.mult(i, j)`` is the number of copies of the arc ``(i, j)``.  Closed walks
are rooted vertex sequences ``(v0, v1, ..., v0)`` whose consecutive pairs use
every arc of ``E`` exactly as often as its multiplicity.  Parallel arcs are
indistinguishable, and the same cyclic walk read from a different starting
position counts as a different walk.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Iterator, Sequence

from .arith import binomial


def compositions(d: int, n: int) -> Iterator[tuple[int, ...]]:
    """All n-tuples of nonnegative integers summing to d, in lexicographic order."""
    if n < 1:
        raise ValueError("need at least one part")
    if d < 0:
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in compositions(d - first, n - 1):
            yield (first, *rest)


def _bounded_compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` with part ``j`` at most ``caps[j]``, lexicographic."""
    if not caps:
        if total == 0:
            yield ()
        return
    room = sum(caps[1:])
    for first in range(max(0, total - room), min(caps[0], total) + 1):
        for rest in _bounded_compositions(total - first, caps[1:]):
            yield (first, *rest)


@dataclass(frozen=True)
class ArcMultiset:
    n: int
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != self.n or any(len(row) != self.n for row in self.matrix):
            raise ValueError("multiplicity matrix must be n x n")
        if any(r < 0 for row in self.matrix for r in row):
            raise ValueError("negative arc multiplicity")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]] | dict) -> ArcMultiset:
        """Build from an iterable of arcs (repeats accumulate) or a ``{(i, j): r}`` map."""
        mat = [[0] * n for _ in range(n)]
        items = arcs.items() if isinstance(arcs, dict) else ((a, 1) for a in arcs)
        for (i, j), r in items:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"arc {(i, j)} outside 1..{n}")
            mat[i - 1][j - 1] += r
        return cls(n, tuple(tuple(row) for row in mat))

    def mult(self, i: int, j: int) -> int:
        return self.matrix[i - 1][j - 1]

    def arcs(self) -> list[tuple[tuple[int, int], int]]:
        return [
            ((i + 1, j + 1), r)
            for i, row in enumerate(self.matrix)
            for j, r in enumerate(row)
            if r
        ]

    @property
    def size(self) -> int:
        return sum(map(sum, self.matrix))

    def outdeg(self, i: int) -> int:
        return sum(self.matrix[i - 1])

    def indeg(self, i: int) -> int:
        return sum(row[i - 1] for row in self.matrix)

    def support(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if self.outdeg(i) or self.indeg(i)]

    def is_balanced(self) -> bool:
        return all(self.outdeg(i) == self.indeg(i) for i in range(1, self.n + 1))

    def __str__(self) -> str:
        return " ".join(f"{i},{j}:{r}" if r > 1 else f"{i},{j}" for (i, j), r in self.arcs())


@dataclass(frozen=True)
class IndexAssignment:
    """Ordered components ``(i_j, alpha_j)`` with nondecreasing primary indices."""

    components: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        comps = tuple((int(i), tuple(int(v) for v in a)) for i, a in self.components)
        if not comps:
            raise ValueError("an index assignment needs at least one component")
        if len({len(a) for _, a in comps}) != 1:
            raise ValueError("all trailing tuples must have the same length")
        primaries = [i for i, _ in comps]
        if primaries != sorted(primaries):
            raise ValueError("primary indices must be nondecreasing")
        object.__setattr__(self, "components", comps)

    @property
    def d(self) -> int:
        return len(self.components)

    @property
    def order(self) -> int:
        return len(self.components[0][1]) + 1

    def occurrences(self) -> dict[int, tuple[int, int]]:
        """``{i: (d_i, q_i)}``: primary and non-primary appearance counts."""
        out: dict[int, list[int]] = {}
        for i, alpha in self.components:
            out.setdefault(i, [0, 0])[0] += 1
            for v in alpha:
                out.setdefault(v, [0, 0])[1] += 1
        return {i: (a, b) for i, (a, b) in sorted(out.items())}


def arc_multiset_of(F: IndexAssignment, n: int | None = None) -> ArcMultiset:
    if n is None:
        n = max(max(i, *a) for i, a in F.components)
    return ArcMultiset.from_arcs(n, [(i, v) for i, alpha in F.components for v in alpha])


def weight_b(E: ArcMultiset) -> int:
    """Product of the factorials of the arc multiplicities."""
    return prod(factorial(r) for row in E.matrix for r in row)


def weight_c(E: ArcMultiset) -> int:
    """Product of the factorials of the vertex outdegrees."""
    return prod(factorial(sum(row)) for row in E.matrix)


def m_valent(F: IndexAssignment, m: int) -> bool:
    """Every index occurs (as primary or not) a multiple of ``m`` times."""
    return all((d + q) % m == 0 for d, q in F.occurrences().values())


# -- census -------------------------------------------------------------------


def census_balanced(
    n: int,
    d: int,
    r: int,
    allowed: Sequence[Sequence[bool]] | None = None,
) -> Iterator[ArcMultiset]:
    """Balanced arc multisets of size ``d*r`` whose outdegrees are multiples of ``r``.

    Emission order: outdegree profile (as a composition of ``d``) lexicographic,
    then the multiplicity matrix row-major lexicographic.  ``allowed`` is an
    optional ``n x n`` mask; arcs that are not allowed are forced to zero.
    """
    for profile in compositions(d, n):
        yield from balanced_tables(n, [p * r for p in profile], allowed)


def balanced_tables(n: int, margins: list[int], allowed) -> Iterator[ArcMultiset]:
    """Nonnegative matrices with row sums and column sums both equal to ``margins``."""
    rows: list[tuple[int, ...]] = []

    def rec(i: int, col_left: list[int]) -> Iterator[ArcMultiset]:
        if i == n:
            if not any(col_left):
                yield ArcMultiset(n, tuple(rows))
            return
        caps = [
            col_left[j] if allowed is None or allowed[i][j] else 0
            for j in range(n)
        ]
        for row in _bounded_compositions(margins[i], caps):
            rows.append(row)
            yield from rec(i + 1, [c - x for c, x in zip(col_left, row)])
            rows.pop()

    yield from rec(0, list(margins))


def census_size_bound(n: int, d: int, r: int) -> int:
    """Cheap upper bound on the census size: the product of per-row composition counts.

    Computed as ``[x^d] (sum_k C(k*r + n - 1, n - 1) x^k)^n`` by dynamic programming.
    """
    per_row = [comb(k * r + n - 1, n - 1) for k in range(d + 1)]
    acc = [1] + [0] * d
    for _ in range(n):
        nxt = [0] * (d + 1)
        for a, va in enumerate(acc):
            if va:
                for k in range(d + 1 - a):
                    nxt[a + k] += va * per_row[k]
        acc = nxt
    return acc[d]


# -- closed walks -------------------------------------------------------------


def _compress(E: ArcMultiset) -> tuple[tuple[int, ...], ...]:
    sup = E.support()
    return tuple(tuple(E.matrix[i - 1][j - 1] for j in sup) for i in sup)


def _strongly_connected(mat: tuple[tuple[int, ...], ...]) -> bool:
    # for balanced multisets weak connectivity of the support suffices
    k = len(mat)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in range(k):
            if (mat[v][u] or mat[u][v]) and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == k


@lru_cache(maxsize=None)
def _count_compressed(mat: tuple[tuple[int, ...], ...]) -> int:
    k = len(mat)
    if k == 0:
        return 0
    if any(sum(mat[i]) != sum(row[i] for row in mat) for i in range(k)):
        return 0
    if not _strongly_connected(mat):
        return 0
    arcs = [(i, j) for i in range(k) for j in range(k) if mat[i][j]]
    start = tuple(mat[i][j] for i, j in arcs)
    out_arcs = [[a for a, (i, _) in enumerate(arcs) if i == v] for v in range(k)]
    heads = [j for _, j in arcs]

    total = 0
    for root in range(k):
        memo: dict[tuple[int, tuple[int, ...]], int] = {}

        def walk(v: int, left: tuple[int, ...], remaining: int) -> int:
            if remaining == 0:
                return 1 if v == root else 0
            key = (v, left)
            if key in memo:
                return memo[key]
            count = 0
            for a in out_arcs[v]:
                if left[a]:
                    nxt = left[:a] + (left[a] - 1,) + left[a + 1:]
                    count += walk(heads[a], nxt, remaining - 1)
            memo[key] = count
            return count

        total += walk(root, start, sum(start))
    return total


def count_closed_walks(E: ArcMultiset) -> int:
    """Number of rooted closed walks whose arc multiset is exactly ``E``."""
    return _count_compressed(_compress(E))


def e_two_vertex(m: int, s: int, i: int = 1, j: int = 2, n: int = 2, d: int = 2) -> ArcMultiset:
    """The two-vertex census member with ``s`` arcs each way between ``i`` and ``j``.

    For ``d == 2`` both vertices carry ``m - 1`` out-arcs; for ``d == 3`` vertex
    ``i`` carries ``2(m - 1)``.
    """
    if d not in (2, 3):
        raise ValueError("two-vertex families are defined for d = 2 and d = 3")
    loops_i = (d - 1) * (m - 1) - s
    loops_j = m - 1 - s
    if min(s, loops_i, loops_j) < 0:
        raise ValueError("negative multiplicity")
    return ArcMultiset.from_arcs(n, {(i, j): s, (j, i): s, (i, i): loops_i, (j, j): loops_j})


def three_vertex_multiplicities(m: int, p: int, q: int, r: int, s: int) -> dict[tuple[int, int], int]:
    """Multiplicities of the three-vertex census member on vertices 1, 2, 3.

    ``p, q, r, s`` are the multiplicities of ``(1,2), (2,3), (3,1), (2,1)``;
    balance at every vertex with outdegree ``m - 1`` fixes the rest.  Values
    may be negative, meaning no such multiset exists.
    """
    return {
        (1, 2): p,
        (2, 3): q,
        (3, 1): r,
        (2, 1): s,
        (1, 3): r + s - p,
        (3, 2): q + s - p,
        (1, 1): m - 1 - s - r,
        (2, 2): m - 1 - s - q,
        (3, 3): m - 1 + p - r - s - q,
    }


@lru_cache(maxsize=None)
def walk_count_table_w(m: int, p: int, q: int, r: int, s: int) -> int:
    mults = three_vertex_multiplicities(m, p, q, r, s)
    if min(mults.values()) < 0:
        return 0
    return count_closed_walks(ArcMultiset.from_arcs(3, mults))


def two_vertex_walk_count(m: int, s: int) -> int:
    """Closed-form walk count ``2 C(m-1, s) C(m-2, s-1)`` for the d = 2 family."""
    return 2 * binomial(m - 1, s) * binomial(m - 2, s - 1)


# -- index assignments --------------------------------------------------------


def enumerate_assignments(n: int, m: int, d: int) -> Iterator[IndexAssignment]:
    """Every assignment of ``d`` components over ``[n]`` for order ``m``.  Exponential."""
    alphas = list(itertools.product(range(1, n + 1), repeat=m - 1))
    for primaries in itertools.combinations_with_replacement(range(1, n + 1), d):
        for chosen in itertools.product(alphas, repeat=d):
            yield IndexAssignment(tuple(zip(primaries, chosen)))
