"""Higher-order tensor traces from balanced arc multisets and closed-walk counts.

The main entry point is :func:`trace_d`::

    Tr_d(T) = (m-1)^(n-1) * sum_E  b(E)/c(E) * pi_E(T) * |W(E)|

with ``E`` running over balanced arc multisets of size ``d(m-1)`` whose
outdegrees are multiples of ``m-1``.  ``pi_E(T)`` sums the entry products of
every index assignment inducing ``E`` and factorizes over vertices.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterator

from .arith import multinomial
from .combin import (
    ArcMultiset,
    IndexAssignment,
    balanced_tables,
    arc_multiset_of,
    compositions,
    count_closed_walks,
    census_size_bound,
    m_valent,
    walk_count_table_w,
    weight_b,
    weight_c,
)
from .errors import ResourceLimitError
from .tensors import Tensor


@dataclass(frozen=True)
class TraceTerm:
    """One census member's contribution before the global ``(m-1)^(n-1)`` factor."""

    arcs: ArcMultiset
    b: int
    c: int
    walks: int
    pi: Fraction

    @property
    def value(self) -> Fraction:
        return Fraction(self.b, self.c) * self.pi * self.walks


def _content(alpha: tuple[int, ...], n: int) -> tuple[int, ...]:
    counts = [0] * n
    for v in alpha:
        counts[v - 1] += 1
    return tuple(counts)


def content_sums(T: Tensor) -> dict[int, dict[tuple[int, ...], Fraction]]:
    """Per primary index ``i``: content vector of ``alpha`` -> sum of ``t_{i alpha}``.

    Entries whose trailing tuples are rearrangements of each other share a
    content vector; only these sums ever enter a trace.
    """
    out: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for i, row in T.rows().items():
        sums: dict[tuple[int, ...], Fraction] = {}
        for alpha, val in row:
            key = _content(alpha, T.dim)
            sums[key] = sums.get(key, Fraction(0)) + val
        out[i] = {k: v for k, v in sums.items() if v != 0}
    return out


def allowed_arcs(T: Tensor) -> list[list[bool]]:
    """Mask of arcs ``(i, j)`` that some nonzero content sum at ``i`` can supply."""
    n = T.dim
    mask = [[False] * n for _ in range(n)]
    for i, sums in content_sums(T).items():
        for content in sums:
            for j, c in enumerate(content):
                if c:
                    mask[i - 1][j] = True
    return mask


def _vertex_splittings(sums: dict[tuple[int, ...], Fraction], k: int, target: tuple[int, ...]) -> Fraction:
    """Sum over ordered k-sequences of content vectors adding up to ``target`` of the
    product of their content sums."""
    items = list(sums.items())

    @lru_cache(maxsize=None)
    def rec(k: int, left: tuple[int, ...]) -> Fraction:
        if k == 0:
            return Fraction(1) if not any(left) else Fraction(0)
        total = Fraction(0)
        for content, val in items:
            if all(c <= x for c, x in zip(content, left)):
                total += val * rec(k - 1, tuple(x - c for c, x in zip(content, left)))
        return total

    return rec(k, target)


def _check_census_member(T: Tensor, E: ArcMultiset, d: int) -> None:
    r = T.order - 1
    if E.n != T.dim:
        raise ValueError(f"arc multiset is over {E.n} vertices, tensor has dimension {T.dim}")
    if E.size != d * r:
        raise ValueError(f"arc multiset has size {E.size}, expected {d * r}")
    if not E.is_balanced():
        raise ValueError("arc multiset is not balanced")
    if any(E.outdeg(i) % r for i in range(1, E.n + 1)):
        raise ValueError(f"an outdegree is not a multiple of {r}")


def pi_E(T: Tensor, E: ArcMultiset, d: int, _sums=None) -> Fraction:
    """Sum of ``pi_F(T)`` over all index assignments ``F`` with ``E(F) = E``."""
    _check_census_member(T, E, d)
    sums = content_sums(T) if _sums is None else _sums
    r = T.order - 1
    result = Fraction(1)
    for i in range(1, E.n + 1):
        out = E.outdeg(i)
        if out == 0:
            continue
        if i not in sums:
            return Fraction(0)
        result *= _vertex_splittings(sums[i], out // r, E.matrix[i - 1])
        if result == 0:
            return result
    return result


def _check_d(d: int) -> None:
    if d < 1:
        raise ValueError(f"trace order must be >= 1, got {d}")


def _guard(T: Tensor, d: int, max_census: int | None) -> None:
    if max_census is None:
        return
    predicted = census_size_bound(T.dim, d, T.order - 1)
    if predicted > max_census:
        raise ResourceLimitError("census size", max_census, predicted)


def _profile_terms(T: Tensor, d: int, profile: tuple[int, ...], mask, sums, with_zero: bool) -> list[TraceTerm]:
    r = T.order - 1
    terms = []
    for E in balanced_tables(T.dim, [p * r for p in profile], mask):
        pi = pi_E(T, E, d, sums)
        if pi == 0 and not with_zero:
            continue
        terms.append(TraceTerm(E, weight_b(E), weight_c(E), count_closed_walks(E), pi))
    return terms


def _active_profiles(T: Tensor, d: int, sums) -> Iterator[tuple[int, ...]]:
    for profile in compositions(d, T.dim):
        if all(p == 0 or (i + 1) in sums for i, p in enumerate(profile)):
            yield profile


def trace_terms(T: Tensor, d: int, *, with_zero: bool = False, max_census: int | None = None) -> Iterator[TraceTerm]:
    """Census members in canonical order with their weights, walk counts and ``pi_E``.

    Multisets using an arc no nonzero entry can supply are skipped up front;
    their ``pi_E`` is zero.  ``with_zero`` keeps the remaining zero terms.
    """
    _check_d(d)
    _guard(T, d, max_census)
    sums = content_sums(T)
    mask = allowed_arcs(T)
    for profile in _active_profiles(T, d, sums):
        yield from _profile_terms(T, d, profile, mask, sums, with_zero)


def _profile_sum(args) -> Fraction:
    T, d, profile = args
    sums = content_sums(T)
    return sum((t.value for t in _profile_terms(T, d, profile, allowed_arcs(T), sums, False)), Fraction(0))


def trace_d(T: Tensor, d: int, *, jobs: int = 1, max_census: int | None = None) -> Fraction:
    """``Tr_d(T)`` by the grouped census formula."""
    _check_d(d)
    _guard(T, d, max_census)
    scale = (T.order - 1) ** (T.dim - 1)
    if jobs > 1:
        profiles = list(_active_profiles(T, d, content_sums(T)))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map preserves profile order, so the reduction order is canonical
            parts = list(pool.map(_profile_sum, [(T, d, p) for p in profiles]))
        return scale * sum(parts, Fraction(0))
    return scale * sum((t.value for t in trace_terms(T, d)), Fraction(0))


# -- raw assignment sum ---------------------------------------------------------


def assignment_terms(T: Tensor, d: int) -> Iterator[tuple[IndexAssignment, Fraction]]:
    """``(F, b(F)/c(F) * pi_F(T) * |W(F)|)`` for every assignment with ``pi_F(T) != 0``.

    Assignments hitting a zero entry contribute nothing and are not produced.
    """
    _check_d(d)
    rows = T.rows()
    active = sorted(rows)
    for primaries in itertools.combinations_with_replacement(active, d):
        for chosen in itertools.product(*(rows[i] for i in primaries)):
            F = IndexAssignment(tuple((i, alpha) for i, (alpha, _) in zip(primaries, chosen)))
            E = arc_multiset_of(F, T.dim)
            walks = count_closed_walks(E)
            pi = prod((val for _, val in chosen), start=Fraction(1))
            yield F, Fraction(weight_b(E), weight_c(E)) * pi * walks


def trace_d_by_assignments(T: Tensor, d: int, *, valent_only: bool = False, check_valence: bool = True) -> Fraction:
    """``Tr_d(T)`` summed assignment by assignment.

    ``valent_only`` restricts the sum to m-valent assignments; with
    ``check_valence`` every assignment that has a closed walk is asserted to be
    m-valent, so dropping the others cannot change the value.
    """
    m = T.order
    total = Fraction(0)
    for F, term in assignment_terms(T, d):
        valent = m_valent(F, m)
        if check_valence and term != 0:
            assert valent, f"assignment {F} has closed walks but is not {m}-valent"
        if valent_only and not valent:
            continue
        total += term
    return (m - 1) ** (T.dim - 1) * total


# -- closed forms for d = 2, 3 ------------------------------------------------------


def _vec(n: int, parts: dict[int, int]) -> tuple[int, ...]:
    out = [0] * n
    for v, c in parts.items():
        out[v - 1] += c
    return tuple(out)


def _pair_sums(row: dict[tuple[int, ...], Fraction]) -> dict[tuple[int, ...], Fraction]:
    """Content vector -> sum over ordered pairs of trailing tuples with that joint content."""
    out: dict[tuple[int, ...], Fraction] = {}
    for (c1, v1), (c2, v2) in itertools.product(row.items(), repeat=2):
        key = tuple(a + b for a, b in zip(c1, c2))
        out[key] = out.get(key, Fraction(0)) + v1 * v2
    return out


def trace_2_closed(T: Tensor) -> Fraction:
    """``Tr_2`` from the diagonal and pairwise content sums."""
    m, n = T.order, T.dim
    sums = content_sums(T)
    S = lambda i, parts: sums.get(i, {}).get(_vec(n, parts), Fraction(0))  # noqa: E731
    total = sum((t * t for t in T.diagonal()), Fraction(0))
    for i, j in itertools.combinations(range(1, n + 1), 2):
        for s in range(1, m):
            total += (
                Fraction(2 * s, m - 1)
                * S(i, {j: s, i: m - 1 - s})
                * S(j, {i: s, j: m - 1 - s})
            )
    return (m - 1) ** (n - 1) * total


def trace_3_closed(T: Tensor) -> Fraction:
    """``Tr_3`` split by how many vertices the census member touches."""
    m, n = T.order, T.dim
    r = m - 1
    sums = content_sums(T)
    pairs = {i: _pair_sums(row) for i, row in sums.items()}
    S = lambda i, parts: sums.get(i, {}).get(_vec(n, parts), Fraction(0))  # noqa: E731
    P = lambda i, parts: pairs.get(i, {}).get(_vec(n, parts), Fraction(0))  # noqa: E731

    one = sum((t ** 3 for t in T.diagonal()), Fraction(0))

    two = Fraction(0)
    for i, j in itertools.permutations(range(1, n + 1), 2):
        for s in range(1, m):
            two += (
                Fraction(3 * s, 2 * r)
                * P(i, {j: s, i: 2 * r - s})
                * S(j, {i: s, j: r - s})
            )

    three = Fraction(0)
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        for p, q, rr, s in itertools.product(range(m), repeat=4):
            w = walk_count_table_w(m, p, q, rr, s)
            if w == 0:
                continue
            prod_t = (
                S(i, {i: r - s - rr, j: p, k: rr + s - p})
                * S(j, {i: s, j: r - s - q, k: q})
                * S(k, {i: rr, j: q + s - p, k: r + p - rr - s - q})
            )
            if prod_t == 0:
                continue
            denom = (
                multinomial(r, [s, rr, r - s - rr])
                * multinomial(r, [p, q + s - p, r - s - q])
                * multinomial(r, [q, rr + s - p, r + p - rr - s - q])
            )
            three += Fraction(w, denom) * prod_t
    return (m - 1) ** (n - 1) * (one + two + three)
