"""Brute-force reference computations used as test oracles.

Each function here is deliberately naive and shares no code with the
package beyond its data types.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from math import factorial

from hypertrace.combin import ArcMultiset


def arc_counter(E: ArcMultiset) -> Counter:
    return Counter({arc: r for arc, r in E.arcs()})


def brute_walks(E: ArcMultiset) -> int:
    """Count vertex sequences ``v_0..v_{l-1}`` whose closing cycle uses exactly the arcs of E."""
    target = arc_counter(E)
    ell = E.size
    verts = E.support()
    count = 0
    for seq in itertools.product(verts, repeat=ell):
        arcs = Counter(zip(seq, seq[1:] + seq[:1]))
        if arcs == target:
            count += 1
    return count


def brute_census(n: int, d: int, r: int) -> set[ArcMultiset]:
    """Balanced multisets of ``d*r`` arcs on ``[n]`` with every outdegree divisible by ``r``."""
    all_arcs = list(itertools.product(range(1, n + 1), repeat=2))
    found = set()
    for combo in itertools.combinations_with_replacement(all_arcs, d * r):
        E = ArcMultiset.from_arcs(n, combo)
        if E.is_balanced() and all(E.outdeg(i) % r == 0 for i in range(1, n + 1)):
            found.add(E)
    return found


def all_balanced(n: int, size: int) -> set[ArcMultiset]:
    return brute_census(n, size, 1)


def ones_trace(m: int, n: int, d: int) -> Fraction:
    """Trace of the all-ones tensor from its multinomial sum over compositions of d."""
    ell = d * (m - 1)
    total = 0
    for degs in itertools.product(range(d + 1), repeat=n):
        if sum(degs) != d:
            continue
        denom = 1
        for di in degs:
            denom *= factorial(di * (m - 1))
        total += factorial(ell) // denom
    return Fraction((m - 1) ** (n - 1) * total)


def random_int_matrix(rng, n: int, lo: int = -4, hi: int = 4) -> list[list[int]]:
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def plain_matrix_trace_power(M: list[list[int]], d: int) -> int:
    """``tr(M^d)`` with Python integers, by the sum over closed index sequences."""
    n = len(M)
    total = 0
    for seq in itertools.product(range(n), repeat=d):
        term = 1
        for a, b in zip(seq, seq[1:] + seq[:1]):
            term *= M[a][b]
        total += term
    return total
