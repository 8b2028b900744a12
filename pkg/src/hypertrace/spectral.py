"""Characteristic-polynomial coefficients and spectral properties of uniform hypergraphs.

The coefficients of the characteristic polynomial come from traces alone:
``a_k = P_k(-Tr_1/1, ..., -Tr_k/k)`` where ``P_k`` is the Schur function
generated by ``exp(sum t_k z^k) = sum P_k z^k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .arith import UniPoly
from .combin import compositions
from .errors import ResourceLimitError
from .tensors import Hypergraph, Tensor, adjacency_tensor, laplacian, signless_laplacian
from .trace_engine import trace_d

DEFAULT_PHM_MAX_N = 20


def charpoly_degree(m: int, n: int) -> int:
    """Number of eigenvalues (with multiplicity) of an order-m, dimension-n tensor."""
    return n * (m - 1) ** (n - 1)


def schur_P(d: int, t: Sequence[Fraction | int]) -> Fraction:
    """``P_d(t_1, ..., t_d)`` via ``k P_k = sum_{j=1}^k j t_j P_{k-j}``."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    if len(t) < d:
        raise ValueError(f"P_{d} needs {d} arguments, got {len(t)}")
    return schur_sequence(t[:d])[d]


def schur_sequence(t: Sequence[Fraction | int]) -> list[Fraction]:
    """``[P_0, P_1, ..., P_K]`` for ``K = len(t)``."""
    t = [Fraction(x) for x in t]
    P = [Fraction(1)]
    for k in range(1, len(t) + 1):
        P.append(sum((j * t[j - 1] * P[k - j] for j in range(1, k + 1)), Fraction(0)) / k)
    return P


def schur_P_direct(d: int, t: Sequence[Fraction | int]) -> Fraction:
    """``P_d`` as the sum over compositions ``d_1 + ... + d_m = d`` of ``t_{d_1}...t_{d_m}/m!``."""
    if d == 0:
        return Fraction(1)
    if len(t) < d:
        raise ValueError(f"P_{d} needs {d} arguments, got {len(t)}")
    total = Fraction(0)
    for parts in range(1, d + 1):
        term = Fraction(0)
        for comp in compositions(d - parts, parts):
            prod_t = Fraction(1)
            for c in comp:
                prod_t *= t[c]  # part size c + 1, so t_{c+1} sits at index c
            term += prod_t
        total += term / factorial(parts)
    return total


def charpoly_coeffs(
    T: Tensor,
    upto: int,
    *,
    traces: Sequence[Fraction] | None = None,
    max_upto: int | None = None,
    jobs: int = 1,
    max_census: int | None = None,
) -> list[Fraction]:
    """``[a_0, ..., a_upto]`` with ``a_0 = 1``; traces are computed unless supplied."""
    if upto < 0:
        raise ValueError("upto must be nonnegative")
    if max_upto is not None and upto > max_upto:
        raise ResourceLimitError("charpoly order", max_upto, upto)
    if traces is None:
        traces = [trace_d(T, d, jobs=jobs, max_census=max_census) for d in range(1, upto + 1)]
    elif len(traces) < upto:
        raise ValueError(f"need {upto} traces, got {len(traces)}")
    return schur_sequence([-Fraction(tr) / k for k, tr in enumerate(traces[:upto], start=1)])


def charpoly(T: Tensor, **kwargs) -> UniPoly:
    """The full characteristic polynomial, of degree ``n (m-1)^(n-1)``."""
    degree = charpoly_degree(T.order, T.dim)
    return UniPoly.from_codegree(charpoly_coeffs(T, degree, **kwargs))


def power_sums_from_poly(poly: UniPoly, K: int) -> list[Fraction]:
    """Power sums ``p_1..p_K`` of the roots of a monic polynomial, by Newton's identities."""
    if not poly.is_monic():
        raise ValueError("polynomial must be monic")
    D = poly.degree
    a = poly.codegree_coeffs()
    p: list[Fraction] = []
    for k in range(1, K + 1):
        acc = Fraction(-k) * a[k] if k <= D else Fraction(0)
        for i in range(1, min(k - 1, D) + 1):
            acc -= a[i] * p[k - i - 1]
        p.append(acc)
    return p


def power_sum_check(poly: UniPoly, traces: Sequence[Fraction | int]) -> bool:
    """True iff the root power sums of ``poly`` equal ``traces[k-1]`` for every k."""
    return power_sums_from_poly(poly, len(traces)) == [Fraction(t) for t in traces]


@dataclass
class SymmetryReport:
    k: int
    bound: int
    traces: list[Fraction]
    witnesses: list[tuple[int, Fraction]] = field(default_factory=list)
    complete: bool = False

    @property
    def verdict(self) -> str:
        return "refuted" if self.witnesses else "consistent-with-k-symmetric"


def symmetry_report(H: Hypergraph, bound: int, *, jobs: int = 1, max_census: int | None = None) -> SymmetryReport:
    """Check ``Tr_d(A_H) = 0`` for every ``d <= bound`` not divisible by ``k``.

    A zero-witness report is conclusive only when ``bound`` reaches the
    characteristic polynomial's degree, flagged by ``complete``.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    A = adjacency_tensor(H)
    traces = [trace_d(A, d, jobs=jobs, max_census=max_census) for d in range(1, bound + 1)]
    witnesses = [(d, tr) for d, tr in enumerate(traces, start=1) if d % H.k and tr != 0]
    return SymmetryReport(
        k=H.k,
        bound=bound,
        traces=traces,
        witnesses=witnesses,
        complete=bound >= charpoly_degree(H.k, H.n),
    )


def is_p_hm_bipartite(H: Hypergraph, p: int, *, max_n: int = DEFAULT_PHM_MAX_N) -> tuple[list[int], list[int]] | None:
    """A split ``(V1, V2)`` with every edge meeting ``V1`` in exactly ``p`` vertices, or None.

    Subsets are tried as bitmasks in increasing order, so the returned split
    is the first one found in that order.
    """
    if not H.nontrivial:
        raise ValueError("p-hm bipartiteness needs at least one edge")
    if not 1 <= p <= H.k - 1:
        raise ValueError(f"p must lie in 1..{H.k - 1}, got {p}")
    if H.n > max_n:
        raise ResourceLimitError("vertex count for exhaustive search", max_n, H.n)
    edge_masks = [sum(1 << (v - 1) for v in e) for e in H.edges]
    full = (1 << H.n) - 1
    for mask in range(1, full):
        if all((mask & em).bit_count() == p for em in edge_masks):
            v1 = [v for v in range(1, H.n + 1) if mask >> (v - 1) & 1]
            v2 = [v for v in range(1, H.n + 1) if not mask >> (v - 1) & 1]
            return v1, v2
    return None


@dataclass(frozen=True)
class LaplacianComparison:
    trace_laplacian: Fraction
    trace_signless: Fraction

    @property
    def strictly_unequal(self) -> bool:
        return self.trace_laplacian != self.trace_signless


def laplacian_separation(H: Hypergraph, *, jobs: int = 1, max_census: int | None = None) -> LaplacianComparison:
    """Order-k traces of the Laplacian and signless Laplacian tensors."""
    if not H.nontrivial:
        raise ValueError("comparison needs at least one edge")
    return LaplacianComparison(
        trace_d(laplacian(H), H.k, jobs=jobs, max_census=max_census),
        trace_d(signless_laplacian(H), H.k, jobs=jobs, max_census=max_census),
    )


def cyclic_witness(edge: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """Components ``(e_1, e_2 ... e_k), (e_2, ..., e_1), ...``: each rotation of the edge."""
    e = list(edge)
    return [(e[j], tuple(e[j + 1:] + e[:j])) for j in range(len(e))]
