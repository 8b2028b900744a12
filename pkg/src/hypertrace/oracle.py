"""Reference traces computed straight from the differential-operator definition.

Slow on purpose.  Nothing here touches the combinatorial machinery used by
:mod:`hypertrace.trace_engine`: ``tr(A^l)`` is expanded symbolically in the
``n^2`` entries of a generic matrix ``A``, the operators
``sum_y t_{iy} d/da_{iy}`` are applied literally, and the surviving constant
is read off.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .errors import ResourceLimitError
from .tensors import Tensor

DEFAULT_MAX_TERMS = 5_000_000


class MultiPoly:
    """Sparse polynomial in the variables ``a_ij`` (``1 <= i, j <= n``).

    Monomials are exponent vectors of length ``n*n``, row-major in ``(i, j)``.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[tuple[int, ...], Fraction] | None = None):
        self.n = n
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def constant(cls, n: int, c: Fraction | int) -> MultiPoly:
        return cls(n, {(0,) * (n * n): c})

    @classmethod
    def variable(cls, n: int, i: int, j: int) -> MultiPoly:
        exps = [0] * (n * n)
        exps[(i - 1) * n + (j - 1)] = 1
        return cls(n, {tuple(exps): 1})

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]], coeff: Fraction | int = 1) -> MultiPoly:
        exps = [0] * (n * n)
        for i, j in arcs:
            exps[(i - 1) * n + (j - 1)] += 1
        return cls(n, {tuple(exps): coeff})

    def __add__(self, other: MultiPoly) -> MultiPoly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return MultiPoly(self.n, out)

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        out: dict[tuple[int, ...], Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, Fraction(0)) + v1 * v2
        return MultiPoly(self.n, out)

    def scale(self, c: Fraction | int) -> MultiPoly:
        return MultiPoly(self.n, {k: c * v for k, v in self.terms.items()})

    def derivative(self, i: int, j: int) -> MultiPoly:
        """Partial derivative with respect to ``a_ij``."""
        pos = (i - 1) * self.n + (j - 1)
        out = {}
        for k, v in self.terms.items():
            e = k[pos]
            if e:
                out[k[:pos] + (e - 1,) + k[pos + 1:]] = v * e
        return MultiPoly(self.n, out)

    def is_constant(self) -> bool:
        return all(not any(k) for k in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * (self.n * self.n), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:
        return f"MultiPoly(n={self.n}, terms={len(self.terms)})"


def symbolic_trace_power(n: int, ell: int, method: str = "matrix") -> MultiPoly:
    """``tr(A^ell)`` for a generic ``n x n`` matrix ``A``.

    ``method="matrix"`` multiplies symbolic matrices; ``method="walks"`` sums
    the monomials of all ``n**ell`` index cycles.  The two must agree.
    """
    if n < 1 or ell < 1:
        raise ValueError("need n >= 1 and ell >= 1")
    if method == "walks":
        total = MultiPoly(n)
        for seq in itertools.product(range(1, n + 1), repeat=ell):
            arcs = zip(seq, seq[1:] + seq[:1])
            total = total + MultiPoly.from_arcs(n, arcs)
        return total
    if method != "matrix":
        raise ValueError(f"unknown method {method!r}")
    A = [[MultiPoly.variable(n, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    power = A
    for _ in range(ell - 1):
        power = [
            [
                sum((power[i][k] * A[k][j] for k in range(n)), MultiPoly(n))
                for j in range(n)
            ]
            for i in range(n)
        ]
    return sum((power[i][i] for i in range(n)), MultiPoly(n))


def apply_partial(P: MultiPoly, F: Iterable[tuple[int, Sequence[int]]]) -> MultiPoly:
    """Apply ``prod_j prod_{s in alpha_j} d/da_{i_j s}`` for components ``(i_j, alpha_j)``."""
    for i, alpha in F:
        for s in alpha:
            P = P.derivative(i, s)
    return P


def _apply_row_operator(P: MultiPoly, i: int, row: list[tuple[tuple[int, ...], Fraction]]) -> MultiPoly:
    """``sum_y t_{iy} d/da_{iy}`` applied once to ``P``."""
    out = MultiPoly(P.n)
    for alpha, val in row:
        out = out + apply_partial(P, [(i, alpha)]).scale(val)
    return out


def predicted_oracle_terms(n: int, m: int, d: int) -> int:
    """Rough work estimate: monomial sequences times compositions of ``d``."""
    return n ** (d * (m - 1)) * comb(d + n - 1, n - 1)


def trace_d_oracle(T: Tensor, d: int, *, max_terms: int | None = DEFAULT_MAX_TERMS) -> Fraction:
    if d < 1:
        raise ValueError(f"trace order must be >= 1, got {d}")
    m, n = T.order, T.dim
    ell = d * (m - 1)
    if max_terms is not None:
        predicted = predicted_oracle_terms(n, m, d)
        if predicted > max_terms:
            raise ResourceLimitError("oracle terms", max_terms, predicted)
    base = symbolic_trace_power(n, ell)
    rows = {i: [] for i in range(1, n + 1)}
    for idx, val in T.items():
        rows[idx[0]].append((idx[1:], val))

    total = Fraction(0)
    for degs in itertools.product(range(d + 1), repeat=n):
        if sum(degs) != d:
            continue
        P = base
        for i, di in enumerate(degs, start=1):
            for _ in range(di):
                P = _apply_row_operator(P, i, rows[i])
        # ell derivatives of a degree-ell form leave only constants
        assert P.is_constant(), "operator left a non-constant residue"
        weight = Fraction(1)
        for di in degs:
            weight /= factorial(di * (m - 1))
        total += weight * P.constant_term()
    return (m - 1) ** (n - 1) * total


def matrix_power_trace(A: Tensor, d: int) -> Fraction:
    """``tr(A^d)`` by repeated exact matrix multiplication."""
    if A.order != 2:
        raise ValueError(f"matrix trace needs an order-2 tensor, got order {A.order}")
    if d < 1:
        raise ValueError("power must be >= 1")
    M = A.to_matrix()
    n = A.dim
    power = M
    for _ in range(d - 1):
        power = [[sum((power[i][k] * M[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
    return sum((power[i][i] for i in range(n)), Fraction(0))
