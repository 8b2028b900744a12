"""Sparse order-m tensors with exact entries and the tensors of a uniform hypergraph.

Indices are 1-based throughout: a tensor of dimension ``n`` is indexed by
tuples over ``{1, ..., n}``.
"""
from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping

from .arith import rational_format, rational_parse


class Tensor:
    """Sparse tensor: a map from index tuples to nonzero Fractions.

    Absent keys are zero and zero values are never stored.  Instances are
    treated as immutable.
    """

    __slots__ = ("order", "dim", "_entries", "_rows")

    def __init__(self, order: int, dim: int, entries: Mapping[tuple[int, ...], Fraction | int] | None = None):
        if order < 2:
            raise ValueError(f"tensor order must be >= 2, got {order}")
        if dim < 1:
            raise ValueError(f"tensor dimension must be >= 1, got {dim}")
        self.order = order
        self.dim = dim
        clean: dict[tuple[int, ...], Fraction] = {}
        for idx, val in (entries or {}).items():
            idx = tuple(int(i) for i in idx)
            self._check_index(idx)
            val = Fraction(val)
            if val != 0:
                clean[idx] = val
        self._entries = dict(sorted(clean.items()))
        self._rows: dict[int, list[tuple[tuple[int, ...], Fraction]]] | None = None

    def _check_index(self, idx: tuple[int, ...]) -> None:
        if len(idx) != self.order:
            raise ValueError(f"index {idx} does not have {self.order} components")
        for i in idx:
            if not 1 <= i <= self.dim:
                raise ValueError(f"index {idx} out of range 1..{self.dim}")

    # -- access ---------------------------------------------------------------

    def __getitem__(self, idx: tuple[int, ...]) -> Fraction:
        idx = tuple(idx)
        self._check_index(idx)
        return self._entries.get(idx, Fraction(0))

    def entry(self, i: int, alpha: tuple[int, ...]) -> Fraction:
        """Value at ``(i, *alpha)``: primary index ``i``, trailing tuple ``alpha``."""
        return self[(i, *alpha)]

    def items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return iter(self._entries.items())

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def rows(self) -> dict[int, list[tuple[tuple[int, ...], Fraction]]]:
        """Nonzero ``(alpha, value)`` pairs grouped by primary index."""
        if self._rows is None:
            rows: dict[int, list] = defaultdict(list)
            for idx, val in self._entries.items():
                rows[idx[0]].append((idx[1:], val))
            self._rows = dict(rows)
        return self._rows

    def diagonal(self) -> list[Fraction]:
        return [self._entries.get((i,) * self.order, Fraction(0)) for i in range(1, self.dim + 1)]

    def is_diagonal(self) -> bool:
        return all(len(set(idx)) == 1 for idx in self._entries)

    # -- algebra --------------------------------------------------------------

    def _same_shape(self, other: Tensor) -> None:
        if (self.order, self.dim) != (other.order, other.dim):
            raise ValueError("tensor shapes differ")

    def __add__(self, other: Tensor) -> Tensor:
        self._same_shape(other)
        out = dict(self._entries)
        for idx, val in other.items():
            out[idx] = out.get(idx, Fraction(0)) + val
        return Tensor(self.order, self.dim, out)

    def __neg__(self) -> Tensor:
        return Tensor(self.order, self.dim, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: Tensor) -> Tensor:
        return self + (-other)

    def scale(self, c: Fraction | int) -> Tensor:
        return Tensor(self.order, self.dim, {k: c * v for k, v in self._entries.items()})

    def __abs__(self) -> Tensor:
        return Tensor(self.order, self.dim, {k: abs(v) for k, v in self._entries.items()})

    def relabel(self, perm: Mapping[int, int] | tuple[int, ...]) -> Tensor:
        """Rename vertex ``v`` to ``perm[v]`` in every index (``perm`` 1-based)."""
        if isinstance(perm, tuple):
            perm = {i + 1: p for i, p in enumerate(perm)}
        return Tensor(self.order, self.dim, {tuple(perm[i] for i in idx): v for idx, v in self._entries.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.order, self.dim, self._entries) == (other.order, other.dim, other._entries)

    def __hash__(self) -> int:
        return hash((self.order, self.dim, tuple(self._entries.items())))

    def __repr__(self) -> str:
        return f"Tensor(order={self.order}, dim={self.dim}, nnz={self.nnz})"

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "dim": self.dim,
            "entries": [{"idx": list(idx), "val": rational_format(v)} for idx, v in self._entries.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Tensor:
        try:
            order, dim, raw = int(data["order"]), int(data["dim"]), data["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"tensor file missing field: {exc}") from exc
        entries: dict[tuple[int, ...], Fraction] = {}
        for item in raw:
            idx = tuple(item["idx"])
            if not all(isinstance(i, int) for i in idx):
                raise ValueError(f"non-integer index {list(idx)}")
            if idx in entries:
                raise ValueError(f"duplicate index {list(idx)}")
            val = item["val"]
            entries[idx] = rational_parse(val) if isinstance(val, str) else Fraction(int(val))
        return cls(order, dim, entries)

    @classmethod
    def from_matrix(cls, rows: Iterable[Iterable[Fraction | int]]) -> Tensor:
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        return cls(2, n, {(i + 1, j + 1): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    def to_matrix(self) -> list[list[Fraction]]:
        if self.order != 2:
            raise ValueError("only order-2 tensors convert to matrices")
        return [[self[(i, j)] for j in range(1, self.dim + 1)] for i in range(1, self.dim + 1)]


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on vertices ``1..n``; edges stored as sorted tuples."""

    n: int
    k: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("hypergraph needs at least one vertex")
        if self.k < 2:
            raise ValueError(f"uniformity must be >= 2, got {self.k}")
        seen = set()
        clean = []
        for e in self.edges:
            e = tuple(sorted(int(v) for v in e))
            if len(e) != self.k:
                raise ValueError(f"edge {list(e)} does not have {self.k} vertices")
            if len(set(e)) != self.k:
                raise ValueError(f"edge {list(e)} repeats a vertex")
            if not all(1 <= v <= self.n for v in e):
                raise ValueError(f"edge {list(e)} has a vertex outside 1..{self.n}")
            if e in seen:
                raise ValueError(f"duplicate edge {list(e)}")
            seen.add(e)
            clean.append(e)
        object.__setattr__(self, "edges", tuple(sorted(clean)))

    @property
    def nontrivial(self) -> bool:
        return bool(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v - 1] += 1
        return deg

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: Mapping) -> Hypergraph:
        try:
            return cls(int(data["n"]), int(data["k"]), tuple(tuple(e) for e in data["edges"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"hypergraph file missing field: {exc}") from exc


def unit_tensor(m: int, n: int) -> Tensor:
    return Tensor(m, n, {(i,) * m: 1 for i in range(1, n + 1)})


def ones_tensor(m: int, n: int) -> Tensor:
    return Tensor(m, n, {idx: 1 for idx in itertools.product(range(1, n + 1), repeat=m)})


def diagonal_tensor(m: int, values: Iterable[Fraction | int]) -> Tensor:
    values = list(values)
    return Tensor(m, len(values), {(i + 1,) * m: v for i, v in enumerate(values)})


def adjacency_tensor(h: Hypergraph) -> Tensor:
    """Order-k tensor with ``1/(k-1)!`` at every permutation of every edge."""
    weight = Fraction(1, factorial(h.k - 1))
    entries = {}
    for e in h.edges:
        for idx in itertools.permutations(e):
            entries[idx] = weight
    return Tensor(h.k, h.n, entries)


def degree_tensor(h: Hypergraph) -> Tensor:
    return diagonal_tensor(h.k, h.degrees())


def laplacian(h: Hypergraph) -> Tensor:
    return degree_tensor(h) - adjacency_tensor(h)


def signless_laplacian(h: Hypergraph) -> Tensor:
    return degree_tensor(h) + adjacency_tensor(h)


def load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_tensor(path: str) -> Tensor:
    return Tensor.from_json(load_json(path))


def load_hypergraph(path: str) -> Hypergraph:
    return Hypergraph.from_json(load_json(path))


def random_sparse_tensor(rng, m: int, n: int, density: float = 0.5, lo: int = -3, hi: int = 3) -> Tensor:
    """Integer entries in ``[lo, hi]`` at each index with probability ``density``."""
    entries = {}
    for idx in itertools.product(range(1, n + 1), repeat=m):
        if rng.random() < density:
            entries[idx] = rng.randint(lo, hi)
    return Tensor(m, n, entries)
