from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction

import pytest

from hypertrace.tensors import (
    Hypergraph,
    Tensor,
    adjacency_tensor,
    degree_tensor,
    diagonal_tensor,
    laplacian,
    load_hypergraph,
    load_tensor,
    ones_tensor,
    random_sparse_tensor,
    signless_laplacian,
    unit_tensor,
)


def test_zero_entries_are_dropped():
    T = Tensor(3, 2, {(1, 1, 1): 0, (1, 2, 2): Fraction(1, 2)})
    assert T.nnz == 1
    assert T[(1, 1, 1)] == 0
    assert T.entry(1, (2, 2)) == Fraction(1, 2)


@pytest.mark.parametrize("idx", [(0, 1, 1), (1, 3, 1), (1, 1)])
def test_bad_index_rejected(idx):
    with pytest.raises(ValueError):
        Tensor(3, 2, {idx: 1})


def test_shape_validation():
    with pytest.raises(ValueError):
        Tensor(1, 2)
    with pytest.raises(ValueError):
        Tensor(2, 0)


def test_json_round_trip():
    rng = random.Random(5)
    for _ in range(20):
        T = random_sparse_tensor(rng, rng.randint(2, 4), rng.randint(1, 3))
        T = T.scale(Fraction(1, 3))
        data = json.loads(json.dumps(T.to_json()))
        assert Tensor.from_json(data) == T


def test_json_accepts_integer_values():
    T = Tensor.from_json({"order": 2, "dim": 2, "entries": [{"idx": [1, 2], "val": 3}, {"idx": [2, 1], "val": "-1/2"}]})
    assert T[(1, 2)] == 3 and T[(2, 1)] == Fraction(-1, 2)


def test_json_duplicate_index_rejected():
    data = {"order": 2, "dim": 2, "entries": [{"idx": [1, 2], "val": "1"}, {"idx": [1, 2], "val": "2"}]}
    with pytest.raises(ValueError):
        Tensor.from_json(data)


def test_json_missing_field_rejected():
    with pytest.raises(ValueError):
        Tensor.from_json({"order": 2, "entries": []})


def test_load_from_file(tmp_path):
    path = tmp_path / "t.json"
    T = ones_tensor(3, 2)
    path.write_text(json.dumps(T.to_json()))
    assert load_tensor(str(path)) == T


def test_matrix_conversion():
    M = [[1, 2], [3, 4]]
    T = Tensor.from_matrix(M)
    assert T.order == 2 and T.to_matrix() == M
    with pytest.raises(ValueError):
        Tensor.from_matrix([[1, 2]])
    with pytest.raises(ValueError):
        ones_tensor(3, 2).to_matrix()


def test_unit_and_ones():
    assert unit_tensor(3, 2).diagonal() == [1, 1]
    assert unit_tensor(3, 2).is_diagonal()
    assert ones_tensor(3, 2).nnz == 8
    assert not ones_tensor(3, 2).is_diagonal()


def test_algebra():
    rng = random.Random(2)
    A = random_sparse_tensor(rng, 3, 2)
    B = random_sparse_tensor(rng, 3, 2)
    assert (A + B) - B == A
    assert A - A == Tensor(3, 2)
    assert A.scale(0).is_zero()
    with pytest.raises(ValueError):
        A + ones_tensor(2, 2)


def test_relabel():
    T = Tensor(3, 3, {(1, 2, 3): 5, (2, 2, 2): 1})
    R = T.relabel((2, 3, 1))
    assert R[(2, 3, 1)] == 5 and R[(3, 3, 3)] == 1
    assert R.relabel({1: 3, 2: 1, 3: 2}) == T


def test_hypergraph_validation():
    H = Hypergraph(4, 3, ((3, 2, 1), (4, 2, 1)))
    assert H.edges == ((1, 2, 3), (1, 2, 4))
    assert H.degrees() == [2, 2, 1, 1]
    for bad in [((1, 2),), ((1, 1, 2),), ((1, 2, 5),), ((1, 2, 3), (3, 2, 1))]:
        with pytest.raises(ValueError):
            Hypergraph(4, 3, bad)
    assert not Hypergraph(3, 3, ()).nontrivial


def test_hypergraph_file_round_trip(tmp_path):
    H = Hypergraph(5, 3, ((1, 2, 3), (3, 4, 5)))
    path = tmp_path / "h.json"
    path.write_text(json.dumps(H.to_json()))
    assert load_hypergraph(str(path)) == H


def test_adjacency_entries_of_single_edge():
    A = adjacency_tensor(Hypergraph(3, 3, ((1, 2, 3),)))
    assert A.nnz == 6
    for idx in itertools.permutations((1, 2, 3)):
        assert A[idx] == Fraction(1, 2)
    assert A[(1, 1, 2)] == 0


def _random_hypergraph(rng, n, k):
    edges = [e for e in itertools.combinations(range(1, n + 1), k) if rng.random() < 0.5]
    return Hypergraph(n, k, tuple(edges))


def test_adjacency_is_symmetric():
    rng = random.Random(8)
    for _ in range(10):
        H = _random_hypergraph(rng, 5, 3)
        A = adjacency_tensor(H)
        for idx, val in A.items():
            for perm in itertools.permutations(idx):
                assert A[perm] == val


def test_laplacian_identities():
    rng = random.Random(9)
    for _ in range(10):
        k = rng.randint(2, 4)
        H = _random_hypergraph(rng, 5, k)
        L, Q, A, D = laplacian(H), signless_laplacian(H), adjacency_tensor(H), degree_tensor(H)
        assert abs(L) == Q
        assert L + A == D
        assert Q - A == D
        assert D == diagonal_tensor(k, H.degrees())
