from __future__ import annotations

import json
from fractions import Fraction

import pytest

from hypertrace import FORMAT_VERSION, __version__
from hypertrace.cli import InputError, RunConfig, main, parse_arc_tokens, run
from hypertrace.combin import census_balanced, two_vertex_walk_count
from hypertrace.tensors import Hypergraph, Tensor, ones_tensor
from reference import plain_matrix_trace_power

MATRIX = [[1, 2], [3, 4]]


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    (tmp_path / "garbage.json").write_text("{not json")
    return {
        "ones": write("ones.json", ones_tensor(3, 2).to_json()),
        "matrix": write("matrix.json", Tensor.from_matrix(MATRIX).to_json()),
        "edge": write("edge.json", Hypergraph(3, 3, ((1, 2, 3),)).to_json()),
        "triangle": write("triangle.json", Hypergraph(3, 2, ((1, 2), (2, 3), (1, 3))).to_json()),
        "k4": write("k4.json", Hypergraph(4, 3, ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))).to_json()),
        "dup": write("dup.json", {"order": 2, "dim": 2, "entries": [{"idx": [1, 1], "val": "1"}, {"idx": [1, 1], "val": "2"}]}),
        "badedge": write("badedge.json", {"n": 3, "k": 3, "edges": [[1, 2]]}),
        "garbage": str(tmp_path / "garbage.json"),
        "missing": str(tmp_path / "missing.json"),
    }


def call(capsys, argv):
    status = main(argv)
    out, err = capsys.readouterr()
    return status, out, err


def lines(text):
    return [json.loads(line) for line in text.strip().splitlines()]


def test_trace_ones(files, capsys):
    status, out, _ = call(capsys, ["trace", "--d", "2", files["ones"]])
    assert status == 0
    assert lines(out) == [{"format_version": FORMAT_VERSION, "command": "trace", "d": 2, "trace": "16", "method": "general"}]


def test_trace_methods_agree(files, capsys):
    values = set()
    for method in ("general", "oracle", "closed"):
        status, out, _ = call(capsys, ["trace", "--d", "3", "--method", method, files["ones"]])
        assert status == 0
        values.add(lines(out)[0]["trace"])
    assert len(values) == 1


def test_trace_matrix_method(files, capsys):
    status, out, _ = call(capsys, ["trace", "--d", "3", "--method", "matrix", files["matrix"]])
    assert status == 0
    assert lines(out)[0]["trace"] == str(plain_matrix_trace_power(MATRIX, 3))
    status, _, err = call(capsys, ["trace", "--d", "3", "--method", "matrix", files["ones"]])
    assert status == 1 and "error" in json.loads(err)


def test_trace_closed_only_small_d(files, capsys):
    status, _, err = call(capsys, ["trace", "--d", "4", "--method", "closed", files["ones"]])
    assert status == 1 and "closed forms" in json.loads(err)["error"]


def test_dump_terms(files, capsys):
    status, out, _ = call(capsys, ["trace", "--d", "2", "--dump-terms", files["ones"]])
    assert status == 0
    head, *terms = lines(out)
    # the all-ones tensor supports every arc, so nothing is pruned
    assert len(terms) == len(list(census_balanced(2, 2, 2)))
    assert all(set(t) == {"arcs", "b", "c", "walks", "pi_E"} for t in terms)
    total = sum(Fraction(t["b"], t["c"]) * Fraction(t["pi_E"]) * t["walks"] for t in terms)
    assert 2 * total == Fraction(head["trace"])


def test_charpoly(files, capsys):
    status, out, _ = call(capsys, ["charpoly", "--upto", "2", files["matrix"]])
    obj = lines(out)[0]
    assert status == 0
    assert obj["coefficients"] == ["1", "-5", "-2"]
    assert obj["complete"] and obj["degree"] == 2
    assert obj["polynomial"] == ["-2", "-5", "1"]
    status, out, _ = call(capsys, ["charpoly", "--upto", "1", files["ones"]])
    obj = lines(out)[0]
    assert not obj["complete"] and "polynomial" not in obj


def test_symmetry(files, capsys):
    status, out, _ = call(capsys, ["symmetry", "--bound", "3", files["triangle"]])
    obj = lines(out)[0]
    assert status == 0
    assert obj["verdict"] == "refuted" and obj["witnesses"] == [[3, "6"]]
    status, out, _ = call(capsys, ["symmetry", "--bound", "4", files["edge"]])
    obj = lines(out)[0]
    assert obj["verdict"] == "consistent-with-k-symmetric" and obj["complete"] is False
    assert obj["full_degree"] == 12


def test_phm(files, capsys):
    status, out, _ = call(capsys, ["phm", "--p", "1", files["edge"]])
    obj = lines(out)[0]
    assert status == 0 and obj["p_hm_bipartite"] and obj["partition"] == {"V1": [1], "V2": [2, 3]}
    status, out, _ = call(capsys, ["phm", "--p", "1", files["k4"]])
    assert lines(out)[0]["partition"] is None
    status, _, err = call(capsys, ["phm", "--p", "1", "--max-n", "2", files["edge"]])
    assert status == 2 and json.loads(err)["cap"]


def test_lapcompare(files, capsys):
    status, out, _ = call(capsys, ["lapcompare", files["edge"]])
    obj = lines(out)[0]
    assert status == 0 and obj["strictly_unequal"] is True
    assert obj["trace_laplacian"] != obj["trace_signless_laplacian"]


def test_walks(capsys):
    status, out, _ = call(capsys, ["walks", "1,2", "2,1", "1,1:2", "2,2:2"])
    obj = lines(out)[0]
    assert status == 0
    assert obj["walks"] == two_vertex_walk_count(4, 1)
    assert (obj["b"], obj["c"]) == (4, 36)


def test_parse_arc_tokens():
    E = parse_arc_tokens(["1,2", "2,1:3", "1,2"])
    assert E.n == 2 and E.mult(1, 2) == 2 and E.mult(2, 1) == 3
    for bad in (["1;2"], ["0,1"], ["1,2:0"], []):
        with pytest.raises(InputError):
            parse_arc_tokens(bad)


def test_selfcheck(capsys):
    status, out, _ = call(capsys, ["selfcheck", "--trials", "1"])
    obj = lines(out)[0]
    assert status == 0 and obj["pass"]
    assert len(obj["cells"]) == 10 and all(c["pass"] for c in obj["cells"])


def test_table_output(files, capsys):
    status, out, _ = call(capsys, ["trace", "--d", "2", "--format", "table", files["ones"]])
    assert status == 0
    assert any(line.split() == ["trace", "16"] for line in out.splitlines())


@pytest.mark.parametrize("key", ["dup", "garbage", "missing"])
def test_bad_tensor_files(files, capsys, key):
    status, out, err = call(capsys, ["trace", "--d", "2", files[key]])
    assert status == 1 and out == ""
    assert "error" in json.loads(err)


def test_bad_hypergraph_file(files, capsys):
    status, _, err = call(capsys, ["symmetry", "--bound", "2", files["badedge"]])
    assert status == 1 and "error" in json.loads(err)


def test_census_refusal(files, capsys):
    status, out, err = call(capsys, ["trace", "--d", "6", "--max-census", "10", files["ones"]])
    assert status == 2 and out == ""
    obj = json.loads(err)
    assert obj["cap"] == "census size" and obj["limit"] == 10 and obj["predicted"] > 10


def test_oracle_refusal(files, capsys):
    status, _, err = call(capsys, ["trace", "--d", "3", "--method", "oracle", "--max-oracle-terms", "5", files["ones"]])
    assert status == 2 and json.loads(err)["cap"] == "oracle terms"


def test_nonpositive_caps_rejected(files, capsys):
    status, _, _ = call(capsys, ["trace", "--d", "2", "--jobs", "0", files["ones"]])
    assert status == 1
    with pytest.raises(ValueError):
        RunConfig("trace", max_census=0)


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert capsys.readouterr().out.strip() == f"hypertrace {__version__} (format {FORMAT_VERSION})"


def test_run_is_repeatable(files):
    cfg = RunConfig("trace", inputs=[files["ones"]], d=3, dump_terms=True)
    first = run(cfg)
    assert first.status == 0
    assert run(cfg) == first
    assert run(RunConfig("trace", inputs=[files["ones"]], d=3, dump_terms=True, jobs=2)) == first
