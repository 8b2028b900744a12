"""Command-line front end.

JSON in, JSON out.  Exit status: 0 on success, 1 on bad input or a failed
self-check, 2 when a resource cap refuses the job before it starts.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from . import FORMAT_VERSION, __version__
from .arith import UniPoly, rational_format
from .combin import ArcMultiset, count_closed_walks, weight_b, weight_c
from .errors import ResourceLimitError
from .oracle import DEFAULT_MAX_TERMS, matrix_power_trace, trace_d_oracle
from .spectral import (
    DEFAULT_PHM_MAX_N,
    charpoly_coeffs,
    charpoly_degree,
    is_p_hm_bipartite,
    laplacian_separation,
    symmetry_report,
)
from .tensors import load_hypergraph, load_tensor, random_sparse_tensor
from .trace_engine import trace_2_closed, trace_3_closed, trace_d, trace_terms

DEFAULT_MAX_CENSUS = 2_000_000

SELFCHECK_GRID = [(3, 2, 1), (3, 2, 2), (3, 2, 3), (3, 3, 1), (3, 3, 2), (4, 2, 1), (4, 2, 2)]


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    method: str = "general"
    d: int | None = None
    bound: int | None = None
    p: int | None = None
    upto: int | None = None
    arcs: list[str] = field(default_factory=list)
    dump_terms: bool = False
    max_census: int = DEFAULT_MAX_CENSUS
    max_oracle_terms: int = DEFAULT_MAX_TERMS
    max_phm_n: int = DEFAULT_PHM_MAX_N
    jobs: int = 1
    output: str = "json"
    seed: int = 0
    trials: int = 3

    def __post_init__(self):
        for name in ("max_census", "max_oracle_terms", "max_phm_n", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


class InputError(ValueError):
    pass


@dataclass
class RunResult:
    status: int
    stdout: str = ""
    stderr: str = ""


def _header(command: str) -> dict:
    return {"format_version": FORMAT_VERSION, "command": command}


def _fmt_list(values) -> list[str]:
    return [rational_format(v) for v in values]


def parse_arc_tokens(tokens: list[str]) -> ArcMultiset:
    """``["1,2", "2,1:3"]`` -> arc multiset; the vertex count is the largest label."""
    arcs: dict[tuple[int, int], int] = {}
    for tok in tokens:
        head, _, mult = tok.partition(":")
        try:
            i, j = (int(x) for x in head.split(","))
            r = int(mult) if mult else 1
        except ValueError as exc:
            raise InputError(f"bad arc token {tok!r}; expected i,j[:mult]") from exc
        if i < 1 or j < 1 or r < 1:
            raise InputError(f"bad arc token {tok!r}; labels and multiplicities must be positive")
        arcs[(i, j)] = arcs.get((i, j), 0) + r
    if not arcs:
        raise InputError("walks needs at least one arc")
    n = max(max(i, j) for i, j in arcs)
    return ArcMultiset.from_arcs(n, arcs)


# -- subcommands -------------------------------------------------------------------


def _cmd_trace(cfg: RunConfig) -> tuple[dict, list[dict]]:
    T = load_tensor(cfg.inputs[0])
    d = cfg.d
    if cfg.method == "general":
        value = trace_d(T, d, jobs=cfg.jobs, max_census=cfg.max_census)
    elif cfg.method == "oracle":
        value = trace_d_oracle(T, d, max_terms=cfg.max_oracle_terms)
    elif cfg.method == "closed":
        if d == 2:
            value = trace_2_closed(T)
        elif d == 3:
            value = trace_3_closed(T)
        else:
            raise InputError("closed forms exist only for d = 2 and d = 3")
    elif cfg.method == "matrix":
        value = matrix_power_trace(T, d)
    else:
        raise InputError(f"unknown method {cfg.method!r}")
    out = _header("trace") | {"d": d, "trace": rational_format(value), "method": cfg.method}
    extra = []
    if cfg.dump_terms:
        for t in trace_terms(T, d, with_zero=True, max_census=cfg.max_census):
            extra.append({
                "arcs": [[i, j, r] for (i, j), r in t.arcs.arcs()],
                "b": t.b,
                "c": t.c,
                "walks": t.walks,
                "pi_E": rational_format(t.pi),
            })
    return out, extra


def _cmd_charpoly(cfg: RunConfig) -> tuple[dict, list[dict]]:
    T = load_tensor(cfg.inputs[0])
    degree = charpoly_degree(T.order, T.dim)
    coeffs = charpoly_coeffs(T, cfg.upto, jobs=cfg.jobs, max_census=cfg.max_census)
    complete = cfg.upto >= degree
    out = _header("charpoly") | {
        "upto": cfg.upto,
        "degree": degree,
        "coefficients": _fmt_list(coeffs),
        "complete": complete,
    }
    if complete:
        poly = UniPoly.from_codegree(coeffs[: degree + 1])
        out["polynomial"] = _fmt_list(poly.coeffs)
    return out, []


def _cmd_symmetry(cfg: RunConfig) -> tuple[dict, list[dict]]:
    H = load_hypergraph(cfg.inputs[0])
    rep = symmetry_report(H, cfg.bound, jobs=cfg.jobs, max_census=cfg.max_census)
    out = _header("symmetry") | {
        "k": rep.k,
        "bound": rep.bound,
        "traces": _fmt_list(rep.traces),
        "verdict": rep.verdict,
        "witnesses": [[d, rational_format(v)] for d, v in rep.witnesses],
        "complete": rep.complete,
        "full_degree": charpoly_degree(H.k, H.n),
    }
    return out, []


def _cmd_phm(cfg: RunConfig) -> tuple[dict, list[dict]]:
    H = load_hypergraph(cfg.inputs[0])
    split = is_p_hm_bipartite(H, cfg.p, max_n=cfg.max_phm_n)
    out = _header("phm") | {
        "p": cfg.p,
        "k": H.k,
        "p_hm_bipartite": split is not None,
        "partition": None if split is None else {"V1": split[0], "V2": split[1]},
    }
    return out, []


def _cmd_lapcompare(cfg: RunConfig) -> tuple[dict, list[dict]]:
    H = load_hypergraph(cfg.inputs[0])
    cmp = laplacian_separation(H, jobs=cfg.jobs, max_census=cfg.max_census)
    out = _header("lapcompare") | {
        "k": H.k,
        "trace_laplacian": rational_format(cmp.trace_laplacian),
        "trace_signless_laplacian": rational_format(cmp.trace_signless),
        "strictly_unequal": cmp.strictly_unequal,
    }
    return out, []


def _cmd_walks(cfg: RunConfig) -> tuple[dict, list[dict]]:
    E = parse_arc_tokens(cfg.arcs)
    out = _header("walks") | {
        "arcs": [[i, j, r] for (i, j), r in E.arcs()],
        "walks": count_closed_walks(E),
        "b": weight_b(E),
        "c": weight_c(E),
    }
    return out, []


def selfcheck_cells(seed: int, trials: int, max_terms: int | None = DEFAULT_MAX_TERMS) -> list[dict]:
    rng = random.Random(seed)
    cells = []
    for m, n, d in SELFCHECK_GRID:
        ok = True
        for _ in range(trials):
            T = random_sparse_tensor(rng, m, n)
            general = trace_d(T, d)
            oracle = trace_d_oracle(T, d, max_terms=max_terms)
            ok &= general == oracle
        cells.append({"m": m, "n": n, "d": d, "trials": trials, "pass": ok})
    for n, d in [(2, 4), (3, 3), (4, 2)]:
        ok = True
        for _ in range(trials):
            A = random_sparse_tensor(rng, 2, n, density=1.0)
            ok &= trace_d(A, d) == matrix_power_trace(A, d)
        cells.append({"m": 2, "n": n, "d": d, "trials": trials, "pass": ok, "check": "matrix"})
    return cells


def _cmd_selfcheck(cfg: RunConfig) -> tuple[dict, list[dict]]:
    cells = selfcheck_cells(cfg.seed, cfg.trials, cfg.max_oracle_terms)
    out = _header("selfcheck") | {"seed": cfg.seed, "cells": cells, "pass": all(c["pass"] for c in cells)}
    return out, []


COMMANDS = {
    "trace": _cmd_trace,
    "charpoly": _cmd_charpoly,
    "symmetry": _cmd_symmetry,
    "phm": _cmd_phm,
    "lapcompare": _cmd_lapcompare,
    "walks": _cmd_walks,
    "selfcheck": _cmd_selfcheck,
}


def _render_table(out: dict, extra: list[dict]) -> str:
    lines = []
    for key, val in out.items():
        if isinstance(val, (list, dict)):
            val = json.dumps(val)
        lines.append(f"{key:<26} {val}")
    for row in extra:
        lines.append("  ".join(f"{k}={json.dumps(v) if isinstance(v, list) else v}" for k, v in row.items()))
    return "\n".join(lines)


def run(cfg: RunConfig) -> RunResult:
    """Execute one subcommand and render its output."""
    try:
        out, extra = COMMANDS[cfg.subcommand](cfg)
    except ResourceLimitError as exc:
        err = _header(cfg.subcommand) | {
            "error": "resource limit",
            "cap": exc.cap,
            "limit": exc.limit,
            "predicted": exc.predicted,
        }
        return RunResult(2, stderr=json.dumps(err))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        # json.JSONDecodeError is a ValueError
        return RunResult(1, stderr=json.dumps(_header(cfg.subcommand) | {"error": str(exc)}))
    if cfg.output == "table":
        text = _render_table(out, extra)
    else:
        text = "\n".join(json.dumps(obj) for obj in [out, *extra])
    return RunResult(0 if out.get("pass", True) else 1, stdout=text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output", choices=["json", "table"], default="json")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for census evaluation")
    common.add_argument("--max-census", type=int, default=DEFAULT_MAX_CENSUS)
    common.add_argument("--max-oracle-terms", type=int, default=DEFAULT_MAX_TERMS)

    parser = argparse.ArgumentParser(prog="hypertrace", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hypertrace {__version__} (format {FORMAT_VERSION})")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("trace", parents=[common], help="d-th order trace of a tensor file")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--method", choices=["general", "closed", "oracle", "matrix"], default="general")
    p.add_argument("--dump-terms", action="store_true")
    p.add_argument("file")

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial coefficients")
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("file")

    p = sub.add_parser("symmetry", parents=[common], help="bounded k-symmetry check of a hypergraph")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("file")

    p = sub.add_parser("phm", parents=[common], help="search for a p-hm bipartition")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--max-n", dest="max_phm_n", type=int, default=DEFAULT_PHM_MAX_N)
    p.add_argument("file")

    p = sub.add_parser("lapcompare", parents=[common], help="Laplacian vs signless Laplacian traces")
    p.add_argument("file")

    p = sub.add_parser("walks", parents=[common], help="closed-walk count and weights of an arc multiset")
    p.add_argument("arcs", nargs="+", metavar="i,j[:mult]")

    p = sub.add_parser("selfcheck", parents=[common], help="general trace vs differential-operator oracle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=3)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    values = vars(ns).copy()
    cmd = values.pop("subcommand")
    file = values.pop("file", None)
    return RunConfig(subcommand=cmd, inputs=[file] if file else [], **values)


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        print(json.dumps({"format_version": FORMAT_VERSION, "error": str(exc)}), file=sys.stderr)
        return 1
    result = run(cfg)
    if result.stdout:
        print(result.stdout)
    if result.stderr:
        print(result.stderr, file=sys.stderr)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
