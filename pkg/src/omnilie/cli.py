"""Command-line verifier.

Exit codes: 0 all checks pass, 1 a property or axiom fails (witness in the
report), 2 usage or input error, 3 an undetermined maximality verdict.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import calgebra, courant, dstruct, liealg, omni
from . import exactla as la

COMMANDS = (
    "omni-identity",
    "lie-check",
    "dstruct-classify",
    "dstruct-search",
    "calg-check",
    "courant-dirac",
    "courant-axioms",
    "linearize",
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_UNDETERMINED = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class Request:
    command: str
    input_path: Optional[str] = None
    n: Optional[int] = None
    seed: int = 0
    trials: int = 100
    degree_bound: int = 2
    budget: int = 200
    strategy: str = "graph"
    format: str = "human"
    timing: bool = False

    def options(self) -> dict:
        keys = {
            "omni-identity": ("n", "seed", "trials"),
            "lie-check": ("input_path", "n"),
            "dstruct-classify": ("input_path",),
            "dstruct-search": ("n", "strategy", "seed", "budget"),
            "calg-check": ("input_path", "n"),
            "courant-dirac": ("input_path",),
            "courant-axioms": ("n", "seed", "trials", "degree_bound"),
            "linearize": ("n",),
        }[self.command]
        return {k: getattr(self, k) for k in keys}


@dataclass
class Report:
    command: str
    options: dict
    status: str  # "pass" | "fail" | "undetermined" | "error"
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    timing: Optional[float] = None

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "command": self.command,
            "options": self.options,
            "status": self.status,
            "verdicts": self.verdicts,
            "witnesses": self.witnesses,
        }
        if timing and self.timing is not None:
            out["timing_s"] = round(self.timing, 3)
        return out


def exit_code(report: Report) -> int:
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "error": EXIT_USAGE, "undetermined": EXIT_UNDETERMINED}[
        report.status
    ]


# ---------------------------------------------------------------------------
# parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    p = argparse.ArgumentParser(prog="omnilie", description="Exact checks for omni-Lie algebras and Courant brackets.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("omni-identity", parents=[common], help="jacobiator = (0, T) on random triples")
    c.add_argument("--n", type=int, default=None, help="size n (default: 1..4)")
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)

    c = sub.add_parser("lie-check", parents=[common], help="Jacobi test and graph classification")
    c.add_argument("input_path", metavar="FILE")
    c.add_argument("--n", type=int, default=None, help="dimension when the file omits it")

    c = sub.add_parser("dstruct-classify", parents=[common], help="classify a subspace of E_n")
    c.add_argument("input_path", metavar="FILE")

    c = sub.add_parser("dstruct-search", parents=[common], help="search for D-structures")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--strategy", choices=dstruct.STRATEGIES, default="graph")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--budget", type=int, default=200)

    c = sub.add_parser("calg-check", parents=[common], help="C-algebra axioms 0-5")
    c.add_argument("input_path", metavar="FILE", nargs="?", default=None)
    c.add_argument("--n", type=int, default=None, help="check the omni instance of size n instead of a file")

    c = sub.add_parser("courant-dirac", parents=[common], help="Dirac check of a bivector, 2-form or foliation")
    c.add_argument("input_path", metavar="FILE")

    c = sub.add_parser("courant-axioms", parents=[common], help="sample the Courant axioms")
    c.add_argument("--n", type=int, default=2, help="number of variables")
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--degree-bound", type=int, default=2)
    c.add_argument("--seed", type=int, default=0)

    c = sub.add_parser("linearize", parents=[common], help="embed E_n into polynomial Courant sections")
    c.add_argument("--n", type=int, default=None, help="size n (default: 1..3)")
    return p


def parse_request(argv) -> Request:
    """Parse argv; argparse exits with status 2 on usage errors."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    req = Request(ns.command, format=ns.format, timing=ns.timing)
    for key in ("input_path", "n", "seed", "trials", "degree_bound", "budget", "strategy"):
        if hasattr(ns, key):
            setattr(req, key, getattr(ns, key))
    if req.command == "calg-check" and (req.input_path is None) == (req.n is None):
        parser.error("calg-check needs exactly one of FILE or --n")
    for key in ("n", "trials", "budget"):
        val = getattr(req, key)
        if val is not None and val < (0 if key == "trials" else 1):
            parser.error(f"--{key} must be positive")
    if req.degree_bound < 0:
        parser.error("--degree-bound must be non-negative")
    return req


# ---------------------------------------------------------------------------
# commands


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _cmd_omni_identity(req: Request):
    sizes = [req.n] if req.n else [1, 2, 3, 4]
    rng = random.Random(req.seed)
    verdicts, witnesses = {}, {}
    for n in sizes:
        good = 0
        for _ in range(req.trials):
            es = [omni.random_element(rng, n) for _ in range(3)]
            if omni.anomaly_holds(*es):
                good += 1
            elif f"n={n}" not in witnesses:
                witnesses[f"n={n}"] = [e.to_json() for e in es]
        verdicts[f"n={n}"] = f"{good}/{req.trials}"
    return ("pass" if not witnesses else "fail"), verdicts, witnesses


def _cmd_lie_check(req: Request):
    b = liealg.BilinearOp.from_json(_read_json(req.input_path), req.n)
    verdicts = {"n": b.n, "is_skew": liealg.is_skew(b)}
    witnesses = {}
    if not verdicts["is_skew"]:
        verdicts["is_lie"] = False
        return "fail", verdicts, witnesses
    bad = liealg.jacobi_failure(b)
    verdicts["is_lie"] = bad is None
    if bad:
        (i, j, k), d = bad
        witnesses["jacobi_defect"] = {"indices": [i + 1, j + 1, k + 1], "defect": la.vec_to_json(d)}
    rep = dstruct.classify(liealg.graph_subspace(b))
    verdicts["graph"] = rep.to_json()
    verdicts["graph_d_structure"] = rep.d_structure
    if rep.undetermined:
        return "undetermined", verdicts, witnesses
    return ("pass" if bad is None and rep.d_structure else "fail"), verdicts, witnesses


def _cmd_dstruct_classify(req: Request):
    f = omni.OmniSubspace.from_json(_read_json(req.input_path))
    rep = dstruct.classify(f)
    body = rep.to_json()
    witnesses = body.pop("witnesses")
    body["dim"] = f.dim
    status = "undetermined" if rep.undetermined else ("pass" if rep.d_structure else "fail")
    return status, body, witnesses


def _cmd_dstruct_search(req: Request):
    res = dstruct.search_d_structures(req.n, req.strategy, req.seed, req.budget)
    verdicts = {
        "count": len(res.structures),
        "complete": res.complete,
        "budget_exhausted": res.budget_exhausted,
        "undetermined_count": len(res.undetermined),
        "d_structures": [s.to_json() for s in res.structures],
    }
    witnesses = {"undetermined": [s.to_json() for s in res.undetermined]} if res.undetermined else {}
    return ("undetermined" if res.undetermined else "pass"), verdicts, witnesses


def _cmd_calg_check(req: Request):
    if req.n is not None:
        inst = calgebra.build_omni_instance(req.n)
    else:
        try:
            inst = calgebra.CAlgebraInstance.from_json(_read_json(req.input_path))
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise InputError(f"malformed instance file: {exc}") from exc
    val = calgebra.validate_instance(inst)
    verdicts = {"prerequisites": val.checks}
    witnesses = {"prerequisites": [f.to_json() for f in val.failures]} if val.failures else {}
    if not val.ok:
        return "fail", verdicts, witnesses
    ax = calgebra.check_axioms(inst)
    verdicts["axioms"] = ax.checks
    if ax.failures:
        witnesses["axioms"] = [f.to_json() for f in ax.failures]
    return ("pass" if ax.ok else "fail"), verdicts, witnesses


def _parse_dirac(data: dict):
    kind = data.get("kind")
    n = int(data["nvars"])
    if kind == "bivector":
        return courant.GraphOfBivector(courant.upper_from_json(data.get("entries", []), n))
    if kind == "2form":
        return courant.GraphOf2Form(courant.upper_from_json(data.get("entries", []), n))
    if kind == "foliation":
        return courant.Foliation(la.span(la.mat_from_json(data.get("basis", []), n), n))
    raise InputError(f"unknown candidate kind {kind!r}; expected bivector, 2form or foliation")


def _cmd_courant_dirac(req: Request):
    data = _read_json(req.input_path)
    try:
        cand = _parse_dirac(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed candidate file: {exc}") from exc
    rep = courant.dirac_check(cand)
    body = rep.to_json()
    witnesses = body.pop("witnesses")
    if isinstance(cand, courant.GraphOfBivector):
        residual = courant.schouten_oracle(cand.pi)
        body["schouten_zero"] = all(p.is_zero() for p in residual.values())
        nonzero = {f"{i + 1},{j + 1},{k + 1}": p.to_json() for (i, j, k), p in residual.items() if p}
        if nonzero:
            witnesses["schouten"] = nonzero
    return ("pass" if rep.passed else "fail"), body, witnesses


def _cmd_courant_axioms(req: Request):
    rep = courant.axioms_sample_check(req.n, req.degree_bound, req.trials, req.seed)
    body = rep.to_json()
    failure = body.pop("failure", None)
    return ("pass" if rep.ok else "fail"), body, ({"failure": failure} if failure else {})


def _cmd_linearize(req: Request):
    sizes = [req.n] if req.n else [1, 2, 3]
    verdicts, witnesses = {}, {}
    for n in sizes:
        basis = omni.basis(n)
        good = total = 0
        for a in basis:
            for b in basis:
                total += 1
                r = courant.linearize_roundtrip(a, b)
                if r.ok:
                    good += 1
                elif f"n={n}" not in witnesses:
                    witnesses[f"n={n}"] = {"e1": a.to_json(), "e2": b.to_json(), **r.to_json()}
        verdicts[f"n={n}"] = f"{good}/{total}"
    return ("pass" if not witnesses else "fail"), verdicts, witnesses


_DISPATCH = {
    "omni-identity": _cmd_omni_identity,
    "lie-check": _cmd_lie_check,
    "dstruct-classify": _cmd_dstruct_classify,
    "dstruct-search": _cmd_dstruct_search,
    "calg-check": _cmd_calg_check,
    "courant-dirac": _cmd_courant_dirac,
    "courant-axioms": _cmd_courant_axioms,
    "linearize": _cmd_linearize,
}


def run(req: Request):
    """Execute a request; returns ``(report, exit_code)``."""
    start = time.perf_counter()
    try:
        status, verdicts, witnesses = _DISPATCH[req.command](req)
    except InputError as exc:
        status, verdicts, witnesses = "error", {}, {"error": str(exc)}
    except (KeyError, TypeError, ValueError) as exc:
        status, verdicts, witnesses = "error", {}, {"error": f"invalid input: {exc}"}
    report = Report(req.command, req.options(), status, verdicts, witnesses, time.perf_counter() - start)
    return report, exit_code(report)


# ---------------------------------------------------------------------------
# output


def _human_lines(prefix: str, value, out: list) -> None:
    if isinstance(value, dict):
        if not value:
            out.append((prefix, "{}"))
        for k, v in value.items():
            _human_lines(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        for i, v in enumerate(value):
            _human_lines(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, json.dumps(value) if not isinstance(value, str) else value))


def emit_report(report: Report, fmt: str = "human", timing: bool = False) -> str:
    if fmt == "machine":
        return json.dumps(report.to_json(timing), sort_keys=True, indent=2)
    rows = []
    _human_lines("", {"command": report.command, "status": report.status, **report.verdicts}, rows)
    if report.witnesses:
        _human_lines("witness", report.witnesses, rows)
    if timing and report.timing is not None:
        rows.append(("timing_s", f"{report.timing:.3f}"))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def main(argv=None) -> int:
    req = parse_request(sys.argv[1:] if argv is None else argv)
    report, code = run(req)
    print(emit_report(report, req.format, req.timing))
    return code


if __name__ == "__main__":
    sys.exit(main())
