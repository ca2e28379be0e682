"""Command-line front end.

Exit status: 0 on success, 1 on unreadable or invalid input, 2 when a
computed verdict contradicts the structural guarantees (for instance a
cographic cone that is not Gorenstein).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from math import comb

from . import __version__
from .cones import Cone, ConeError, Lattice, classify_cone, hilbert_basis
from .graph import GraphError, parse_graph, cycle_graph, thick_edge
from .jacobian import (
    SheafDatum,
    elliptic_tail_ages,
    elliptic_tail_combinations,
    local_report,
    parse_dual_graph,
)
from .reid_tai import CyclicAction, ReidTaiError, classify_cyclic_toric_quotient
from .ring import (
    InternalConsistencyError,
    analyze,
    from_coordinates,
    cographic_cone,
    invariant_ring_oracle,
    presentation,
    semigroup_elements_up_to_degree,
)
from .serialize import dumps, parse_rational, to_text


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from None


def _load_json(path: str):
    text = _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None


def _emit(obj, fmt: str, out) -> None:
    out.write(dumps(obj) if fmt == "json" else to_text(obj))


def _threads() -> int:
    raw = os.environ.get("COGRAPHIC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# -- subcommands -----------------------------------------------------------


def cmd_analyze(args, out) -> int:
    g = parse_graph(_read(args.input), args.input)
    report = analyze(g)
    result = {"graph": g, "report": report, "presentation": presentation(g)}
    if args.degree_bound is not None:
        oracle = invariant_ring_oracle(g, args.degree_bound)
        enumerated = semigroup_elements_up_to_degree(g, args.degree_bound)
        result["invariant_oracle"] = {
            "degree_bound": args.degree_bound,
            "monomials": len(oracle),
            "matches_semigroup": oracle == enumerated,
        }
    _emit(result, args.format, out)
    return 0


def cmd_presentation(args, out) -> int:
    g = parse_graph(_read(args.input), args.input)
    _emit(presentation(g), args.format, out)
    return 0


def _cone_from_json(data, path):
    try:
        gens = [[parse_rational(x) for x in v] for v in data["cone_generators"]]
        lattice = None
        if "lattice" in data:
            lattice = Lattice([[parse_rational(x) for x in v] for v in data["lattice"]])
        return Cone(gens, lattice)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: malformed cone description ({exc})") from None


def cmd_hilbert_basis(args, out) -> int:
    text = _read(args.input)
    if text.lstrip().startswith("{"):
        cone = _cone_from_json(_load_json(args.input), args.input)
        hb = hilbert_basis(cone)
        _emit({"hilbert_basis": hb, "size": len(hb)}, args.format, out)
        return 0
    g = parse_graph(text, args.input)
    sigma, _ = cographic_cone(g)
    hb = hilbert_basis(sigma)
    chains = [from_coordinates(g, h).as_dict() for h in hb]
    _emit({"hilbert_basis": chains, "size": len(hb)}, args.format, out)
    return 0


def cmd_reid_tai(args, out) -> int:
    data = _load_json(args.input)
    cone = _cone_from_json(data, args.input)
    try:
        r = int(data["r"])
        lam = [int(x) for x in data["lambda"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.input}: malformed action ({exc})") from None
    verdict = classify_cyclic_toric_quotient(cone, CyclicAction(r, lam))
    result = verdict.as_dict()
    result["unquotiented"] = classify_cone(cone).as_dict()
    result["summary"] = _summary(verdict)
    _emit(result, args.format, out)
    return 0


def _summary(v) -> str:
    if not v.q_gorenstein:
        return "not Q-Gorenstein"
    kind = "terminal" if v.terminal else "canonical" if v.canonical else "not canonical"
    return ("Gorenstein" if v.gorenstein else "Q-Gorenstein") + ", " + kind


def cmd_jacobian(args, out) -> int:
    datum, sheaf = parse_dual_graph(_read(args.input), args.input)
    if args.sigma is not None:
        sigma = [e for e in args.sigma.split(",") if e]
        unknown = set(sigma) - set(datum.graph.edge_ids)
        if unknown:
            raise InputError(f"--sigma names unknown edges {sorted(unknown)}")
        sheaf = SheafDatum(sigma)
    if args.stab is not None:
        sheaf = SheafDatum(sheaf.sigma, stab_trivial=args.stab == "trivial")
    tail = [v for v in args.tail.split(",") if v] if args.tail else None
    report = local_report(datum, sheaf, tail)
    _emit(report, args.format, out)
    return 0


# -- selftest --------------------------------------------------------------


def _check_cycle(n: int):
    r = analyze(cycle_graph(n))
    got = (r.dimension, r.tangent_dimension, r.multiplicity, r.gorenstein, r.terminal, r.smooth)
    want = (n + 1, n + 2, 2, True, True, False)
    return f"cycle graph C_{n}", got == want, f"got {got}, expected {want}"


def _check_thick(n: int):
    r = analyze(thick_edge(n))
    got = (r.dimension, r.tangent_dimension, r.multiplicity)
    want = (2 * n - 1, n * n, comb(2 * (n - 1), n - 1))
    return f"thick edge I_{n}", got == want, f"got {got}, expected {want}"


def _check_cycle_presentation(n: int):
    p = presentation(cycle_graph(n))
    want = ["X*Y - " + "*".join(f"T{i}" for i in range(1, n + 1))]
    return f"presentation of C_{n}", p.relation_strings() == want, f"got {p.relation_strings()}"


def _check_non_q_gorenstein():
    cone = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
    base = classify_cone(cone)
    quot = classify_cyclic_toric_quotient(cone, CyclicAction(2, (1, 0, 0)))
    ok = base.gorenstein and not quot.q_gorenstein
    return "Gorenstein cone with non-Q-Gorenstein Z/2 quotient", ok, \
        f"base gorenstein={base.gorenstein}, quotient q_gorenstein={quot.q_gorenstein}"


def _check_elliptic(combo):
    v = elliptic_tail_ages(*combo)
    return f"elliptic tail {combo}", v.satisfies_rt, f"min age {v.min_age}"


def _run_check(job):
    fn, arg = job
    try:
        return fn(*arg)
    except Exception as exc:  # a crash is a failed check, not an aborted run
        return f"{fn.__name__}{arg}", False, f"raised {type(exc).__name__}: {exc}"


def selftest_jobs():
    jobs = [(_check_cycle, (n,)) for n in range(2, 7)]
    jobs += [(_check_thick, (n,)) for n in range(2, 6)]
    jobs += [(_check_cycle_presentation, (n,)) for n in range(2, 5)]
    jobs.append((_check_non_q_gorenstein, ()))
    jobs += [(_check_elliptic, (c,)) for c in elliptic_tail_combinations()]
    return jobs


def cmd_selftest(args, out) -> int:
    jobs = selftest_jobs()
    workers = _threads()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_check, jobs))
    else:
        results = [_run_check(j) for j in jobs]
    failed = 0
    rows = []
    for name, ok, detail in results:
        failed += not ok
        rows.append({"check": name, "passed": ok, "detail": detail})
    _emit({"checks": rows, "failed": failed, "total": len(rows)}, args.format, out)
    return 0 if failed == 0 else 2


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cographic", description="Cographic toric rings and Reid-Tai checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, needs_input=True):
        sp = sub.add_parser(name, help=help_text)
        if needs_input:
            sp.add_argument("input", help="input file")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.set_defaults(func=fn)
        return sp

    sp = add("analyze", cmd_analyze, "invariants and singularity verdicts of a graph")
    sp.add_argument("--degree-bound", type=int, default=None,
                    help="also cross-check the invariant-ring oracle up to this degree")
    add("presentation", cmd_presentation, "generators and binomial relations")
    add("hilbert-basis", cmd_hilbert_basis, "Hilbert basis of a graph's cone or of a JSON cone")
    add("reid-tai", cmd_reid_tai, "cyclic quotient of a toric variety (JSON input)")
    sp = add("jacobian", cmd_jacobian, "local structure at a point given by a dual graph")
    sp.add_argument("--sigma", default=None, help="comma-separated edges, overrides the file")
    sp.add_argument("--tail", default=None, help="comma-separated tail vertices")
    sp.add_argument("--stab", choices=("trivial", "nontrivial"), default=None,
                    help="whether the stabilizer of the sheaf is trivial")
    add("selftest", cmd_selftest, "run the built-in golden checks", needs_input=False)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "degree_bound", None) is not None and args.degree_bound < 0:
        print("cographic: --degree-bound must be nonnegative", file=sys.stderr)
        return 1
    try:
        return args.func(args, out)
    except InternalConsistencyError as exc:
        print(f"cographic: internal consistency failure: {exc}", file=sys.stderr)
        return 2
    except (InputError, GraphError, ConeError, ReidTaiError, ValueError) as exc:
        print(f"cographic: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
