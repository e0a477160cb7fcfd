"""Command line interface: ``midealkit <command> ...``.

Exit status is 0 on success, 1 on usage or input errors and 2 when a
verification run (or a replay) reports a counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import classify as cl
from . import complement as cm
from . import verifier
from .errors import MidealError, SpecParseError
from .lattice import StructuredLattice, TableLattice, enumerate_ideals, hasse, to_dot
from .ringspec import build, parse_ideal, ring_name

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE = 0, 1, 2

_FLAGS = (
    ("essential", "ess"),
    ("relatively_irreducible", "rel.irr"),
    ("m_ideal", "M"),
    ("minimal", "min"),
    ("maximal", "max"),
    ("essentially_closed", "ess.cl"),
    ("m_closed", "M.cl"),
    ("direct_summand", "summand"),
)


def _lattice(args):
    return enumerate_ideals(build(args.spec, args.cap))


def _ideal(L, text):
    return L.find(parse_ideal(L.ring, text))


def _emit(obj):
    print(json.dumps(obj, sort_keys=True))


def _row(rep) -> str:
    marks = "  ".join(f"{short}={'y' if getattr(rep, name) else 'n'}" for name, short in _FLAGS)
    return f"{rep.label:<28} {marks}"


def cmd_ideals(args) -> int:
    L = _lattice(args)
    for i in L:
        rep = cl.classify(L, i, method=args.method, reading=args.reading)
        if args.json:
            _emit({"ring": args.spec, "ideal": verifier.encode_ideal(L, i), "report": rep.to_dict(L)})
        else:
            print(_row(rep))
    if not args.json:
        print(f"{len(L)} ideals in {ring_name(L.ring)}")
    return EXIT_OK


def cmd_classify(args) -> int:
    L = _lattice(args)
    i = _ideal(L, args.ideal)
    rep = cl.classify(L, i, method=args.method, reading=args.reading)
    if args.json:
        _emit({"ring": args.spec, "ideal": verifier.encode_ideal(L, i), "report": rep.to_dict(L)})
        return EXIT_OK
    if isinstance(L, TableLattice):
        print(f"ideal generated by {args.ideal}: {L.label(i)} elements {[int(x) for x in L.elements(i)]}")
    print(f"ideal {rep.label} in {ring_name(L.ring)}")
    for name, _ in _FLAGS:
        print(f"  {name:<24} {str(getattr(rep, name)).lower()}")
    print(f"  method {rep.method}, reading {rep.reading}" + (" (readings diverge)" if rep.reading_divergence else ""))
    for name, w in rep.to_dict(L)["witnesses"].items():
        if w:
            print(f"  witness[{name}]: {', '.join(w)}")
    return EXIT_OK


def cmd_complement(args) -> int:
    L = _lattice(args)
    n = _ideal(L, args.ideal)
    q = _ideal(L, args.containing) if args.containing is not None else None
    res = cm.m_complement_containing(L, n, q)
    if args.all:
        res.all_complements = cm.all_m_complements(L, n)
    if args.json:
        _emit({"ring": args.spec, "ideal": verifier.encode_ideal(L, n), "result": res.to_dict(L)})
        return EXIT_OK
    d = res.to_dict(L)
    print(f"M-complement of {d['target']} containing {d['constraint']}: {d['complement']}")
    print(f"  meet {d['meet']}, join {d['join']} (M-ideal: {str(d['join_is_m_ideal']).lower()})")
    if args.all:
        print("  all M-complements: " + "; ".join(d["all_complements"]))
    return EXIT_OK


def cmd_lattice(args) -> int:
    L = _lattice(args)
    flags = {i: (cl.is_m_ideal_oracle(L, i).holds, cl.is_essential(L, i).holds) for i in L}
    if args.format == "json":
        nodes = []
        for i in L:
            node = {"index": i, "label": L.label(i), "size": L.cardinality(i),
                    "mideal": flags[i][0], "essential": flags[i][1]}
            if isinstance(L, StructuredLattice):
                node["exponents"] = list(L.ideals[i])
                node["generators"] = list(L.generators(i))
            nodes.append(node)
        _emit({"ring": args.spec, "ideals": nodes, "edges": [list(e) for e in hasse(L)]})
        return EXIT_OK
    attrs = {}
    for i, (m, e) in flags.items():
        a = {}
        if m:
            a.update(mideal="true", style="filled", fillcolor="lightblue")
        if e:
            a.update(essential="true", peripheries="2")
        attrs[i] = a
    sys.stdout.write(to_dot(L, attrs, name=args.spec))
    return EXIT_OK


def _parse_params(items):
    params = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise MidealError(f"parameter {item!r} is not of the form key=value")
        params[key] = json.loads(value)
    return params


def cmd_verify(args) -> int:
    names = list(verifier.SUITES) if args.suite == "all" else [args.suite]
    params = _parse_params(args.param)
    if params and len(names) > 1:
        raise MidealError("--param needs a single suite")
    ok = True
    out = open(args.out, "w") if args.out else None
    try:
        for name in names:
            rep = verifier.run_suite(name, params, profile=args.profile, workers=args.workers, cap=args.cap)
            ok &= rep.passed
            line = rep.to_json()
            if out:
                out.write(line + "\n")
            if args.json:
                print(line)
            else:
                status = "PASS" if rep.passed else f"FAIL ({len(rep.counterexamples)} counterexamples)"
                print(f"{name:<22} {status:<28} cases={rep.cases} elapsed_ms={rep.elapsed_ms}")
                for cx in rep.counterexamples[: args.show]:
                    print("    " + json.dumps(cx, sort_keys=True))
    finally:
        if out:
            out.close()
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


def cmd_replay(args) -> int:
    if args.line == "-":
        lines = [x for x in sys.stdin.read().splitlines() if x.strip()]
    else:
        lines = [args.line]
    still_failing = False
    for line in lines:
        for res in verifier.replay(line, args.cap):
            if res.check == "classify":
                still_failing |= not res.reproduced
                status = "reproduced" if res.reproduced else "differs"
                payload = {"check": "classify", "ring": res.ring, "status": status}
            else:
                still_failing |= res.mismatch
                status = "counterexample" if res.mismatch else "passes"
                payload = {"check": res.check, "ring": res.ring, "status": status,
                           "reproduced": res.reproduced, "expected": res.expected, "actual": res.actual}
            if args.json:
                _emit(payload)
            else:
                print(f"{payload['check']} on {res.ring}: {status}")
    return EXIT_COUNTEREXAMPLE if still_failing else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="midealkit", description="Ideal lattices and M-ideals of finite rings.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=None, help="table size cap (default: MIDEALKIT_CAP or 4096)")
    sub = p.add_subparsers(dest="command", required=True)

    def predicate_opts(sp):
        sp.add_argument("--method", default="auto", choices=["auto", "closed-form", "dichotomy", "oracle"])
        sp.add_argument("--reading", default="ring", choices=["ring", "ambient"],
                        help="how to read relative notions inside an ideal")

    sp = sub.add_parser("ideals", parents=[common], help="list every ideal with its classification")
    sp.add_argument("spec")
    predicate_opts(sp)
    sp.set_defaults(func=cmd_ideals)

    sp = sub.add_parser("classify", parents=[common], help="classify one ideal, with witnesses")
    sp.add_argument("spec")
    sp.add_argument("ideal")
    predicate_opts(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("complement", parents=[common], help="find M-complements of an ideal")
    sp.add_argument("spec")
    sp.add_argument("ideal")
    sp.add_argument("--containing", metavar="Q", help="ideal the complement must contain")
    sp.add_argument("--all", action="store_true", help="also list every M-complement")
    sp.set_defaults(func=cmd_complement)

    sp = sub.add_parser("lattice", parents=[common], help="Hasse diagram of the ideal lattice")
    sp.add_argument("spec")
    sp.add_argument("--format", default="dot", choices=["dot", "json"])
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("verify", parents=[common], help="run a verification suite (or 'all')")
    sp.add_argument("suite", choices=["all", *verifier.SUITES])
    sp.add_argument("--profile", default="quick", choices=["quick", "full"])
    sp.add_argument("--param", action="append", metavar="KEY=VALUE", help="override a suite parameter")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", help="also write JSON-lines reports to this file")
    sp.add_argument("--show", type=int, default=3, help="counterexamples to print per suite")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("replay", parents=[common], help="rerun a report, counterexample or classify line")
    sp.add_argument("line", help="a JSON line, or - to read lines from stdin")
    sp.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "func", None) is cmd_lattice:
        args.json = args.json or args.format == "json"
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MidealError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
