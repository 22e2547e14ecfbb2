"""Command-line interface: ``latkit <command> ...``.

Exit status is 0 on success, 1 when ``verify-paper`` reports a failed claim
and 2 on bad input (unreadable files, unknown labels, malformed terms).
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import congruences as con
from . import covers as cv
from . import enumeration as en
from . import io
from . import kdfamily as kd
from . import seeds as sd
from . import terms as tm
from .core import Lattice
from .errors import LatkitError
from .verify import verify_all

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _labels(s: str) -> list[str]:
    return [x.strip() for x in s.split(",") if x.strip()]


def _emit(args, text_lines, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def _verdict_json(v: tm.Verdict, L: Lattice) -> dict:
    ce = None
    if v.counterexample is not None:
        ce = {}
        for k, val in v.counterexample.items():
            if isinstance(val, str):
                ce[k] = val
            elif isinstance(val, (tuple, list, frozenset, set)):
                ce[k] = [L.label(x) for x in sorted(val)]
            else:
                ce[k] = L.label(val)
    return {"holds": v.holds, "counterexample": ce}


# -- commands -----------------------------------------------------------

def cmd_validate(args) -> int:
    L = io.read_lattice(args.file)
    J = sorted(L.join_irreducibles)
    lines = [f"valid lattice {L.name or args.file}: {L.n} elements, {len(L.covers)} covers",
             f"join-irreducibles: {L.format_set(J)}",
             f"meet-irreducibles: {L.format_set(L.meet_irreducibles)}"]
    _emit(args, lines, {"name": L.name, "elements": L.n, "covers": len(L.covers),
                        "join_irreducibles": [L.label(x) for x in J],
                        "meet_irreducibles": [L.label(x) for x in sorted(L.meet_irreducibles)]})
    return EXIT_OK


def _props(L: Lattice, args) -> list[tuple[str, tm.Verdict]]:
    out = []
    if args.ndistr is not None:
        out.append((f"n-distributive({args.ndistr})", tm.is_n_distributive(L, args.ndistr)))
    if args.modular:
        out.append(("modular", tm.is_modular(L)))
    if args.distributive:
        out.append(("distributive", tm.is_distributive(L)))
    if args.jsd:
        out.append(("join-semidistributive", tm.is_join_semidistributive(L)))
    if args.sdj is not None:
        out.append((f"sdj({args.sdj})", tm.holds_sdj(L, args.sdj)))
    if args.sentence:
        out.append(("sentence", tm.holds_sentence_1storder(L)))
    return out


def cmd_props(args) -> int:
    L = io.read_lattice(args.file)
    if not any([args.ndistr is not None, args.modular, args.distributive, args.jsd,
                args.sdj is not None, args.sentence]):
        args.modular = args.distributive = args.jsd = True
    results = _props(L, args)
    _emit(args, [f"{name}: {v.describe(L)}" for name, v in results],
          {name: _verdict_json(v, L) for name, v in results})
    return EXIT_OK


def cmd_covers(args) -> int:
    L = io.read_lattice(args.file)
    p = L.index(args.element)
    kind = args.kind or "minimal"
    lines, payload = [], {"element": L.label(p), "kind": kind}
    if args.refine is not None:
        E = L.indices(_labels(args.refine))
        given = cv.classify_cover(L, p, E)
        refined = cv.refine_to_tight(L, p, E) if kind in ("tight", "irredundant") else cv.refine_to_minimal(L, p, E)
        result = cv.classify_cover(L, p, refined)
        lines = [f"given: {given.format(L)}", f"refined: {result.format(L)}"]
        payload.update(given={"members": [L.label(x) for x in sorted(given.members)], "kind": given.kind},
                       refined={"members": [L.label(x) for x in sorted(result.members)], "kind": result.kind})
    else:
        found = {"minimal": cv.minimal_join_covers, "tight": cv.tight_covers,
                 "irredundant": cv.irredundant_covers}[kind](L, p)
        items = [cv.classify_cover(L, p, E) for E in found]
        lines = [c.format(L) for c in items]
        payload["covers"] = [{"members": [L.label(x) for x in sorted(c.members)], "kind": c.kind}
                             for c in items]
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_congruences(args) -> int:
    L = io.read_lattice(args.file)
    lines, payload = [], {}
    if args.principal is not None:
        pair = _labels(args.principal)
        if len(pair) != 2:
            raise InputError("--principal expects two labels: x,y")
        theta = con.principal_congruence(L, *pair)
        lines.append(f"con({pair[0]},{pair[1]}) = {theta.format(L)}")
        payload["principal"] = theta.format(L)
    if args.si:
        si, mono = con.is_subdirectly_irreducible(L)
        lines.append(f"subdirectly irreducible: {'yes' if si else 'no'}"
                     + (f", monolith {mono.format(L)}" if si else ""))
        payload["si"] = si
        payload["monolith"] = mono.format(L) if si else None
    if args.principal is None and not args.si:
        cons = con.all_congruences(L)
        lines = [c.format(L) for c in cons] + [f"{len(cons)} congruences"]
        payload["congruences"] = [c.format(L) for c in cons]
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_seeds(args) -> int:
    L = io.read_lattice(args.file)
    sigma = L.indices(_labels(args.subset))
    S = sd.span(L, sigma)
    lines = [f"span: {S.format()}"]
    payload = {"span": [L.label(x) for x in S.members]}
    checks = [("pre-seed", args.pre, sd.is_pre_seed), ("quasi-seed", args.quasi, sd.is_quasi_seed),
              ("seed", args.seed, sd.is_seed)]
    if not (args.pre or args.quasi or args.seed):
        checks = [(n, True, f) for n, _, f in checks]
    for name, on, fn in checks:
        if on:
            v = fn(L, sigma)
            lines.append(f"{name}: {v.describe(L)}")
            payload[name] = _verdict_json(v, L)
    if args.strong:
        v = sd.is_strongly_spatial(L)
        lines.append(f"strongly spatial: {v.describe(L)}")
        payload["strongly spatial"] = _verdict_json(v, L)
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_kd(args) -> int:
    D = io.read_lattice(args.dist)
    K = kd.build_KD(D)
    text = io.dumps(K.lattice)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _check(job):
    pred, L = job
    return en.predicate(pred)(L)


def cmd_enumerate(args) -> int:
    lattices = list(en.enumerate_lattices(args.size, max_size=args.max_size))
    if args.filter:
        en.predicate(args.filter)  # reject unknown names before doing any work
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as ex:
                keep = list(ex.map(_check, [(args.filter, L) for L in lattices], chunksize=8))
        else:
            test = en.predicate(args.filter)
            keep = [test(L) for L in lattices]
        lattices = [L for L, k in zip(lattices, keep) if k]
    if args.emit_dir:
        out = Path(args.emit_dir)
        out.mkdir(parents=True, exist_ok=True)
        for L in lattices:
            io.write_lattice(L, out / f"{L.name}.json")
    if args.count_only:
        _emit(args, [str(len(lattices))], {"size": args.size, "count": len(lattices)})
    else:
        lines = [f"{L.name}: " + " ".join(f"{L.label(a)}<{L.label(b)}" for a, b in L.covers) for L in lattices]
        _emit(args, lines, {"size": args.size, "lattices": [io.to_dict(L) for L in lattices]})
    return EXIT_OK


def cmd_refute(args) -> int:
    r = tm.refute(args.lhs, args.rhs, n=args.ndistr, max_size=args.max_size)
    lines = [r.describe()]
    payload = {"found": r.found, "searched": r.searched, "max_size": r.max_size}
    if r.found:
        lines.append(io.dumps(r.lattice).rstrip())
        payload["lattice"] = io.to_dict(r.lattice)
        payload["assignment"] = {k: r.lattice.label(v) for k, v in r.assignment.items()}
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_dot(args) -> int:
    sys.stdout.write(io.to_dot(io.read_lattice(args.file)))
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    report = verify_all(max_size=args.max_size, seed=args.rng_seed, jobs=args.jobs)
    _emit(args, report.text().splitlines(), report.to_json())
    return report.exit_code


# -- parser -------------------------------------------------------------

def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("text", "json"), default=d("text"), help="output format")
    parser.add_argument("--jobs", type=int, default=d(1), help="worker processes for long scans")
    parser.add_argument("--rng-seed", type=int, default=d(0), help="seed for randomized checks")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latkit", description="Finite lattice toolkit.")
    _common(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        _common(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check a lattice file")
    p.add_argument("file")

    p = add("props", cmd_props, "identities and quasi-identities")
    p.add_argument("file")
    p.add_argument("--ndistr", type=int, metavar="N")
    p.add_argument("--modular", action="store_true")
    p.add_argument("--distributive", action="store_true")
    p.add_argument("--jsd", action="store_true", help="join-semidistributivity")
    p.add_argument("--sdj", type=int, metavar="N")
    p.add_argument("--sentence", action="store_true")

    p = add("covers", cmd_covers, "join-covers of an element")
    p.add_argument("file")
    p.add_argument("--element", required=True, metavar="LABEL")
    g = p.add_mutually_exclusive_group()
    for k in ("minimal", "tight", "irredundant"):
        g.add_argument(f"--{k}", dest="kind", action="store_const", const=k)
    p.add_argument("--refine", metavar="a,b,c", help="refine this cover instead of listing covers")

    p = add("congruences", cmd_congruences, "congruence lattice")
    p.add_argument("file")
    p.add_argument("--si", action="store_true")
    p.add_argument("--principal", metavar="x,y")

    p = add("seeds", cmd_seeds, "pre-seed, quasi-seed and seed tests")
    p.add_argument("file")
    p.add_argument("--subset", required=True, metavar="a,b,c")
    p.add_argument("--pre", action="store_true")
    p.add_argument("--quasi", action="store_true")
    p.add_argument("--seed", action="store_true")
    p.add_argument("--strong", action="store_true")

    p = add("kd", cmd_kd, "build K(D) from a distributive lattice D")
    p.add_argument("--dist", required=True, metavar="FILE")
    p.add_argument("-o", "--output", metavar="FILE")

    p = add("enumerate", cmd_enumerate, "all lattices of a given size")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--filter", metavar="P", help="ndistr:N, modular, distributive, jsd, si, sdj:N")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--emit-dir", metavar="D")
    p.add_argument("--max-size", type=int, default=en.DEFAULT_SIZE,
                   help=f"size guard (default {en.DEFAULT_SIZE}, at most {en.MAX_SIZE})")

    p = add("refute", cmd_refute, "search the catalog for a counterexample")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--ndistr", type=int, metavar="N", help="only search n-distributive lattices")
    p.add_argument("--max-size", type=int, required=True, metavar="K")

    p = add("dot", cmd_dot, "Hasse diagram in DOT")
    p.add_argument("file")

    p = add("verify-paper", cmd_verify_paper, "run the finite verification suite")
    p.add_argument("--max-size", type=int, default=None, metavar="N")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LatkitError, InputError, OSError, ValueError) as exc:
        print(f"latkit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
