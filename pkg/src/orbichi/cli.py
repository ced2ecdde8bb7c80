"""Command-line front end: ``orbichi chi|verify|stratify|quotient|corpus``.

Exit codes: 0 success, 1 parse error, 2 validation or verification
failure, 3 precondition violation.
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .action import SimplicialAction, close_group, covering_multiplicativity_check, quotient, regularize
from .complex import euler_char_top
from .documents import (
    action_to_dict,
    dumps,
    dumps_action,
    orbifold_to_dict,
    read_action,
    read_orbifold,
)
from .errors import (
    BoundaryNotInvariant,
    EvenDimension,
    HasBoundary,
    InvalidOrbifold,
    NonTerminating,
    NotBijection,
    NotRegular,
    NotSimplicial,
    ParseError,
    UnknownEntry,
)
from .orbifold import fmt_rational, orbifold_boundary, require_valid
from .strata import complete_chains, minimal_strata, strata_poset, stratify
from .verify import check_main_theorem, check_satake, prove_by_decomposition, report_lines

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_PRECONDITION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _fail(code, message):
    print(f"error: {message}", file=sys.stderr)
    return code


def _load(path):
    O, meta = read_orbifold(path)
    if O.name is None:
        O.name = Path(path).stem
    require_valid(O)
    return O


def cmd_chi(args):
    O = _load(args.input)
    print(fmt_rational(O.chi))
    return EXIT_OK


def _theorem_lines(O):
    chi = O.chi
    chi_b = orbifold_boundary(O).chi
    rep = check_main_theorem(O)
    status = "pass" if rep.passed else "FAIL"
    return rep.passed, [
        f"chi: {fmt_rational(chi)}",
        f"chi(boundary): {fmt_rational(chi_b)}",
        f"theorem: {fmt_rational(chi)} = 1/2 * {fmt_rational(chi_b)} {status}",
    ]


def _satake_lines(O):
    rep = check_satake(O)
    status = "pass" if rep.passed else "FAIL"
    return rep.passed, [f"satake: {fmt_rational(O.chi)} = 0 {status}"]


def cmd_verify(args):
    O = _load(args.input)
    if O.dim % 2 == 0:
        raise EvenDimension(f"dimension {O.dim} is even; the theorem concerns odd dimensions")
    lines = [f"subject: {O.name}"]
    ok = True
    if args.mode in ("theorem", "all"):
        passed, more = _theorem_lines(O)
        ok &= passed
        lines += more
    if args.mode == "satake" or (args.mode == "all" and not O.boundary_faces):
        passed, more = _satake_lines(O)
        ok &= passed
        lines += more
    if args.mode in ("decompose", "all"):
        rep = prove_by_decomposition(O)
        ok &= rep.passed
        lines.append(f"decomposition steps: {len(rep.ledger)}")
        lines += report_lines(rep)[1:-1]
    lines.append("result: " + ("pass" if ok else "FAIL"))
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_INVALID


def stratify_lines(O, include_regular=False):
    strata = stratify(O)
    P = strata_poset(strata)
    minimal = {s.id for s in minimal_strata(P)}
    chains = complete_chains(P, singular_only=not include_regular)
    lines = [f"strata: {len(strata)}"]
    for s in strata:
        lines.append(f"stratum {s.id} dim {s.dim} order {s.label.order} kind {s.label.kind} "
                     f"cells {len(s.cells)} minimal {'yes' if s.id in minimal else 'no'}")
    lines.append(f"hasse: {len(P.hasse)}")
    for i, j in sorted(P.hasse):
        lines.append(f"{i} < {j}")
    lines.append(f"chains: {len(chains)}")
    for ch in chains:
        lines.append(" < ".join(str(s.id) for s in ch))
    return lines


def cmd_stratify(args):
    O = _load(args.input)
    print("\n".join(stratify_lines(O, args.include_regular)))
    return EXIT_OK


def cmd_quotient(args):
    M, meta, gens = read_action(args.action)
    require_valid(M)
    if M.labels:
        return _fail(EXIT_PRECONDITION, "the base of an action must be a manifold (no labels)")
    group = close_group(gens, M.complex.vertices)
    A = regularize(SimplicialAction(group, M.complex))
    name = meta.get("name")
    Q = quotient(A, M.boundary_faces, name=f"{name}_quotient" if name else None)
    Path(args.output).write_text(dumps(orbifold_to_dict(Q)), encoding="utf-8")
    chi_m = Fraction(euler_char_top(M.complex))
    ok = covering_multiplicativity_check(A)
    print(f"order: {group.order}")
    print(f"subdivisions: {A.subdivisions}")
    print(f"chi(M): {fmt_rational(chi_m)}")
    print(f"chi(M/G): {fmt_rational(Q.chi)}")
    print(f"multiplicativity: {fmt_rational(chi_m)} = {group.order} * {fmt_rational(Q.chi)} "
          + ("pass" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_INVALID


def cmd_corpus(args):
    from .corpus import all_entries, get_entry

    if args.list:
        for e in all_entries():
            chi = fmt_rational(e.expected_chi) if e.expected_chi is not None else "-"
            print(f"{e.name} {chi}")
        return EXIT_OK
    name, outdir = args.emit
    e = get_entry(name)
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    meta = {"name": e.name, "provenance": e.provenance}
    if e.expected_chi is not None:
        meta["expected_chi"] = fmt_rational(e.expected_chi)
    path = out / f"{e.name}.json"
    path.write_text(dumps(orbifold_to_dict(e.orbifold, meta)), encoding="utf-8")
    print(path)
    if e.action is not None:
        apath = out / f"{e.name}.action.json"
        apath.write_text(dumps_action(action_to_dict(e.action, {"name": e.name})), encoding="utf-8")
        print(apath)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="orbichi", description="Exact Euler characteristics of triangulated orbifolds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("chi", help="print the orbifold Euler characteristic as p/q")
    s.add_argument("input")
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("verify", help="check chi = 1/2 chi(boundary) and related identities")
    s.add_argument("input")
    s.add_argument("--mode", choices=["theorem", "satake", "decompose", "all"], default="theorem")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("stratify", help="list strata, Hasse edges and complete chains")
    s.add_argument("input")
    s.add_argument("--include-regular", action="store_true",
                   help="keep regular strata when forming complete chains")
    s.set_defaults(func=cmd_stratify)

    s = sub.add_parser("quotient", help="write the quotient orbifold of an action document")
    s.add_argument("action")
    s.add_argument("output")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("corpus", help="list or export built-in examples")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit", nargs=2, metavar=("NAME", "DIR"))
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        return _fail(EXIT_PARSE, str(exc))
    except InvalidOrbifold as exc:
        print("error: invalid orbifold", file=sys.stderr)
        for v in exc.violations:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_INVALID
    except (NotBijection, NotSimplicial, NonTerminating) as exc:
        return _fail(EXIT_INVALID, str(exc))
    except (EvenDimension, HasBoundary, BoundaryNotInvariant, NotRegular) as exc:
        return _fail(EXIT_PRECONDITION, str(exc))
    except UnknownEntry as exc:
        return _fail(EXIT_PRECONDITION, f"unknown corpus entry {exc.args[0]!r}")


if __name__ == "__main__":
    sys.exit(main())
