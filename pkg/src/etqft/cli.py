"""Command-line entry point: ``etqft <subcommand> ...``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from etqft.errors import EtqftError
from etqft.exactlinalg import RationalMatrix, compose, fstr, rank
from etqft.report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class CliConfig:
    command: str
    paths: list = field(default_factory=list)
    seed: int = 0
    samples: int = 50
    max_dim: int = 3
    fmt: str = "text"

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("--samples must be at least 1")
        if self.max_dim < 1:
            raise ValueError("--max-dim must be at least 1")


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS,
                     help="output format (default text)")

    p = _Parser(prog="etqft", description="2-vector spaces and 2d (extended) TQFTs, exactly.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate-2vect", parents=[fmt], help="check the internal-category axioms")
    s.add_argument("file")
    s = sub.add_parser("validate-algebra", parents=[fmt], help="check the Frobenius algebra laws")
    s.add_argument("file")
    s = sub.add_parser("check-axioms", parents=[fmt], help="semistrict monoidal conditions (i)-(viii)")
    s.add_argument("--max-dim", type=int, default=3)
    s.add_argument("--samples", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--conditions", default=None, help="comma-separated subset, e.g. i,iv,viii")
    s = sub.add_parser("check-2cat", parents=[fmt], help="strict 2-category laws and interchange")
    s.add_argument("--max-dim", type=int, default=4)
    s.add_argument("--samples", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)
    for name, what in (("eval", "evaluate a cobordism word"),
                       ("eval-extended", "evaluate a word in 2Vect")):
        s = sub.add_parser(name, parents=[fmt], help=what)
        s.add_argument("word")
        s.add_argument("--algebra", required=True)
    s = sub.add_parser("invariant", parents=[fmt], help="closed surface invariant")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--algebra", required=True)
    s = sub.add_parser("relations", parents=[fmt], help="run the cobordism relation suite")
    s.add_argument("--algebra", required=True)
    s = sub.add_parser("roundtrip", parents=[fmt], help="2-vector space -> chain complex -> back")
    s.add_argument("file")
    s = sub.add_parser("lift", parents=[fmt], help="write the discrete Frobenius object of an algebra")
    s.add_argument("--algebra", required=True)
    s.add_argument("--out", required=True, help="output directory")
    return p


def config_of(args) -> CliConfig:
    paths = [getattr(args, k) for k in ("file", "algebra", "out") if getattr(args, k, None)]
    return CliConfig(args.command, paths, seed=getattr(args, "seed", 0),
                     samples=getattr(args, "samples", 50), max_dim=getattr(args, "max_dim", 3),
                     fmt=args.format)


# -- output ----------------------------------------------------------------------

def _color() -> bool:
    return "NO_COLOR" not in os.environ and sys.stdout.isatty()


def _emit_report(rep: Report, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(rep.to_json(), indent=1))
    else:
        print(rep.table(color=_color()))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _matrix_text(m: RationalMatrix) -> str:
    return "[" + ", ".join("[" + ", ".join(fstr(x) for x in m.row(i)) + "]"
                           for i in range(m.rows)) + "]"


def _read_json(path: str):
    return json.loads(Path(path).read_text())


# -- subcommands --------------------------------------------------------------

def _validate_2vect(args) -> int:
    from etqft.twovect import from_json, validate

    return _emit_report(validate(from_json(_read_json(args.file))), args.format)


def _validate_algebra(args) -> int:
    from etqft.cob.frobenius import load_algebra, validate_frobenius

    return _emit_report(validate_frobenius(load_algebra(args.file)), args.format)


def _check_axioms(args) -> int:
    from etqft.monoidal import CONDITIONS, MonoidalContext, check_semistrict

    conditions = None
    if args.conditions:
        conditions = [c.strip() for c in args.conditions.split(",") if c.strip()]
        unknown = [c for c in conditions if c not in CONDITIONS]
        if unknown:
            raise _Usage(f"unknown condition(s): {', '.join(unknown)}; choose from {','.join(CONDITIONS)}")
    ctx = MonoidalContext(max_dim=args.max_dim, samples=args.samples, seed=args.seed)
    return _emit_report(check_semistrict(ctx, conditions), args.format)


def _check_2cat(args) -> int:
    from etqft.twocells import check_strict_2category

    return _emit_report(check_strict_2category(args.samples, args.seed, args.max_dim), args.format)


def _eval(args) -> int:
    from etqft.cob.frobenius import load_algebra
    from etqft.cob.syntax import parse_cob, to_text, typecheck
    from etqft.cob.tqft import evaluate

    term = parse_cob(args.word)
    src, tgt = typecheck(term)
    m = evaluate(term, load_algebra(args.algebra))
    if args.format == "json":
        print(json.dumps({"word": to_text(term), "src": src, "tgt": tgt, "matrix": m.to_json()}))
    else:
        print(_matrix_text(m))
    return EXIT_OK


def _load_frobenius_object(spec: str):
    from etqft.cob.frobenius import from_json, load_algebra
    from etqft.extended import frobenius_object_from_json, lift_discrete

    path = Path(spec)
    if path.is_file():
        obj = json.loads(path.read_text())
        if "carrier" in obj:
            return frobenius_object_from_json(obj, path.parent)
        return lift_discrete(from_json(obj))
    return lift_discrete(load_algebra(spec))


def _eval_extended(args) -> int:
    from etqft.cob.syntax import parse_cob, to_text, typecheck
    from etqft.extended import evaluate_extended

    term = parse_cob(args.word)
    typecheck(term)
    v = evaluate_extended(term, _load_frobenius_object(args.algebra))
    F = v.functor
    if args.format == "json":
        print(json.dumps({"word": to_text(term), "src": v.src, "tgt": v.tgt,
                          "F0": F.F0.to_json(), "F1": F.F1.to_json()}))
    else:
        print(f"{to_text(term)}: T^{v.src} -> T^{v.tgt}")
        print(f"F0 = {_matrix_text(F.F0)}")
        print(f"F1 = {_matrix_text(F.F1)}")
    return EXIT_OK


def _invariant(args) -> int:
    from etqft.cob.frobenius import load_algebra
    from etqft.cob.tqft import closed_invariant

    if args.genus < 0:
        raise _Usage("--genus must be non-negative")
    value = closed_invariant(args.genus, load_algebra(args.algebra))
    if args.format == "json":
        print(json.dumps({"genus": args.genus, "value": fstr(value)}))
    else:
        print(fstr(value))
    return EXIT_OK


def _relations(args) -> int:
    from etqft.cob.frobenius import load_algebra
    from etqft.cob.tqft import relation_suite

    return _emit_report(relation_suite(load_algebra(args.algebra)), args.format)


def _roundtrip(args) -> int:
    from etqft.twocells import InternalFunctor, validate_functor
    from etqft.twovect import (
        from_chain_complex,
        from_json,
        roundtrip_iso,
        to_chain_complex,
        validate,
    )

    tv = from_json(_read_json(args.file))
    rep = validate(tv)
    rep.title = f"round trip of {args.file}"
    if rep.passed:
        cc = to_chain_complex(tv)
        back = from_chain_complex(cc)
        rep.record("chain complex recovered", to_chain_complex(back) == cc,
                   "d differs after the round trip")
        pair = (tv.c0, tv.c1 - rank(tv.s))
        rep.record("invariant pair", pair == (back.c0, back.c1 - rank(back.s)),
                   f"(c0, dim ker s) = {pair} before, different after")
        phi, phi_inv = roundtrip_iso(tv)
        iso = InternalFunctor(back, tv, RationalMatrix.identity(tv.c0), phi)
        fr = validate_functor(iso)
        rep.record("isomorphism", fr.passed and compose(phi_inv, phi) == RationalMatrix.identity(back.c1)
                   and compose(phi, phi_inv) == RationalMatrix.identity(tv.c1),
                   "comparison functor is not an invertible internal functor")
        if args.format == "text":
            print(f"d = {_matrix_text(cc.d)}  ({cc.v1} -> {cc.v0})")
    return _emit_report(rep, args.format)


def _lift(args) -> int:
    from etqft.cob.frobenius import load_algebra
    from etqft.extended import lift_discrete, save_frobenius_object, validate_frobenius_object

    fo = lift_discrete(load_algebra(args.algebra))
    path = save_frobenius_object(fo, args.out)
    rep = validate_frobenius_object(fo)
    if args.format == "text":
        print(f"wrote {path}")
    return _emit_report(rep, args.format)


COMMANDS = {
    "validate-2vect": _validate_2vect,
    "validate-algebra": _validate_algebra,
    "check-axioms": _check_axioms,
    "check-2cat": _check_2cat,
    "eval": _eval,
    "eval-extended": _eval_extended,
    "invariant": _invariant,
    "relations": _relations,
    "roundtrip": _roundtrip,
    "lift": _lift,
}


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config_of(args)
        return COMMANDS[args.command](args)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (EtqftError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
