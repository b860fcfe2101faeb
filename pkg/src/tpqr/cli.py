"""Command-line front end.  Every command prints one JSON document.

Exit codes: 0 success, 1 domain error or failed check, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from . import __version__, cusp, fukaya, hms, picard, sheafalg
from .lattice import IntMatrix

SCHEMA = "tpqr-report/1"
MAX_SAFE_INT = 2 ** 53 - 1
SOFT_LIMIT = 50


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) <= MAX_SAFE_INT else str(obj)
    if isinstance(obj, Fraction):
        return _jsonable(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, IntMatrix):
        return _jsonable(obj.tolist())
    if isinstance(obj, picard.DivisorClass):
        return _jsonable(list(obj.coefficients))
    if isinstance(obj, picard.ChernCharacter):
        return _jsonable(list(obj.vector()))
    if isinstance(obj, cusp.CycleSeq):
        return _jsonable(list(obj.entries))
    if is_dataclass(obj):
        return _jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def render(doc: dict) -> str:
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _config(args) -> dict:
    out = {"command": args.command}
    for key in ("p", "q", "r", "side", "suite", "word", "cycle"):
        if getattr(args, key, None) is not None:
            out[key] = getattr(args, key)
    return out


def _triple(args):
    return args.p, args.q, args.r


def _dims_list(alg) -> list:
    return [{"source": x, "target": y, "dims": {str(d): k for d, k in dims.items()}}
            for (x, y), dims in alg.dim_table().items()]


def cmd_build(args) -> tuple[dict, int]:
    p, q, r = _triple(args)
    alg = (fukaya.build_directed_algebra if args.side == "fukaya" else sheafalg.build_sheaf_algebra)(p, q, r)
    basis = [{"label": e.label, "source": e.source, "target": e.target, "degree": e.degree}
             for x in alg.objects for y in alg.objects for e in (alg.elements[l] for l in alg.basis(x, y))]
    products = [{"left": f, "right": g, "value": dict(sorted(alg.multiply(f, g).items()))}
                for f, g in alg.composable_pairs() if alg.multiply(f, g)]
    return {"objects": list(alg.objects), "graded_dims": _dims_list(alg), "basis": basis,
            "products": products, "total_dim": alg.total_dim()}, 0


def cmd_check(args) -> tuple[dict, int]:
    names = list(hms.SUITES) if args.suite == "all" else [args.suite]
    checks = [hms.SUITES[n](*_triple(args)) for n in names]
    ok = all(c.ok for c in checks)
    return {"checks": [{"name": c.name, "status": "pass" if c.ok else "fail", "details": c.details}
                       for c in checks], "status": "pass" if ok else "fail"}, 0 if ok else 1


def cmd_mutate(args) -> tuple[dict, int]:
    state = hms.ExceptionalCollectionState.from_triple(*_triple(args))
    state = hms.apply_word(state, args.word or "")
    return {"word": hms.parse_word(args.word or ""), "coordinates": state.classes,
            "chern_characters": state.chern_characters(), "euler_matrix": state.euler}, 0


def cmd_k0(args) -> tuple[dict, int]:
    res = hms.k0_localization(*_triple(args))
    twist = hms.k0_localization(*_triple(args), pipeline="twist")
    return {"free_rank": res.free_rank, "torsion": res.torsion, "matrix": res.matrix,
            "pipelines_agree": res.invariants == twist.invariants}, 0


def _cycle_report(c: cusp.CycleSeq) -> dict:
    d = cusp.dual_cycle(c)
    return {"cycle": c, "charge": cusp.charge(c), "dual": d, "dual_charge": cusp.charge(d),
            "length_identity": len(d) - len(c) == sum(b - 3 for b in c.entries)}


def cmd_dual(args) -> tuple[dict, int]:
    if not args.cycle:
        raise UsageError("dual requires --cycle")
    try:
        entries = tuple(int(t) for t in args.cycle.split(","))
    except ValueError as exc:
        raise UsageError(f"--cycle must be comma-separated integers: {args.cycle!r}") from exc
    return _cycle_report(cusp.CycleSeq(entries)), 0


def cmd_triangle(args) -> tuple[dict, int]:
    return _cycle_report(cusp.triangle_cycle(*_triple(args))), 0


def cmd_classes(args) -> tuple[dict, int]:
    p, q, r = _triple(args)
    names = picard.named_classes(p, q, r)
    ledger = hms.vanishing_cycle_classes(p, q, r)
    return {"named_classes": {k: {"coefficients": v, "self_intersection": picard.intersection(v, v)}
                              for k, v in names.items()},
            "exceptional_characters": {str(o): c for o, c in zip(picard.exceptional_objects(p, q, r),
                                                                picard.exceptional_characters(p, q, r))},
            **ledger}, 0


COMMANDS = {"build": cmd_build, "check": cmd_check, "mutate": cmd_mutate, "k0": cmd_k0,
            "dual": cmd_dual, "triangle": cmd_triangle, "classes": cmd_classes}


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tpqr", description="Exact checks for the T_{p,q,r} mirror correspondence.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, triple=True):
        sp = sub.add_parser(name, help=help_text)
        if triple:
            for flag in ("--p", "--q", "--r"):
                sp.add_argument(flag, type=_positive, default=3)
        sp.add_argument("--out", help="write JSON here instead of stdout")
        return sp

    add("build", "dump an algebra").add_argument("--side", choices=("fukaya", "sheaf"), default="fukaya")
    add("check", "run verification suites").add_argument(
        "--suite", choices=tuple(hms.SUITES) + ("all",), default="all")
    add("mutate", "mutate the exceptional collection").add_argument(
        "--word", default="", help="comma-separated signed slots; positive = left")
    add("k0", "cokernel of I - S")
    add("dual", "dual cusp cycle", triple=False).add_argument("--cycle", required=True)
    add("triangle", "cycle of the triangle singularity")
    add("classes", "named divisor classes and Lagrangian K-classes")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if any(getattr(args, k, 0) > SOFT_LIMIT for k in ("p", "q", "r")):
        print(f"warning: chains longer than {SOFT_LIMIT} grow the basis quadratically", file=sys.stderr)
    doc = {"schema": SCHEMA, "version": __version__, "config": _config(args)}
    try:
        result, code = COMMANDS[args.command](args)
        doc["result"] = result
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, IndexError) as exc:
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 1
    text = render(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
