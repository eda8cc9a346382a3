"""Command line front end: toda-fermion {eval, verify, series, suite}."""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import decompositions, toda, whittaker
from .fermionic import CornerProfile, DivergentSumError, Interval, I_eval, X_eval
from .kernel import PoleError, rational_to_json
from .lie import WeightExpr, build_cartan, parse_cartan_type, read_cartan_file
from .reports import Report
from .suite import suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str | None) -> tuple:
    if text is None:
        return ()
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")


def _entries(text: str) -> tuple:
    """Comma list of ints or symbol names."""
    out = []
    for x in text.split(","):
        x = x.strip()
        try:
            out.append(int(x))
        except ValueError:
            out.append(x)
    return tuple(out)


def _corners(text: str | None, l: int) -> CornerProfile | None:
    """'0:1;2:w1' -> corners at 0 and 2; an angle list has one entry per color."""
    if not text:
        return None
    pairs = []
    for part in text.split(";"):
        k, _, nu = part.partition(":")
        nu = _entries(nu)
        if len(nu) != l:
            raise UsageError(f"corner angle {part!r} needs {l} entries")
        pairs.append((int(k), nu))
    return CornerProfile.from_list(pairs)


def _cartan(args):
    if getattr(args, "matrix", None):
        return read_cartan_file(args.matrix)
    if not args.type:
        raise UsageError("give --type or --matrix")
    c = parse_cartan_type(args.type)
    if getattr(args, "eps_square", None):
        c = build_cartan(c.kind, c.rank, eps_square=args.eps_square)
    return c


def _weight(text: str | None, l: int, family: str) -> WeightExpr:
    """'sym' (symbolic), 'sym+1,0' (symbolic plus omega part) or '1,0' (explicit)."""
    if text is None or text == "sym":
        return WeightExpr.symbolic(family, l)
    if text.startswith("sym+"):
        return WeightExpr.symbolic(family, l) + WeightExpr.explicit(_ints(text[4:]))
    return WeightExpr.explicit(_ints(text))


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_eval(args, out) -> int:
    if args.output == "csv":
        raise UsageError("csv output is only available for the series command")
    cartan = _cartan(args)
    m = _ints(args.m)
    if len(m) != cartan.rank:
        raise UsageError(f"--m needs {cartan.rank} entries")
    C = cartan.C
    cart = cartan if args.qi else None
    params = {"sum": args.sum, "type": cartan.name, "m": list(m)}
    if args.sum == "I":
        interval = Interval.parse(args.interval)
        value = I_eval(C, _corners(args.corners, cartan.rank), m, interval, cart)
        params.update(interval=args.interval, corners=args.corners)
    elif args.sum == "X":
        prof = _corners(args.corners, cartan.rank)
        if prof is None:
            raise UsageError("X needs --corners")
        value = X_eval(C, prof, m, cart)
        params["corners"] = args.corners
    elif args.sum in ("J", "Jint"):
        ctx = whittaker.context_for(cartan)
        lam = _weight(args.lam, cartan.rank, whittaker.LAMBDA)
        if args.sum == "J":
            value = ctx.J(m, lam)
        else:
            interval = Interval.parse(args.interval)
            value = ctx.J_interval(m, lam, interval.lo, interval.hi)
            params["interval"] = args.interval
        params["lam"] = args.lam or "sym"
    else:
        ctx = whittaker.context_for(cartan)
        lam1 = _weight(args.lam, cartan.rank, whittaker.LAMBDA)
        lam2 = _weight(args.lam2, cartan.rank, whittaker.LAMBDA2)
        value = ctx.X(m, lam1, lam2)
        params.update(lam=args.lam or "sym", lam2=args.lam2 or "sym")
    _emit({"params": params, "value": rational_to_json(value)}, out)
    return EXIT_OK


def _verify_report(args) -> Report:
    ident = args.id
    mode = "probabilistic" if args.probabilistic else "exact"
    if ident in whittaker.IDENTITIES:
        return whittaker.verify_identity(ident, _cartan(args), _ints(args.beta), k=args.k,
                                         mode=mode, seed=args.seed)
    if ident == "toda":
        c = _cartan(args)
        return toda.verify_toda_recursion(c.kind, c.rank, _ints(args.beta), c, literal=args.literal)
    if ident == "eigen":
        c = _cartan(args)
        if c.kind != "A":
            raise UsageError("the Hamiltonian check is available for type A only")
        return toda.eigen_check(toda.build_F(whittaker.context_for(c), args.D), c.rank)
    if ident == "appendixA":
        c = _cartan(args)
        if c.kind != "A":
            raise UsageError("appendixA checks are stated for type A only")
        return toda.verify_appendixA(c.rank, args.D)
    if ident == "vanishing":
        c = _cartan(args)
        return whittaker.check_vanishing(c, _ints(args.beta), _ints(args.lam), _ints(args.lam2))
    if ident == "leading":
        return whittaker.leading_monomial_check(_cartan(args), _ints(args.beta))
    if ident.startswith("sl2_"):
        kind = ident[4:]
        if kind not in decompositions.SL2_KINDS:
            raise UsageError(f"unsupported identity {ident!r}")
        return decompositions.sl2_closed(kind, int(args.m or 1), args.nu or "w1", mode, args.seed)[1]
    if ident in decompositions.DECOMPOSITIONS:
        C = _cartan(args).C if (args.type or args.matrix) else decompositions.SL2
        kw = {"C": C, "m": _ints(args.m) or (1,) * len(C), "k": args.k or 0, "r": args.r, "s": args.s,
              "ks": _ints(args.ks), "literal": args.literal, "mode": mode, "seed": args.seed}
        if args.nu:
            kw["nu"] = _entries(args.nu)
        if args.nu2:
            kw["nu2"] = _entries(args.nu2)
        return decompositions.check_decomposition(ident, **kw)
    raise UsageError(f"unsupported identity {ident!r}")


def cmd_verify(args, out) -> int:
    if args.output == "csv":
        raise UsageError("csv output is only available for the series command")
    rep = _verify_report(args)
    _emit(rep.to_json(), out)
    return EXIT_OK if rep.holds is True else EXIT_FAIL


def cmd_series(args, out) -> int:
    cartan = _cartan(args)
    F = toda.build_F(whittaker.context_for(cartan), args.D)
    if args.output == "json":
        _emit(F.to_json(), out)
        return EXIT_OK
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([f"m{i + 1}" for i in range(cartan.rank)] + ["numerator", "denominator"])
    for m, v in sorted(F.coeffs.items()):
        writer.writerow(list(m) + [str(v.numerator), str(v.denominator)])
    return EXIT_OK


def cmd_suite(args, out) -> int:
    summary = suite(args.level, args.workers)
    if not args.verbose:
        summary = {k: v for k, v in summary.items() if k != "results"}
    _emit(summary, out)
    return EXIT_OK if summary["failed"] == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toda-fermion", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--type", help="Cartan type such as A2, B2, C3, D4")
        sp.add_argument("--matrix", help="file with a symmetric Cartan matrix: rank, then rows")
        sp.add_argument("--eps-square", type=int, dest="eps_square", help="(eps, eps) normalization")
        sp.add_argument("--output", choices=("json", "csv"), default="json")
        sp.add_argument("--seed", type=int, default=0)

    e = sub.add_parser("eval", help="evaluate a sum as an exact rational function")
    common(e)
    e.add_argument("--sum", choices=("I", "X", "J", "Jint", "Xpair"), default="I")
    e.add_argument("--m", "--beta", dest="m", required=True)
    e.add_argument("--interval", default="0,inf")
    e.add_argument("--corners")
    e.add_argument("--lam")
    e.add_argument("--lam2")
    e.add_argument("--qi", action="store_true", help="use (q_i; q_i) denominators of the Cartan type")

    v = sub.add_parser("verify", help="verify one identity")
    common(v)
    v.add_argument("--id", required=True)
    v.add_argument("--beta")
    v.add_argument("--m")
    v.add_argument("--k", type=int)
    v.add_argument("--r", type=int, default=0)
    v.add_argument("--s", type=int, default=0)
    v.add_argument("--ks")
    v.add_argument("--nu")
    v.add_argument("--nu2")
    v.add_argument("--lam")
    v.add_argument("--lam2")
    v.add_argument("--D", type=int, default=3)
    v.add_argument("--literal", action="store_true", help="use the display exactly as printed")
    v.add_argument("--probabilistic", action="store_true", help="random-point equality instead of exact")

    s = sub.add_parser("series", help="truncated generating function in y")
    common(s)
    s.add_argument("--D", type=int, default=3)

    u = sub.add_parser("suite", help="run a verification suite")
    u.add_argument("--level", choices=("smoke", "full"), default="smoke")
    u.add_argument("--workers", type=int)
    u.add_argument("--verbose", action="store_true")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handlers = {"eval": cmd_eval, "verify": cmd_verify, "series": cmd_series, "suite": cmd_suite}
    try:
        return handlers[args.command](args, out)
    except (UsageError, ValueError, PoleError, DivergentSumError, KeyError, OSError) as exc:
        print(f"toda-fermion: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
