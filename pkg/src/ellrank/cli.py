"""Command-line front end: ``ellrank <command> ...``.

Every command prints ``key = value`` lines (``--format kv`` drops the
padding), so outputs diff cleanly.  Curve files may be paths or names of the
bundled fixtures (``eq3_minimal.txt``, ``k3_minimal.txt``, ...).
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .algebra import format_poly, parse_scalar
from .ellcurve import CurvePoint, WeierstrassCurve, base_change_and_specialize, jacobian, minimal_model, quartic_to_weierstrass
from .fileformat import FileFormatError, format_curve_file, load_text, parse_curve_file, parse_function, parse_point, parse_points_file

DEFAULT_SEED = 0


class Out:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.rows: list[tuple[str, str]] = []

    def __call__(self, key: str, value) -> None:
        self.rows.append((key, str(value)))

    def render(self) -> str:
        if self.fmt == "kv":
            return "\n".join(f"{k}={v}" for k, v in self.rows)
        width = min(24, max((len(k) for k, _ in self.rows), default=0))
        return "\n".join(f"{k.ljust(width)} = {v}" for k, v in self.rows)


def _load_curve(name: str):
    text, source = load_text(name)
    return parse_curve_file(text, source)


def _weierstrass(name: str) -> WeierstrassCurve:
    obj = _load_curve(name)
    if not isinstance(obj, WeierstrassCurve):
        raise FileFormatError(f"{name}: expected a Weierstrass model")
    return obj


def _short_minimal(E: WeierstrassCurve) -> WeierstrassCurve:
    from .kodaira import _short_polys

    try:
        _short_polys(E)
        return E
    except ValueError:
        return minimal_model(E)[0]


def _point_arg(value: str, var: str) -> CurvePoint:
    pt = parse_point(value, var)
    return CurvePoint.zero() if pt is None else CurvePoint(*pt)


def _ints(text: str) -> list:
    return [parse_scalar(x) for x in text.split(",")]


# ---------------------------------------------------------------- commands
def cmd_mestre(args, out: Out) -> int:
    from . import mestre

    if args.action == "construct":
        if args.name:
            seed = mestre.nagao_seed() if args.name == "nagao" else mestre.mestre_seed()
        else:
            seed = mestre.MestreSeed(tuple(_ints(args.b)))
        out("seed", ",".join(str(b) for b in seed.b))
        out("s", mestre.s_coefficient(seed.b))
        if args.name == "nagao":
            model = mestre.nagao_model()
        elif args.name == "mestre":
            model = mestre.mestre_model()
        else:
            scale = parse_function(args.scale, "t") if args.scale else 1
            model = mestre.build_quartic(seed, scale)
        out("scale", format_poly(model.scale) if model.scale is not None else "1")
        for line in format_curve_file(model).splitlines():
            k, v = line.split(" = ", 1)
            out(k, v)
        out("points", len(model.points))
        return 0
    b5 = _ints(args.b)
    sols = mestre.search_b6(b5)
    out("b1..b5", ",".join(str(b) for b in b5))
    out("solutions", len(sols))
    for i, b6 in enumerate(sols):
        out(f"b6[{i}]", b6)
    return 0


def cmd_conic(args, out: Out) -> int:
    from .mestre import conic_parametrize, find_conic_point

    A, B = parse_scalar(args.A), parse_scalar(args.B)
    if args.base == "auto":
        base = find_conic_point(A, B)
        if base is None:
            out("error", "no small rational point found; pass --base")
            return 1
    elif args.base == "inf":
        base = "inf"
    else:
        base = tuple(_ints(args.base))
    param = conic_parametrize(A, B, base, args.var)
    out("A", A)
    out("B", B)
    out("base", base if isinstance(base, str) else f"{base[0]},{base[1]}")
    out("t", format_poly(param.t_of_z))
    out("u", format_poly(param.u_of_z))
    out("identity", param.identity_holds())
    return 0


def cmd_curve(args, out: Out) -> int:
    obj = _load_curve(args.file)
    if args.action == "jacobian":
        if isinstance(obj, WeierstrassCurve):
            raise FileFormatError("jacobian needs a quartic file")
        if args.zero:
            E, _ = quartic_to_weierstrass(obj, parse_point(args.zero, obj.var))
        else:
            E = jacobian(obj)
        res = E
    elif args.action == "minimal":
        E = obj if isinstance(obj, WeierstrassCurve) else jacobian(obj)
        res, _ = minimal_model(E)
    else:
        E = obj if isinstance(obj, WeierstrassCurve) else jacobian(obj)
        var = E.var or "t"
        if args.subst:
            phi = parse_function(args.subst, args.new_var)
            res = base_change_and_specialize(E, phi)
        else:
            t0 = parse_scalar(args.at)
            res = base_change_and_specialize(E, t0)
            out("at", f"{var} = {t0}")
            out("discriminant", res.discriminant)
    for line in format_curve_file(res).splitlines():
        k, v = line.split(" = ", 1)
        out(k, v)
    return 0


def cmd_fibres(args, out: Out) -> int:
    from .kodaira import fibre_configuration

    E = _short_minimal(_weierstrass(args.file))
    cfg = fibre_configuration(E)
    out("chi", cfg.chi)
    out("rational_surface", cfg.rational_surface)
    out("euler_sum", cfg.euler_sum)
    for i, (pl, ft) in enumerate(cfg.entries):
        split = "" if ft.split is None else (" split" if ft.split else " nonsplit")
        where = str(pl) if len(str(pl)) <= 40 else f"a place of degree {pl.degree}"
        out(f"fibre[{i}]", f"{ft.name}{split} at {where} (degree {pl.degree})")
    out("reducible", ", ".join(f"{ft.name} at {pl}" for pl, ft in cfg.reducible()) or "none")
    return 0


def cmd_height(args, out: Out) -> int:
    from .heights import canonical_height_limit, shioda_height
    from .kodaira import fibre_configuration

    E = _short_minimal(_weierstrass(args.file))
    P = _point_arg(args.point, E.var or "t")
    cfg = fibre_configuration(E)
    if args.method in ("shioda", "both"):
        out("shioda", shioda_height(E, P, cfg))
    if args.method in ("limit", "both"):
        out("limit", canonical_height_limit(E, P, cfg))
    return 0


def cmd_gram(args, out: Out) -> int:
    from .heights import gram

    E = _short_minimal(_weierstrass(args.file))
    text, source = load_text(args.points)
    var, pts = parse_points_file(text, source)
    points = [CurvePoint.zero() if p is None else CurvePoint(*p) for p in pts]
    G = gram(E, points)
    for i, row in enumerate(G.entries):
        out(f"row[{i}]", " ".join(str(c) for c in row))
    out("rank", G.rank)
    out("det", G.determinant())
    out("psd", G.is_positive_semidefinite())
    return 0


def cmd_theorem1(args, out: Out) -> int:
    from .heights import gram, norm_map, theorem1_certificate
    from .kodaira import fibre_configuration
    from .models import eq3_curve, q_point, w_generators, z_generators, z_line_model

    E, Q = eq3_curve(), q_point()
    cfg = fibre_configuration(E)
    norms = [norm_map(E, P) for P in w_generators()[:12]]
    zr = None if args.skip_z else gram(z_line_model(), z_generators()).rank
    rep = theorem1_certificate(E, Q, norms, zr, cfg)
    out("sigma_moves_q", rep.sigma_moves_q)
    out("height_q", rep.height_q)
    out("height_q_minus_sigma_q", rep.height_difference)
    out("rank_norms_with_q", rep.rank_with_q)
    out("rank_over_z", "skipped" if zr is None else zr)
    out("conclusion", rep.conclusion)
    return 0 if rep.ok else 1


def cmd_q14(args, out: Out) -> int:
    from .qsearch import find_extra_point

    E = _short_minimal(_weierstrass(args.file))
    diag: list = []
    sols = find_extra_point(E, diag)
    out("solutions", len(sols))
    for i, s in enumerate(sols):
        out(f"sol[{i}].D", s.D)
        out(f"sol[{i}].X", format_poly(s.X))
        out(f"sol[{i}].Y", format_poly(s.Y))
    for d in diag:
        out("note", d)
    return 0


def _threads(args) -> int:
    env = os.environ.get("ELLRANK_THREADS")
    if env:
        return int(env)
    return args.threads


def cmd_count(args, out: Out) -> int:
    from .surfcount import DEFAULT_BUDGET, EXTENDED_BUDGET, SurfaceModel, count_surface

    model = SurfaceModel.from_curve(_short_minimal(_weierstrass(args.file)))
    budget = EXTENDED_BUDGET if args.extended else DEFAULT_BUDGET
    t0 = time.perf_counter()
    rep = count_surface(model, args.p, args.n, threads=_threads(args), budget=budget)
    for line in rep.as_kv().splitlines():
        k, v = line.split(" = ", 1)
        out(k, v)
    if args.timing:
        out("seconds", f"{time.perf_counter() - t0:.2f}")
    return 0


def cmd_nsbound(args, out: Out) -> int:
    from .surfcount import SurfaceModel, count_surface, eigen_ledger, ns_rank_bound, test_hypotheses
    from .verify import lower_bounds_and_conclusion

    model = SurfaceModel.from_curve(_short_minimal(_weierstrass(args.file)))
    if args.counts:
        c = [int(x) for x in args.counts.split(",")]
        counts = {1: c[0], 2: c[1]}
    else:
        counts = {n: count_surface(model, args.p, n, threads=_threads(args)).total for n in (1, 2)}
    L = eigen_ledger(args.p, counts)
    for line in L.as_kv().splitlines():
        k, v = line.split(" = ", 1)
        out(k, v)
    outcomes = test_hypotheses(L)
    for o in outcomes:
        tail = f"cofactor {o.cofactor_str()}" if o.cofactor is not None else ""
        reason = f" ({o.reason})" if o.reason else ""
        out(f"hypothesis[zeta order {o.zeta_order}, det {'+' if o.det_sign > 0 else '-'}]", f"{o.verdict}{reason} {tail}".rstrip())
    b = ns_rank_bound(L, outcomes)
    out("bound", b.bound)
    out("bound_sharp", b.sharp)
    if args.conclude:
        conc = lower_bounds_and_conclusion(model, b)
        for line in conc.as_kv().splitlines():
            k, v = line.split(" = ", 1)
            out(k, v)
    return 0


def cmd_verify(args, out: Out) -> int:
    from .verify import run_verify

    only = [x for part in (args.only or []) for x in part.split(",")] or None
    stream = args.format != "kv"

    def progress(chk):
        print("\n".join(_check_lines(chk)), flush=True)

    rep = run_verify(only, args.extended, args.seed, progress if stream else None)
    if not stream:
        for line in rep.lines(kv=True, timings=args.timing):
            k, v = line.split(" = ", 1)
            out(k, v)
    out("result", "pass" if rep.ok else "FAIL")
    return 0 if rep.ok else 1


def _check_lines(chk) -> list[str]:
    from .verify import VerificationReport

    return VerificationReport([chk]).lines()


# ------------------------------------------------------------------ parser
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ellrank", description="Elliptic surfaces of high rank over Q(t): construction, heights, point counts.")
    ap.add_argument("--format", choices=("text", "kv"), default="text")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized steps")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mestre", help="square-split quartics")
    p.add_argument("action", choices=("construct", "search"))
    p.add_argument("--name", choices=("nagao", "mestre"))
    p.add_argument("--b", help="comma-separated b1..b6 (construct) or b1..b5 (search)")
    p.add_argument("--scale", help="square scale factor in t")
    p.set_defaults(func=cmd_mestre)

    p = sub.add_parser("conic", help="parametrize u^2 = A + B t^2")
    p.add_argument("action", choices=("param",))
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--base", default="auto", help="t0,u0 | inf | auto")
    p.add_argument("--var", default="z")
    p.set_defaults(func=cmd_conic)

    p = sub.add_parser("curve", help="Weierstrass models")
    p.add_argument("action", choices=("jacobian", "minimal", "specialize"))
    p.add_argument("file")
    p.add_argument("--zero", help="marked point 'X ; Y' sent to O (jacobian)")
    p.add_argument("--at", help="value of the parameter (specialize)")
    p.add_argument("--subst", help="rational function to substitute (specialize)")
    p.add_argument("--new-var", default="z")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("fibres", help="singular fibre configuration")
    p.add_argument("file")
    p.set_defaults(func=cmd_fibres)

    p = sub.add_parser("height", help="canonical height of a point")
    p.add_argument("file")
    p.add_argument("--point", required=True, help="'X ; Y'")
    p.add_argument("--method", choices=("shioda", "limit", "both"), default="both")
    p.set_defaults(func=cmd_height)

    p = sub.add_parser("gram", help="Gram matrix of the height pairing")
    p.add_argument("file")
    p.add_argument("points")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("theorem1", help="certificate for the fourteenth point")
    p.add_argument("--skip-z", action="store_true", help="skip the Q(z) Gram matrix")
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("q14", help="search for a section through the node at infinity")
    p.add_argument("file", nargs="?", default="eq3_minimal.txt")
    p.set_defaults(func=cmd_q14)

    p = sub.add_parser("count", help="#S(F_q) of the surface")
    p.add_argument("file", nargs="?", default="k3_minimal.txt")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--extended", action="store_true", help="lift the q^2 work budget")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("nsbound", help="eigenvalue ledger, hypotheses and NS rank bound")
    p.add_argument("file", nargs="?", default="k3_minimal.txt")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--counts", help="N1,N2 instead of counting")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-conclude", dest="conclude", action="store_false", help="skip the rank conclusions")
    p.set_defaults(func=cmd_nsbound)

    p = sub.add_parser("verify-paper", help="reproduce every published number")
    p.add_argument("--only", action="append", help="check name or group (repeatable, comma-separated)")
    p.add_argument("--extended", action="store_true", help="include the F_53^3 count")
    p.add_argument("--timing", action="store_true", help="include runtimes in kv output")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = Out(args.format)
    try:
        code = args.func(args, out)
    except (FileFormatError, ValueError, ArithmeticError, NotImplementedError) as exc:
        out("error", f"{type(exc).__name__}: {exc}")
        code = 2
    if out.rows:
        print(out.render())
    return code


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["build_parser", "main"]
