"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage or domain error.
Reports on stdout are byte-identical for identical arguments; timing goes to
stderr and only with ``--timing``.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import time
from typing import List, Optional

from . import abelian, groups, verify
from .geometry import constructions, export, lens_model, meshtools
from .lens_core import (Sign, heegaard_gluing, homeomorphism_class,
                        klein_bottle_embeds, normalize, projective_plane_embeds)
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CONSTRUCTIONS = ("lens_model", "seifert", "two_moebius", "handles")
DEFAULT_POLE = (-1.0, 0.0)
AXIOM_CHECK_LIMIT = 4096


class UsageError(ValueError):
    pass


def cmd_classify(p: int, q: int) -> Report:
    rep = Report("classify", [("p", p), ("q", q)])
    space = normalize(p, q)
    rep.add("space", str(space))
    rep.add("raw", f"L({p},{q})")
    rep.add("sphere", space.is_sphere)
    rep.add("homeomorphic_q", ",".join(str(x) for x in sorted(homeomorphism_class(space))))
    verdict = klein_bottle_embeds(space)
    rep.add("klein_bottle", str(verdict))
    rep.add("projective_plane", "yes" if projective_plane_embeds(space) else "no")
    g = heegaard_gluing(space)
    rep.add("gluing_r", g.r)
    rep.add("gluing_s", g.s)
    rep.add("gluing_matrix", g.entries)
    mu1, lam1 = g.describe()
    rep.add("mu1_image", mu1)
    rep.add("lambda1_image", lam1)
    rep.check("bezout", g.p * g.r + g.q * g.s == 1, f"{g.p}*{g.r} + {g.q}*{g.s}")
    rep.check("determinant", g.determinant == -1, f"det = {g.determinant}")
    if verdict.embeds:
        target = normalize(4 * verdict.n, 2 * verdict.n + verdict.sign.value_int)
        rep.check("verdict_realises_space", target == space, str(target))
    return rep


def cmd_filling(n: int, ell: int, cap: int = groups.DEFAULT_ORDER_CAP) -> Report:
    if n == 0 and ell == 0:
        raise UsageError("(n, l) = (0, 0) is not a class on the torus")
    rep = Report("filling", [("n", n), ("ell", ell), ("cap", cap)])
    pres = groups.dehn_filling_presentation(n, ell)
    h1 = abelian.attached_disc_quotient(n, ell)
    primitive = math.gcd(n, ell) == 1
    rep.add("presentation", str(pres))
    rep.add("H1", str(h1))
    rep.add("H1_cyclic", h1.is_cyclic)
    rep.add("primitive", primitive)
    if not primitive:
        rep.notice(f"attaching class ({n},{ell}) is not primitive; "
                   "H1 is the quotient by the attached disc only")
    if ell % 2 == 0:
        rep.notice("not a lens-space filling: l is even, so H1 is not cyclic")
    rep.check("abelianization_matches_H1", groups.abelianization(pres) == h1)

    for key, value in groups.torsion_diagnostic(n, ell, cap).lines():
        rep.add(f"torsion.{key}", value)

    if n == 0 or ell == 0:
        rep.add("group_order", "infinite")
        rep.notice("group is infinite; no multiplication table")
        return rep
    nn, ll = (n, ell) if n > 0 else (-n, -ell)
    order = 4 * nn * abs(ll)
    rep.add("group_order", order)
    if order > cap:
        rep.notice(f"partial report: table of order {order} exceeds cap {cap}")
        return rep
    t = groups.build_metacyclic_table(nn, ll, cap)
    abel = groups.is_abelian(t)
    rep.add("abelian", abel)
    rep.add("cyclic", abel and groups.is_cyclic(t))
    rep.add("order_of_v", groups.element_order(t, 0, 1))
    rep.check("table_order", groups.group_order(t) == order, f"{groups.group_order(t)}")
    rep.check("relators_hold", all(groups.evaluate_word(t.table, [t.u, t.v], r) == 0
                                   for r in groups.dehn_filling_presentation(nn, ll).relators))
    if order <= AXIOM_CHECK_LIMIT:
        ax = groups.check_group_axioms(t.table)
        rep.check("group_axioms", ax["identity"] and ax["latin"] and ax["associative"],
                  "exhaustive" if ax["associativity_exhaustive"] else "sampled associativity")
        rep.check("table_abelianization_matches_H1", groups.table_abelianization(t) == h1)
    else:
        rep.notice(f"axiom and commutator checks skipped above order {AXIOM_CHECK_LIMIT}")
    return rep


def _embed_lens_model(n, sign, resolution, out, tolerance, min_sep, rep):
    # build unguarded so a seam failure becomes a FAIL line rather than an exception
    mesh = lens_model.klein_lens_embedding(n, sign, resolution, tol=math.inf)
    v, e, f = mesh.counts
    worst, seams_ok = lens_model.verify_seams(mesh, tolerance)
    inj = lens_model.embedded_injectivity_check(mesh, min_sep=min_sep)
    faces = mesh.faces.tolist()
    summary = [
        ("seam_residual_max", worst),
        ("injectivity_min_separation", inj.min_separation),
        ("injectivity_threshold", min_sep),
    ]
    projected = lens_model.stereographic_export(mesh, DEFAULT_POLE)
    paths = export.write_mesh_bundle(mesh, out, f"klein_L{mesh.space.p}_{mesh.space.q}",
                                     summary, projected)
    rep.add("space", str(mesh.space))
    rep.add("counts_(V,E,F)", (v, e, f))
    rep.add("euler_characteristic", mesh.euler_characteristic)
    for key, value in summary:
        rep.add(key, value)
    rep.add("stereographic_pole", "(-1,0)")
    for key in sorted(paths):
        rep.add(f"file.{key}", paths[key])
    rep.check("seams", seams_ok, f"max residual {worst:.17g}")
    rep.check("euler_characteristic_zero", mesh.euler_characteristic == 0)
    rep.check("closed_surface", meshtools.is_closed_surface(faces))
    rep.check("nonorientable", not meshtools.is_orientable(faces))
    rep.check("injective", inj.passed, f"{inj.violations} pairs below {min_sep:.17g}")


_BUILDERS = {
    "seifert": constructions.seifert_construction,
    "two_moebius": constructions.two_moebius_construction,
    "handles": constructions.handles_construction,
}


def cmd_embed(n: int, sign: str, construction: str, resolution: int = 64,
              out: str = "kleinlens_out", tolerance: float = lens_model.IDENTITY_TOL,
              min_sep: float = 1e-4) -> Report:
    if n < 1:
        raise UsageError(f"n must be positive, got {n}")
    try:
        sign = Sign.parse(sign)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if construction not in CONSTRUCTIONS:
        raise UsageError(f"unknown construction {construction!r}")
    rep = Report("embed", [("n", n), ("sign", sign.value), ("construction", construction),
                           ("resolution", resolution), ("output", out)])
    os.makedirs(out, exist_ok=True)
    if construction == "lens_model":
        _embed_lens_model(n, sign, resolution, out, tolerance, min_sep, rep)
        return rep
    built = _BUILDERS[construction](n, sign)
    for key, value in built.values:
        rep.add(key, value)
    for c in built.checks:
        rep.check(c.name, c.passed, c.detail)
    for name in sorted(built.curves):
        path = export.write_text(os.path.join(out, f"{construction}_{name}.txt"),
                                 export.curve_text(built.curves[name]))
        rep.add(f"file.curve.{name}", path)
    report_path = os.path.join(out, f"{construction}_report.txt")
    rep.add("file.report", report_path)
    export.write_text(report_path, rep.text())
    return rep


def cmd_verify(max_n: int, max_p: int) -> Report:
    if max_n < 1 or max_p < 1:
        raise UsageError("bounds must be positive")
    rep = Report("verify", [("max_n", max_n), ("max_p", max_p)])
    results = verify.run_verification(max_n, max_p)
    for r in results:
        rep.add(f"suite.{r.name}", f"{'pass' if r.passed else 'FAIL'} cases={r.cases}")
        rep.check(r.name, r.passed, r.counterexample or "")
    failed = [r for r in results if not r.passed]
    if failed:
        rep.add("first_counterexample", f"{failed[0].name}: {failed[0].counterexample}")
    rep.add("suites_passed", f"{len(results) - len(failed)}/{len(results)}")
    rep.timings = [(r.name, r.seconds) for r in results]
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timing", action="store_true",
                        help="print wall-clock time to stderr")

    parser = argparse.ArgumentParser(prog="kleinlens", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="normalize L(p,q) and decide embeddings")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)

    p = sub.add_parser("filling", parents=[common], help="Dehn filling of nu K along (n, l)")
    p.add_argument("n", type=int)
    p.add_argument("ell", type=int, metavar="l")
    p.add_argument("--cap", type=int, default=groups.DEFAULT_ORDER_CAP,
                   help="largest group order for which a table is built")

    p = sub.add_parser("embed", parents=[common], help="build and check a Klein bottle")
    p.add_argument("n", type=int)
    p.add_argument("sign", help="+ or -")
    p.add_argument("construction", choices=CONSTRUCTIONS)
    p.add_argument("extra", nargs="*", metavar="[resolution] [output]",
                   help="grid resolution (default 64) and output directory (default kleinlens_out)")
    p.add_argument("--tolerance", type=float, default=lens_model.IDENTITY_TOL,
                   help="seam residual tolerance")
    p.add_argument("--min-sep", type=float, default=1e-4,
                   help="injectivity separation threshold")

    p = sub.add_parser("verify", parents=[common], help="run every property sweep")
    p.add_argument("max_n", type=int)
    p.add_argument("max_p", type=int)
    return parser


def _embed_extras(extra: List[str]):
    """Resolution is optional, so a lone non-integer is the output directory."""
    resolution, out = 64, "kleinlens_out"
    if len(extra) > 2:
        raise UsageError(f"unexpected arguments: {' '.join(extra[2:])}")
    if extra:
        try:
            resolution = int(extra[0])
            extra = extra[1:]
        except ValueError:
            pass
    if len(extra) > 1:
        raise UsageError(f"resolution must be an integer, got {extra[0]!r}")
    if extra:
        out = extra[0]
    return resolution, out


def _dispatch(args) -> Report:
    if args.command == "classify":
        return cmd_classify(args.p, args.q)
    if args.command == "filling":
        return cmd_filling(args.n, args.ell, args.cap)
    if args.command == "embed":
        resolution, out = _embed_extras(args.extra)
        return cmd_embed(args.n, args.sign, args.construction, resolution, out,
                         args.tolerance, args.min_sep)
    return cmd_verify(args.max_n, args.max_p)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        rep = _dispatch(args)
    except ValueError as exc:
        print(f"kleinlens: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"kleinlens: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"kleinlens: I/O error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(rep.render(args.format))
    if args.timing:
        for name, secs in rep.timings:
            print(f"time.{name}: {secs:.3f} s", file=sys.stderr)
        print(f"time.total: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
