"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from fractions import Fraction
from xml.sax.saxutils import escape

import numpy as np

from .alcove import build_alcove, chart_dim, face_point, reduce_to_alcove, su_chart, su_unchart, vertices_and_faces
from .folding import DiagramAutomorphism, FoldedSystem, canonical_outer, fold, is_automorphism
from .integral import enumerate_integral, rho_and_dual_coxeter
from .rootsys import SimpleType, build_root_system
from .stabilizer import describe
from . import loopverify as lv


class UsageError(Exception):
    pass


def parse_group(text: str) -> SimpleType:
    t = text.strip().replace("(", "").replace(")", "")
    try:
        return SimpleType.parse(t)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"unknown group {text!r}: {exc}") from None


def build_folded(group: str, twist: str = "id") -> FoldedSystem:
    rs = build_root_system(parse_group(group))
    sel = twist.strip().lower()
    if sel == "id":
        return fold(rs)
    if sel in ("outer", "triality"):
        order = 3 if sel == "triality" else 2
        if sel == "triality" and str(rs.type) != "D4":
            raise UsageError("triality exists only for D4")
        try:
            return fold(rs, canonical_outer(rs, order))
        except ValueError:
            raise UsageError(f"{rs.type} has no nontrivial diagram automorphism") from None
    try:
        perm = tuple(int(x) - 1 for x in sel.split(","))
    except ValueError:
        raise UsageError(f"bad twist selector {twist!r}") from None
    if not is_automorphism(rs, perm):
        raise UsageError(f"{twist} is not a diagram automorphism of {rs.type}")
    return fold(rs, DiagramAutomorphism(perm))


def parse_point(text: str) -> list[Fraction]:
    """Comma-separated rationals; decimals are read exactly (``0.2`` is ``1/5``)."""
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad point {text!r}") from None


def q(x) -> str:
    return str(Fraction(x))


def qs(v) -> list[str]:
    return [q(x) for x in v]


def _is_type_a(fs: FoldedSystem) -> bool:
    return fs.base.type is not None and fs.base.type.family == "A"


def _chart_or_none(fs: FoldedSystem, p):
    return qs(su_chart(fs, p)) if _is_type_a(fs) else None


# --- classify ------------------------------------------------------------------------

def _face_record(fs, alcove, p, tight):
    d = describe(fs, p, alcove)
    return {
        "tight": sorted(tight),
        "point": qs(p),
        "chart": _chart_or_none(fs, p),
        "label": d.label,
        "components": [str(t) for t in d.components],
        "torus_rank": d.torus_rank,
        "pi1": {"free_rank": d.pi1_free_rank, "torsion": list(d.pi1_torsion)},
        "central_quotient": list(d.central_quotient),
        "dimension": d.dimension,
    }


def classify_report(fs: FoldedSystem, point=None, chart_coords: bool = True) -> dict:
    alcove = build_alcove(fs)
    walls = [{"node": w.node, "covector": qs(w.covector), "bound": q(w.bound),
              "sense": "<=" if w.upper else ">="} for w in alcove.walls]
    report = {"group": str(fs.base.type), "twist": [i + 1 for i in fs.tau.perm], "walls": walls}
    if point is not None:
        if chart_coords and _is_type_a(fs):
            h = su_unchart(fs, point)
        else:
            h = point
        pt, witness = reduce_to_alcove(fs, h, alcove)
        report["input"] = qs(point)
        report["face"] = _face_record(fs, alcove, pt.coords, pt.tight)
        report["steps"] = len(witness)
        return report
    faces = []
    for f in vertices_and_faces(alcove):
        rec = _face_record(fs, alcove, face_point(alcove, f), f.tight)
        rec["vertices"] = [qs(alcove.vertices[j]) for j in f.vertices]
        rec["dim"] = f.dim
        faces.append(rec)
    report["faces"] = faces
    return report


def _pi1_text(rec) -> str:
    parts = ["ℤ"] * rec["pi1"]["free_rank"] + [f"ℤ/{t}" for t in rec["pi1"]["torsion"]]
    return "×".join(parts) if parts else "1"


def classify_table(report: dict) -> str:
    lines = [f"{report['group']}  twist {report['twist']}", "walls:"]
    for w in report["walls"]:
        lines.append(f"  node {w['node']}: ({', '.join(w['covector'])}) . h {w['sense']} {w['bound']}")
    recs = [report["face"]] if "face" in report else report["faces"]
    lines.append(f"{'tight':<12} {'point':<28} {'chart':<28} {'pi1':<10} label")
    for r in recs:
        chart = "(" + ", ".join(r["chart"]) + ")" if r["chart"] is not None else "-"
        lines.append(f"{str(r['tight']):<12} {'(' + ', '.join(r['point']) + ')':<28} {chart:<28} "
                     f"{_pi1_text(r):<10} {r['label']}")
    return "\n".join(lines)


def _plane_coords(fs: FoldedSystem, p) -> tuple[float, float]:
    """Isometric planar picture of a point of a 2-dimensional ``h^tau``."""
    g = np.array(fs.gram, dtype=float)
    lower = np.linalg.cholesky(g)
    v = lower.T @ np.array([float(x) for x in p])
    return float(v[0]), float(v[1])


def classify_svg(fs: FoldedSystem, report: dict, size: int = 420) -> str:
    if fs.dim != 2:
        raise UsageError("svg output needs a 2-dimensional alcove")
    alcove = build_alcove(fs)
    pts = [_plane_coords(fs, v) for v in alcove.vertices]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    pad = 70
    k = (size - 2 * pad) / span

    def xy(p):
        x, y = _plane_coords(fs, p)
        return pad + (x - min(xs)) * k, size - pad - (y - min(ys)) * k

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<title>{escape(report["group"])} twist {report["twist"]}</title>']
    poly = " ".join(f"{x:.2f},{y:.2f}" for x, y in (xy(v) for v in alcove.vertices))
    out.append(f'<polygon points="{poly}" fill="#eef3fb" stroke="#203050" stroke-width="1.5"/>')
    for rec in report["faces"]:
        x, y = xy([Fraction(c) for c in rec["point"]])
        if rec["dim"] == 0:
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#203050"/>')
        out.append(f'<text x="{x:.2f}" y="{y:.2f}" font-size="11" text-anchor="middle" '
                   f'dy="{-6 if rec["dim"] == 0 else 4}">{escape(rec["label"])}</text>')
    out.append("</svg>")
    return "\n".join(out)


# --- integral ------------------------------------------------------------------------

def integral_report(fs: FoldedSystem, level: int) -> dict:
    if level <= 0:
        raise UsageError("level must be a positive integer: integrality requires a ∈ ℤ∖{0}, "
                         "and negative levels are the mirror image of positive ones")
    alcove = build_alcove(fs)
    classes = []
    for c in enumerate_integral(fs, level):
        classes.append({
            "coords": qs(c.point.coords),
            "chart": _chart_or_none(fs, c.point.coords),
            "labels": list(c.labels),
            "stabilizer": describe(fs, c.point.coords, alcove).label,
        })
    _, hv = rho_and_dual_coxeter(fs)
    return {"group": str(fs.base.type), "twist": [i + 1 for i in fs.tau.perm], "level": level,
            "comarks": list(fs.comarks), "dual_coxeter": hv, "count": len(classes), "classes": classes}


def integral_table(report: dict) -> str:
    lines = [f"{report['group']}  twist {report['twist']}  level {report['level']}  "
             f"comarks {report['comarks']}"]
    for c in report["classes"]:
        chart = "(" + ", ".join(c["chart"]) + ")" if c["chart"] is not None else "-"
        lines.append(f"  ({', '.join(c['coords'])})  chart {chart}  labels {c['labels']}  {c['stabilizer']}")
    lines.append(f"count: {report['count']}")
    return "\n".join(lines)


# --- verify --------------------------------------------------------------------------

EQUIVARIANCE_TOL = 1e-8
TWO_FORM_TOL = 1e-6


def _g12(x: float) -> float:
    return float(f"{x:.12g}")


def verify_report(fs: FoldedSystem, level: int, samples: int, seed: int, steps: int, quad: int) -> dict:
    t = fs.base.type
    if t is None or t.family != "A" or t.rank > 4:
        raise UsageError("matrix verifier supports type A only (su(n), n <= 5)")
    if fs.r not in (1, 2):
        raise UsageError("matrix verifier supports twists of order 1 or 2")
    if level == 0:
        raise UsageError("level must lie in ℤ∖{0}")
    n, tw = t.rank + 1, fs.r
    rng = np.random.default_rng(seed)
    eq, tf, raw = [], [], []
    for s in range(samples):
        base = seed * 1000 + s
        x = lv.sample_loop(n, tw, base, 2)
        g = lv.sample_loop(n, tw, base + 500, 2, "group", scale=0.5)
        eq.append(lv.check_equivariance(x, level, g, steps).residual)
        h = rng.uniform(-0.3, 0.3, size=n // 2 if tw == 2 else n - 1)
        xc = lv.diag_element(lv.full_chart(n, tw, list(h)))
        b1 = lv.sample_loop(n, tw, base + 200, 2)
        b2 = lv.sample_loop(n, tw, base + 300, 2)
        r = lv.two_form_residual(xc, level, b1, b2, quad)
        tf.append(r.relative)
        raw.append(r.raw_relative)
    ok = max(eq) < EQUIVARIANCE_TOL and max(tf) < TWO_FORM_TOL
    return {
        "group": f"su{n}", "twist": tw, "level": level, "samples": samples, "seed": seed,
        "equivariance": {"max": _g12(max(eq)), "median": _g12(statistics.median(eq)), "tol": EQUIVARIANCE_TOL},
        "two_form": {"max": _g12(max(tf)), "median": _g12(statistics.median(tf)), "tol": TWO_FORM_TOL},
        "two_form_without_d_beta": {"max": _g12(max(raw)), "median": _g12(statistics.median(raw))},
        "pass": ok,
    }


def verify_table(r: dict) -> str:
    return "\n".join([
        f"{r['group']} twist {r['twist']} level {r['level']} samples {r['samples']} seed {r['seed']}",
        f"  equivariance  max {r['equivariance']['max']:.3e}  median {r['equivariance']['median']:.3e}",
        f"  two-form      max {r['two_form']['max']:.3e}  median {r['two_form']['median']:.3e}",
        f"  (without d beta: max {r['two_form_without_d_beta']['max']:.3e})",
        "PASS" if r["pass"] else "FAIL",
    ])


# --- info ----------------------------------------------------------------------------

def info_report(fs: FoldedSystem) -> dict:
    rho, hv = rho_and_dual_coxeter(fs)
    out = {
        "group": str(fs.base.type),
        "twist": [i + 1 for i in fs.tau.perm],
        "order": fs.r,
        "rank": fs.base.rank,
        "dimension": fs.base.dimension,
        "orbits": [[i + 1 for i in o] for o in fs.orbits],
        "fixed_algebra": str(fs.g0.type),
        "theta_tau": qs(fs.theta_tau),
        "affine_cartan": fs.affine_cartan,
        "comarks": list(fs.comarks),
        "dual_coxeter": hv,
        "rho_tau": qs(rho),
        "component_group": fs.component_group(),
    }
    if _is_type_a(fs):
        out["chart_dim"] = chart_dim(fs)
    return out


def info_table(r: dict) -> str:
    return "\n".join(f"{k}: {v}" for k, v in r.items())


# --- entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistconj", description="Twisted conjugacy classes of compact simple Lie groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("table", "json")):
        sp.add_argument("group", help="Cartan type such as A3, C2, D4, or su(n)")
        sp.add_argument("--twist", default="id", help="id, outer, triality (D4), or a 1-based permutation like 3,2,1")
        sp.add_argument("--format", choices=formats, default="table")

    c = sub.add_parser("classify", help="alcove faces and stabilizers")
    common(c, ("table", "json", "svg"))
    c.add_argument("--point", help="comma-separated rationals (SU chart for type A unless --basis)")
    c.add_argument("--basis", action="store_true", help="read --point in orbit-sum coroot coordinates")

    i = sub.add_parser("integral", help="integral classes at a level")
    common(i)
    i.add_argument("--level", type=int, required=True)

    v = sub.add_parser("verify", help="numerical loop-group checks (type A)")
    common(v)
    v.add_argument("--level", type=int, default=1)
    v.add_argument("--samples", type=int, default=10)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--steps", type=int, default=4096)
    v.add_argument("--quad", type=int, default=1024)

    f = sub.add_parser("info", help="folded root data")
    common(f)
    return p


def _emit(obj, fmt: str, table) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2)
    return table(obj)


def run(argv=None) -> tuple[int, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    try:
        fs = build_folded(args.group, args.twist)
        if args.command == "classify":
            point = parse_point(args.point) if args.point else None
            if args.format == "svg" and point is not None:
                raise UsageError("svg output draws the whole alcove; drop --point")
            rep = classify_report(fs, point, chart_coords=not args.basis)
            if args.format == "svg":
                return 0, classify_svg(fs, rep)
            return 0, _emit(rep, args.format, classify_table)
        if args.command == "integral":
            return 0, _emit(integral_report(fs, args.level), args.format, integral_table)
        if args.command == "verify":
            rep = verify_report(fs, args.level, args.samples, args.seed, args.steps, args.quad)
            return (0 if rep["pass"] else 1), _emit(rep, args.format, verify_table)
        return 0, _emit(info_report(fs), args.format, info_table)
    except (UsageError, ValueError) as exc:
        return 2, f"error: {exc}"


def main(argv=None) -> int:
    code, text = run(argv)
    if text:
        print(text, file=sys.stderr if code == 2 else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
