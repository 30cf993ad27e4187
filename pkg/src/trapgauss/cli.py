"""Command line front end.

Subcommands: ``analyze``, ``classify``, ``forge``, ``catalog``, ``parse-check``.
Settings come from flags, optionally preloaded from a flat ``key = value``
file given with ``--config`` (flags win).  Exit status is 0 on success and
the ``exit_code`` of the raised error class otherwise.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import CAUSAL_TOL, CausalClass
from .catalog import build_graph_immersion, catalog, get_entry
from .classify import TOL_CONST, TOL_RESID, ZERO_TOL, GaussSample, Kind, classify
from .errors import (
    ConfigError,
    DegenerateProjection,
    ExpressionSyntaxError,
    RankDeficient,
    TrapGaussError,
)
from .expr import eval_real, parse, to_text
from .geometry import (
    MINKOWSKI,
    ON_SHELL_TOL,
    ROUTE_TOL,
    Domain,
    SpaceForm,
    beltrami_check,
    membership_check,
    point_geometry,
    pseudo_umbilical_test,
    trapped_verdict,
)
from .helmholtz import (
    EIG_TOL,
    Disc,
    Polygon,
    Rectangle,
    assemble,
    forge,
    rasterize,
    rectangle_oracle,
    smallest_eigenpairs,
)
from .report import SCHEMA_VERSION, check_projection, dumps, export_mesh, stats, validate

EXIT_CODES = """exit codes:
  0   success
  1   unexpected library error
  2   usage or configuration error; signature mismatch
  10  degenerate span            11  division near zero
  12  domain error               13  jet degree exhausted
  20  expression syntax error    21  unknown identifier
  30  surface not space-like     31  point off the space form
  32  H not light-like           33  degenerate bivector basis
  40  rank deficient fit         41  all samples harmonic
  42  hypothesis violated        50  empty interior
  51  eigensolver did not converge
  60  degenerate mesh projection
"""

TOLERANCES = {
    "tol-causal": CAUSAL_TOL,
    "tol-shell": ON_SHELL_TOL,
    "tol-route": ROUTE_TOL,
    "tol-resid": TOL_RESID,
    "tol-const": TOL_CONST,
    "tol-zero": ZERO_TOL,
    "tol-eigen": EIG_TOL,
}
DEFAULTS = {
    "spaceform": None,
    "grid": None,
    "domain": "rect:1,1",
    "h": 1 / 32,
    "eigen-k": 1,
    "project": None,
    "out": None,
    "eps": 0.1,
    "n": 1,
    **TOLERANCES,
}
DEFAULT_COUNTS = 20


def read_config(path) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("_", "-")] = value
    return out


def _settings(args, keys) -> dict:
    """Merge defaults, config file and flags (in increasing priority)."""
    cfg = read_config(args.config) if args.config else {}
    unknown = set(cfg) - set(keys)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    merged = {}
    for k in keys:
        flag = getattr(args, k.replace("-", "_"), None)
        merged[k] = flag if flag is not None else cfg.get(k, DEFAULTS.get(k))
    for k in TOLERANCES:
        if k in merged:
            merged[k] = _number(merged[k], k)
    return merged


def _number(value, name, kind=float):
    try:
        x = kind(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: expected a number, got {value!r}") from None
    return x


def _parse_grid(text):
    parts = text.split(",")
    if len(parts) != 6:
        raise ConfigError("--grid needs u0,u1,nu,v0,v1,nv")
    u0, u1, v0, v1 = (_number(parts[i], "grid") for i in (0, 1, 3, 4))
    nu, nv = (_number(parts[i], "grid", int) for i in (2, 5))
    if nu < 2 or nv < 2:
        raise ConfigError("grid counts must be at least 2 per axis")
    return (u0, u1, nu), (v0, v1, nv)


def _parse_projection(text):
    try:
        proj = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ConfigError(f"--project expects i,j,k, got {text!r}") from None
    if len(proj) != 3:
        raise ConfigError("--project expects exactly three indices")
    return proj


def _parse_domain(text, base: Path):
    kind, _, rest = text.partition(":")
    try:
        if kind == "rect":
            a, b = (float(x) for x in rest.split(","))
            return Rectangle(a, b)
        if kind == "disc":
            return Disc(float(rest))
        if kind == "poly":
            path = Path(rest)
            if not path.is_absolute():
                path = base / path
            return Polygon.from_csv_text(path.read_text())
    except (ValueError, OSError) as exc:
        raise ConfigError(f"bad --domain {text!r}: {exc}") from None
    raise ConfigError(f"--domain must be rect:a,b, disc:r or poly:file.csv, got {text!r}")


# ---------------------------------------------------------------------------


def _surface(s):
    """Resolve the surface source into (source, name, immersion, spaceform)."""
    surface, phi = s.get("surface"), s.get("phi")
    if (surface is None) == (phi is None):
        raise ConfigError("give exactly one of --surface or --phi")
    if phi is not None:
        imm = build_graph_immersion(parse(phi), Domain((-1.0, 1.0), (-1.0, 1.0)))
        if s["spaceform"] not in (None, "minkowski"):
            raise ConfigError("--phi graph surfaces live in Minkowski space")
        return "phi", phi, imm, MINKOWSKI
    try:
        entry = get_entry(surface, eps=_number(s["eps"], "eps"), n=_number(s["n"], "n", int))
        wanted = SpaceForm.from_name(s["spaceform"]) if s["spaceform"] else None
    except KeyError as exc:
        raise ConfigError(str(exc.args[0])) from None
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if wanted is not None and wanted != entry.spaceform:
        raise ConfigError(f"{surface} lives in {entry.spaceform.name}, not {s['spaceform']}")
    return "catalog", surface, entry.immersion, entry.spaceform


def _grid_points(s, imm):
    """Tensor grid (closed, includes the edges) filtered by the domain's predicate."""
    if s["grid"]:
        (u0, u1, nu), (v0, v1, nv) = _parse_grid(s["grid"])
    else:
        (u0, u1), (v0, v1) = imm.domain.u_range, imm.domain.v_range
        nu = nv = DEFAULT_COUNTS
    us, vs = np.linspace(u0, u1, nu), np.linspace(v0, v1, nv)
    pred = imm.domain.predicate
    valid = np.array([[pred is None or bool(pred(u, v)) for u in us] for v in vs])
    pts = [(float(u), float(v)) for j, v in enumerate(vs) for i, u in enumerate(us) if valid[j, i]]
    if len(pts) < 3:
        raise ConfigError("the grid leaves fewer than 3 admissible points")
    return us, vs, valid, pts


def _check_projection(proj, dim):
    try:
        check_projection(proj, dim)
    except DegenerateProjection:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _located(exc, u, v):
    exc.args = (f"{exc.args[0] if exc.args else exc} [at u={u!r}, v={v!r}]",) + exc.args[1:]
    return exc


def _taxonomy_json(tax):
    fit = tax.fit
    f = None
    if fit is not None and tax.kind is not Kind.NOT_POINTWISE_ONE_TYPE:
        fv = fit.f_values
        f = {"min": float(fv.min()), "max": float(fv.max()), "mean": float(fv.mean()), "spread": fit.f_spread}
    return {
        "kind": tax.kind.value,
        "lambda": tax.lam,
        "C": None if tax.C is None else [float(c) for c in tax.C],
        "f": f,
        "first_kind_residual": tax.report.get("first_kind_residual"),
        "second_kind_residual": tax.report.get("second_kind_residual"),
        "null_dim": tax.report.get("null_dim"),
        "samples": tax.report["samples"],
        "zero_samples": tax.report["zero_samples"],
    }


def run_analyze(s, command="analyze"):
    """Sample, analyze and classify a surface; returns ``(report, artifacts)``."""
    t0 = time.perf_counter()
    source, name, imm, sf = _surface(s)
    us, vs, valid, pts = _grid_points(s, imm)
    proj = _parse_projection(s["project"]) if s.get("project") else None
    if proj is not None:
        _check_projection(proj, imm.dim)
    samples, pgs = [], []
    route = beltrami = egregium = hat = 0.0
    have_route = False
    umbilical = True
    a_h = 0.0
    dh = None
    for u, v in pts:
        try:
            pg = point_geometry(imm, u, v, sf, s["tol-causal"], shell_tol=s["tol-shell"])
            if command == "analyze":
                beltrami = max(beltrami, beltrami_check(imm, u, v, sf))
        except TrapGaussError as exc:
            raise _located(exc, u, v)
        pgs.append(pg)
        samples.append(GaussSample((u, v), pg.nu, pg.laplacian_nu_direct))
        if pg.laplacian_nu_structural is not None:
            have_route = True
            d = pg.laplacian_nu_direct
            route = max(route, float(np.linalg.norm(d - pg.laplacian_nu_structural)) / (1 + float(np.linalg.norm(d))))
            hat = max(hat, abs(pg.hat_h_norm2 - (4 * sf.delta - 2 * pg.K)))
        egregium = max(egregium, abs(pg.K - pg.K_intrinsic))
        scale = 1 + np.abs(pg.hvec).max() ** 2
        a_h = max(a_h, float(np.abs(pg.A_H).max()) / scale)
        if pseudo_umbilical_test(pg, 1e-9 * scale):
            dh = max(dh or 0.0, max(float(np.abs(d).max()) for d in pg.DH))
        if pg.Hclass is CausalClass.LIGHTLIKE and not pseudo_umbilical_test(pg, 1e-9 * (1 + np.abs(pg.hvec).max() ** 2)):
            umbilical = False
    tax = classify(samples, s["tol-resid"], s["tol-const"], s["tol-zero"])
    config = {k: (v if isinstance(v, (str, int, float, bool)) or v is None else str(v)) for k, v in s.items()}
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "surface": {"source": source, "name": name, "spaceform": sf.name, "points": len(pts)},
    }
    artifacts = {}
    if command == "analyze":
        verdict = trapped_verdict({pg.point: pg.Hclass for pg in pgs})
        counts = {}
        for pg in pgs:
            counts[pg.Hclass.value] = counts.get(pg.Hclass.value, 0) + 1
        report["geometry"] = {
            "K": stats(pg.K for pg in pgs),
            "K_intrinsic": stats(pg.K_intrinsic for pg in pgs),
            "KD": stats(pg.KD for pg in pgs),
            "H_norm2": stats(pg.H_norm2 for pg in pgs),
            "causal_classes": counts,
        }
        report["trapped"] = {"verdict": verdict.kind.value, "zero_points": [list(p) for p in verdict.zero_points]}
        report["taxonomy"] = _taxonomy_json(tax)
        report["checks"] = {
            "route_equivalence": route if have_route else None,
            "beltrami": beltrami,
            "egregium": egregium,
            "pseudo_umbilical": umbilical,
            "hat_h_identity": hat if have_route else None,
            "A_H_max": a_h,
            "DH_max_where_A_H_vanishes": dh,
        }
        report["membership"] = None
        if sf.delta == 0:
            try:
                fit = membership_check(imm, pts, sf, s["tol-shell"])
                report["membership"] = {
                    "center": [float(c) for c in fit.center],
                    "radius2": fit.radius2,
                    "residual": fit.residual,
                    "null_dim": fit.null_dim,
                    "kind": fit.kind,
                }
            except RankDeficient as exc:
                report["membership"] = {"error": str(exc), "null_dim": int(exc.null_dim)}
        if proj is not None:
            positions = np.zeros((len(vs), len(us), imm.dim))
            for j, v in enumerate(vs):
                for i, u in enumerate(us):
                    if valid[j, i]:
                        positions[j, i] = imm.position(float(u), float(v))
            artifacts["mesh.obj"] = export_mesh(positions, proj, valid)
    else:
        report["taxonomy"] = _taxonomy_json(tax)
    report["artifacts"] = {"mesh": "mesh.obj" if "mesh.obj" in artifacts else None}
    report["timings"] = {"total_seconds": time.perf_counter() - t0}
    return report, artifacts


def _rectangle_reference(domain, k):
    """The k smallest exact eigenvalues of a rectangle, or ``None`` for other shapes."""
    if not isinstance(domain, Rectangle):
        return None
    m_max = int(math.ceil(math.sqrt(k))) + k
    lams = sorted(
        rectangle_oracle(domain.a, domain.b, m, n).lam for m in range(1, m_max + 1) for n in range(1, m_max + 1)
    )
    return lams[:k]


def run_forge(s, base=Path(".")):
    """Eigenpairs on a rasterized domain and their forged surfaces."""
    t0 = time.perf_counter()
    domain = _parse_domain(s["domain"], base)
    h = _number(s["h"], "h")
    k = _number(s["eigen-k"], "eigen-k", int)
    proj = _parse_projection(s["project"]) if s.get("project") else (1, 2, 0)
    _check_projection(proj, 4)
    grid = rasterize(domain, h)
    pairs = smallest_eigenpairs(assemble(grid), k, s["tol-eigen"])
    refs = _rectangle_reference(domain, k)
    entries, artifacts = [], {}
    for idx, ep in enumerate(pairs, 1):
        ref = None if refs is None else refs[idx - 1]
        res = forge(grid, ep, ref)
        csv_name, mesh_name = f"phi_{idx}.csv", f"mesh_{idx}.obj"
        artifacts[csv_name] = res.surface.csv_text()
        artifacts[mesh_name] = export_mesh(res.surface.positions(), proj)
        slot, _ = res.dominant_slot
        entries.append(
            {
                "index": idx,
                "lambda": ep.lam,
                "eigen_residual": ep.residual,
                "forge_residual": res.residual,
                "C": [float(c) for c in res.C],
                "dominant_slot": list(slot),
                "reference_lambda": ref,
                "reference_residual": res.reference_residual,
                "stencil_nodes": res.nodes,
                "csv": csv_name,
                "mesh": mesh_name,
            }
        )
    config = {key: (v if isinstance(v, (str, int, float, bool)) or v is None else str(v)) for key, v in s.items()}
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "forge",
        "config": config,
        "forge": {"domain": s["domain"], "h": h, "interior_nodes": grid.n, "eigenpairs": entries},
        "artifacts": {name: name for name in artifacts},
        "timings": {"total_seconds": time.perf_counter() - t0},
    }
    return report, artifacts


def _emit(report, artifacts, out):
    validate(report)
    text = dumps(report)
    if out is None:
        sys.stdout.write(text)
        return
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    for name, content in artifacts.items():
        (out / name).write_text(content)
    (out / "report.json").write_text(text)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="trapgauss",
        description="Gauss map analysis of space-like surfaces in Lorentzian space forms.",
        epilog=EXIT_CODES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--version", action="version", version=f"trapgauss {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="flat key = value file; flags override it")
        sp.add_argument("--out", help="output directory (default: report to stdout)")
        for key, value in TOLERANCES.items():
            sp.add_argument(f"--{key}", type=float, help=f"default {value:g}")

    def surface_opts(sp):
        src = sp.add_mutually_exclusive_group()
        src.add_argument("--surface", help="catalog entry name")
        src.add_argument("--phi", help="graph surface (phi, u, v, phi) from an expression")
        sp.add_argument("--spaceform", choices=["minkowski", "desitter", "antidesitter"])
        sp.add_argument("--grid", help="u0,u1,nu,v0,v1,nv (edges included)")
        sp.add_argument("--eps", type=float, help="exp-example domain parameter (default 0.1)")
        sp.add_argument("--n", type=int, help="square-eigenfunction mode number (default 1)")
        sp.add_argument("--project", help="mesh projection i,j,k of ambient coordinates")
        common(sp)

    a = sub.add_parser("analyze", help="full geometric analysis and classification")
    surface_opts(a)
    c = sub.add_parser("classify", help="classification only")
    surface_opts(c)

    f = sub.add_parser("forge", help="Dirichlet eigenfunctions and their graph surfaces")
    f.add_argument("--domain", help="rect:a,b | disc:r | poly:file.csv (default rect:1,1)")
    f.add_argument("--h", type=float, help="lattice spacing (default 1/32)")
    f.add_argument("--eigen-k", type=int, help="number of eigenpairs (default 1)")
    f.add_argument("--project", help="mesh projection i,j,k (default 1,2,0: u, v, phi)")
    common(f)

    cat = sub.add_parser("catalog", help="list catalog entries")
    cat.add_argument("--eps", type=float, default=0.1)
    cat.add_argument("--n", type=int, default=1)

    pc = sub.add_parser("parse-check", help="check an expression against the grammar")
    pc.add_argument("expression")
    pc.add_argument("--at", help="also evaluate at u,v")
    return p


SURFACE_KEYS = ["surface", "phi", "spaceform", "grid", "eps", "n", "project", "out", *TOLERANCES]
FORGE_KEYS = ["domain", "h", "eigen-k", "project", "out", *TOLERANCES]


def _catalog(args):
    rows = []
    for e in catalog(eps=args.eps, n=args.n):
        rows.append(
            {
                "name": e.name,
                "spaceform": e.spaceform.name,
                "description": e.description,
                "expected": e.expected,
                "params": e.params,
            }
        )
    sys.stdout.write(dumps(rows))


def _parse_check(args):
    try:
        tree = parse(args.expression)
    except ExpressionSyntaxError as exc:
        sys.stderr.write(f"{args.expression}\n{' ' * exc.offset}^\n")
        raise
    line = to_text(tree)
    if args.at:
        try:
            u, v = (float(x) for x in args.at.split(","))
        except ValueError:
            raise ConfigError(f"--at expects u,v, got {args.at!r}") from None
        line += f"\nvalue at ({u!r}, {v!r}): {float(eval_real(tree, u, v))!r}"
    sys.stdout.write(line + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("analyze", "classify"):
            s = _settings(args, SURFACE_KEYS)
            report, artifacts = run_analyze(s, args.command)
            _emit(report, artifacts, s["out"])
        elif args.command == "forge":
            s = _settings(args, FORGE_KEYS)
            base = Path(args.config).parent if args.config else Path(".")
            report, artifacts = run_forge(s, base)
            _emit(report, artifacts, s["out"])
        elif args.command == "catalog":
            _catalog(args)
        else:
            _parse_check(args)
    except TrapGaussError as exc:
        sys.stderr.write(f"trapgauss: error: {exc}\n")
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
