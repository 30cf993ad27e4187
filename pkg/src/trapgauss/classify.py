"""Pointwise 1-type classification of Gauss maps from sampled (nu, Delta nu) pairs.

The model is ``Delta nu = f (nu + C)`` with a scalar field ``f`` and a constant
bivector ``C``.  All fits use the Euclidean norm on Plücker coordinates.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import AllHarmonic, DegenerateBasis, RankDeficient
from .geometry import MINKOWSKI, Immersion, PointGeometry, SpaceForm, point_geometry

ZERO_TOL = 1e-9
TOL_RESID = 1e-6
TOL_CONST = 1e-6
RANK_RTOL = 1e-10


@dataclass(frozen=True)
class GaussSample:
    point: tuple
    nu: np.ndarray
    dnu: np.ndarray


def sample_gauss_map(imm: Immersion, grid, sf: SpaceForm = MINKOWSKI, route: str = "direct"):
    """Gauss map and its Laplacian at each grid point."""
    out = []
    for u, v in grid:
        pg = point_geometry(imm, u, v, sf, laplacians=True)
        dnu = pg.laplacian_nu_direct if route == "direct" else pg.laplacian_nu_structural
        if dnu is None:
            raise ValueError(f"route {route!r} unavailable at {(u, v)}")
        out.append(GaussSample((u, v), pg.nu, dnu))
    return out


@dataclass
class OneTypeFit:
    """Least-squares fit of ``dnu = f (nu + C)``.

    ``f`` holds ``None`` at samples whose ``dnu`` is zero.  ``residual`` is the
    RMS over samples of ``|dnu - f (nu + C)| / |dnu|``, so it does not change
    when all ``dnu`` are scaled together and steep samples do not swamp flat
    ones; ``abs_residual`` is the plain RMS misfit.
    """

    C: np.ndarray
    f: list
    residual: float
    abs_residual: float
    null_dim: int = 0

    @property
    def f_values(self) -> np.ndarray:
        return np.array([x for x in self.f if x is not None])

    @property
    def f_mean(self) -> float:
        return float(np.mean(self.f_values))

    @property
    def f_spread(self) -> float:
        fv = self.f_values
        return float(fv.max() - fv.min())


def _zero_mask(samples, tol=ZERO_TOL):
    norms = np.array([np.linalg.norm(s.dnu) for s in samples])
    scale = max(norms.max(initial=0.0), 0.0)
    ref = max(np.linalg.norm(s.nu) for s in samples)
    if scale <= tol * ref:
        return np.ones(len(samples), dtype=bool)
    return norms <= tol * scale


def _finish(samples, zero, C):
    f, mis, rel = [], [], []
    for s, z in zip(samples, zero):
        if z:
            f.append(None)
            continue
        w = s.nu + C
        ww = float(np.dot(w, w))
        fp = float(np.dot(s.dnu, w)) / ww if ww > 0 else 0.0
        f.append(fp)
        m2 = float(np.sum((s.dnu - fp * w) ** 2))
        mis.append(m2)
        rel.append(m2 / float(np.dot(s.dnu, s.dnu)))
    return f, math.sqrt(math.fsum(rel) / len(rel)), math.sqrt(math.fsum(mis) / len(mis))


def _usable(samples, zero_tol):
    if not samples:
        raise AllHarmonic("no samples")
    zero = _zero_mask(samples, zero_tol)
    if zero.all():
        raise AllHarmonic("Delta nu vanishes at every sample")
    return zero


def fit_C(samples, *, min_norm: bool = True, zero_tol: float = ZERO_TOL) -> OneTypeFit:
    """Fit ``C`` from parallelism of ``dnu`` and ``nu + C``, then ``f`` per sample.

    For each sample and each pair ``i < j`` of Plücker slots the equation
    ``d_i C_j - d_j C_i = n_i d_j - n_j d_i`` is imposed, with ``d`` the
    normalized ``dnu``.  When the system has a null space, the minimum-norm
    ``C`` is returned and ``null_dim`` records the deficiency; with
    ``min_norm=False`` that case raises instead.

    Raises
    ------
    AllHarmonic
        Every ``dnu`` is zero.
    RankDeficient
        Fewer than 3 usable samples, or (``min_norm=False``) ``C`` is not
        identifiable.
    """
    samples = list(samples)
    zero = _usable(samples, zero_tol)
    used = [s for s, z in zip(samples, zero) if not z]
    if len(used) < 3:
        raise RankDeficient(f"need at least 3 samples with nonzero Delta nu, got {len(used)}", null_dim=-1)
    n = used[0].nu.size
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rows, rhs = [], []
    for s in used:
        d = s.dnu / np.linalg.norm(s.dnu)
        nu = s.nu
        for i, j in pairs:
            r = np.zeros(n)
            r[j] += d[i]
            r[i] -= d[j]
            rows.append(r)
            rhs.append(nu[i] * d[j] - nu[j] * d[i])
    A, b = np.array(rows), np.array(rhs)
    sv = np.linalg.svd(A, compute_uv=False)
    rank = int(np.sum(sv > RANK_RTOL * sv[0]))
    null_dim = n - rank
    if null_dim > 0 and not min_norm:
        raise RankDeficient(f"C is not identifiable (null-space dimension {null_dim})", null_dim=null_dim)
    C = np.linalg.pinv(A, rcond=RANK_RTOL) @ b
    f, rel, abs_res = _finish(samples, zero, C)
    return OneTypeFit(C=C, f=f, residual=rel, abs_residual=abs_res, null_dim=null_dim)


def fit_first_kind(samples, *, zero_tol: float = ZERO_TOL) -> OneTypeFit:
    """Fit ``dnu = f nu`` (``C`` forced to zero)."""
    samples = list(samples)
    zero = _usable(samples, zero_tol)
    C = np.zeros_like(samples[0].nu)
    f, rel, abs_res = _finish(samples, zero, C)
    return OneTypeFit(C=C, f=f, residual=rel, abs_residual=abs_res)


class Kind(enum.Enum):
    HARMONIC = "Harmonic"
    GLOBAL_FIRST_KIND = "GlobalFirstKind"
    PROPER_POINTWISE_FIRST_KIND = "ProperPointwiseFirstKind"
    GLOBAL_SECOND_KIND = "GlobalSecondKind"
    PROPER_POINTWISE_SECOND_KIND = "ProperPointwiseSecondKind"
    NOT_POINTWISE_ONE_TYPE = "NotPointwiseOneType"


@dataclass
class Taxonomy:
    kind: Kind
    lam: Optional[float] = None
    C: Optional[np.ndarray] = None
    fit: Optional[OneTypeFit] = None
    report: dict = field(default_factory=dict)

    def __str__(self):
        if self.kind is Kind.GLOBAL_FIRST_KIND:
            return f"{self.kind.value}({self.lam:.12g})"
        if self.kind is Kind.GLOBAL_SECOND_KIND:
            return f"{self.kind.value}({self.lam:.12g}, C)"
        if self.kind is Kind.PROPER_POINTWISE_SECOND_KIND:
            return f"{self.kind.value}(C)"
        return self.kind.value


def classify(samples, tol_resid: float = TOL_RESID, tol_const: float = TOL_CONST,
             zero_tol: float = ZERO_TOL) -> Taxonomy:
    """Place sampled Gauss-map data in the pointwise 1-type taxonomy.

    First kind wins whenever its fit passes; otherwise second kind; otherwise
    not pointwise 1-type.  Within a kind, ``f`` counts as constant when
    ``f_spread <= tol_const * (1 + |f_mean|)``.
    """
    samples = list(samples)
    if len(samples) < 3:
        raise ValueError("classify needs at least 3 samples")
    zero = _zero_mask(samples, zero_tol)
    report = {"samples": len(samples), "zero_samples": int(zero.sum())}
    if zero.all():
        return Taxonomy(Kind.HARMONIC, report=report)

    first = fit_first_kind(samples, zero_tol=zero_tol)
    report["first_kind_residual"] = first.residual
    try:
        second = fit_C(samples, zero_tol=zero_tol)
        report["second_kind_residual"] = second.residual
        report["null_dim"] = second.null_dim
    except RankDeficient as exc:
        second = None
        report["second_kind_error"] = str(exc)

    def constant(fit):
        return fit.f_spread <= tol_const * (1 + abs(fit.f_mean))

    if first.residual <= tol_resid:
        if constant(first):
            return Taxonomy(Kind.GLOBAL_FIRST_KIND, lam=first.f_mean, fit=first, report=report)
        return Taxonomy(Kind.PROPER_POINTWISE_FIRST_KIND, fit=first, report=report)
    if second is not None and second.residual <= tol_resid:
        if constant(second):
            return Taxonomy(Kind.GLOBAL_SECOND_KIND, lam=second.f_mean, C=second.C, fit=second, report=report)
        return Taxonomy(Kind.PROPER_POINTWISE_SECOND_KIND, C=second.C, fit=second, report=report)
    return Taxonomy(Kind.NOT_POINTWISE_ONE_TYPE, fit=second or first, report=report)


@dataclass
class SecondKindStructure:
    C12: float
    C34: float
    C1: float
    C2: float
    residual: float


def second_kind_structure(C, pg: PointGeometry, tol: float = 1e-9) -> SecondKindStructure:
    """Coefficients of ``C`` in ``{e1^e2, e3^e4, e1^H, e2^H}`` at ``pg``'s point.

    ``C`` may be a bivector or a :class:`OneTypeFit`.

    Raises
    ------
    DegenerateBasis
        The four bivectors are dependent (e.g. ``H`` is zero).
    """
    if isinstance(C, OneTypeFit):
        C = C.C
    sig = pg.signature
    B = np.column_stack(
        [sig.wedge(pg.e1, pg.e2), sig.wedge(pg.e3, pg.e4), sig.wedge(pg.e1, pg.H), sig.wedge(pg.e2, pg.H)]
    )
    sv = np.linalg.svd(B, compute_uv=False)
    if sv[-1] <= tol * max(sv[0], 1.0):
        raise DegenerateBasis(f"bivector basis is degenerate at {pg.point} (H may vanish)")
    coef, *_ = np.linalg.lstsq(B, C, rcond=None)
    resid = float(np.linalg.norm(B @ coef - C))
    return SecondKindStructure(*map(float, coef), residual=resid)


def admissible_global_eigenvalue(lam: float, delta: int, tol: float = 1e-6) -> bool:
    """Global 1-type marginally trapped surfaces in de Sitter/anti-de Sitter have lam in {2 delta, 4 delta}."""
    return delta != 0 and min(abs(lam - 2 * delta), abs(lam - 4 * delta)) <= tol
