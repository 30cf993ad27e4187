"""Pointwise geometry of space-like surfaces in Lorentzian space forms.

A surface is given by an :class:`Immersion` that returns jets of its ambient
coordinates.  For ``delta = 0`` the ambient space is Minkowski space E^4_1;
for ``delta = +1`` (de Sitter) the surface lies on ``<x, x> = 1`` in E^5_1 and
for ``delta = -1`` (anti-de Sitter) on ``<x, x> = -1`` in E^5_2.

Conventions
-----------
* The Laplacian is the geometer's positive operator, ``-(d_uu + d_vv)`` for a
  flat isothermal chart.
* ``h`` is the second fundamental form of the surface inside the space form,
  so it excludes the ``x`` direction when ``delta != 0``.
* The normal frame is ordered ``(e3, e4)`` with ``<e3,e3> = +1`` and
  ``<e4,e4> = -1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import jets
from .algebra import CAUSAL_TOL, CausalClass, Signature
from .errors import (
    DegenerateSpan,
    NotLightlikeMeanCurvature,
    NotSpacelike,
    OffShell,
    RankDeficient,
)
from .jets import Jet

ON_SHELL_TOL = 1e-8
ROUTE_TOL = 1e-7


@dataclass(frozen=True)
class SpaceForm:
    """Lorentzian space form R^4_1(delta) inside its flat ambient space."""

    delta: int

    def __post_init__(self):
        if self.delta not in (-1, 0, 1):
            raise ValueError("delta must be -1, 0 or +1")

    @property
    def ambient(self) -> Signature:
        return {0: Signature(4, 1), 1: Signature(5, 1), -1: Signature(5, 2)}[self.delta]

    @property
    def name(self) -> str:
        return {0: "minkowski", 1: "desitter", -1: "antidesitter"}[self.delta]

    @classmethod
    def from_name(cls, name: str) -> "SpaceForm":
        table = {"minkowski": 0, "desitter": 1, "antidesitter": -1}
        if name not in table:
            raise ValueError(f"unknown space form {name!r}; expected one of {sorted(table)}")
        return cls(table[name])


MINKOWSKI = SpaceForm(0)
DE_SITTER = SpaceForm(1)
ANTI_DE_SITTER = SpaceForm(-1)


@dataclass(frozen=True)
class Domain:
    """Rectangle in the (u, v) plane, optionally cut down by a predicate."""

    u_range: tuple[float, float]
    v_range: tuple[float, float]
    predicate: Optional[Callable[[float, float], bool]] = None

    def contains(self, u, v) -> bool:
        (u0, u1), (v0, v1) = self.u_range, self.v_range
        inside = u0 <= u <= u1 and v0 <= v <= v1
        return inside and (self.predicate is None or bool(self.predicate(u, v)))

    def grid(self, nu: int, nv: int, closed: bool = False) -> list[tuple[float, float]]:
        """Tensor grid of ``nu x nv`` points; open grids skip the rectangle's edges."""
        (u0, u1), (v0, v1) = self.u_range, self.v_range
        if closed:
            us, vs = np.linspace(u0, u1, nu), np.linspace(v0, v1, nv)
        else:
            us = np.linspace(u0, u1, nu + 2)[1:-1]
            vs = np.linspace(v0, v1, nv + 2)[1:-1]
        return [(float(a), float(b)) for b in vs for a in us if self.contains(a, b)]

    def random_points(self, n: int, rng: np.random.Generator) -> list[tuple[float, float]]:
        (u0, u1), (v0, v1) = self.u_range, self.v_range
        pts = []
        while len(pts) < n:
            a, b = rng.uniform(u0, u1), rng.uniform(v0, v1)
            if self.contains(a, b):
                pts.append((float(a), float(b)))
        return pts


@dataclass(frozen=True)
class Immersion:
    """A parametrized surface: ``eval(u, v, degree)`` returns coordinate jets."""

    eval: Callable[[float, float, int], list]
    dim: int
    domain: Domain

    def __call__(self, u, v, degree=jets.DEFAULT_DEGREE) -> list[Jet]:
        out = []
        for c in self.eval(u, v, degree):
            out.append(c if isinstance(c, Jet) else Jet.constant(c, (u, v), degree))
        if len(out) != self.dim:
            raise ValueError(f"immersion returned {len(out)} coordinates, expected {self.dim}")
        return out

    def position(self, u, v) -> np.ndarray:
        return np.array([c.value for c in self(u, v, 0)])

    @classmethod
    def from_coordinates(cls, coords, domain: Domain) -> "Immersion":
        """Build from callables ``f(U, V)`` working on jets (or plain numbers)."""

        def evaluate(u, v, degree):
            U = Jet.variable(u, v, "u", degree)
            V = Jet.variable(u, v, "v", degree)
            return [f(U, V) for f in coords]

        return cls(evaluate, len(coords), domain)


# ---------------------------------------------------------------------------
# jet-valued vector helpers


def _jet_inner(a, b, sig: Signature) -> Jet:
    return jets.exact_sum(w * x * y for w, x, y in zip(sig.weights, a, b))


def _jet_wedge(a, b, sig: Signature) -> list[Jet]:
    return [jets.exact_sum([a[i] * b[j], -(a[j] * b[i])]) for i, j in sig.pairs]


def _values(vec) -> np.ndarray:
    return np.array([c.value for c in vec])


def laplace_beltrami(field_jets, E, F, G):
    """Positive Laplace-Beltrami operator of the metric ``E du^2 + 2F du dv + G dv^2``.

    ``field_jets`` is a list of scalar jets (degree >= 2); the metric jets
    need degree >= 1.  Returns a float array.
    """
    det = E * G - F * F
    sq = jets.sqrt(det)
    g11, g12, g22 = G / det, -F / det, E / det
    out = []
    for f in field_jets:
        fu, fv = jets.partial(f, "u"), jets.partial(f, "v")
        flux_u = sq * (g11 * fu + g12 * fv)
        flux_v = sq * (g12 * fu + g22 * fv)
        div = jets.partial(flux_u, "u").value + jets.partial(flux_v, "v").value
        out.append(-div / sq.value)
    return np.array(out)


def gauss_curvature_intrinsic(E: Jet, F: Jet, G: Jet) -> float:
    """Brioschi formula; needs metric jets of degree >= 2."""
    Eu, Ev, Evv = E.deriv(1, 0), E.deriv(0, 1), E.deriv(0, 2)
    Fu, Fv, Fuv = F.deriv(1, 0), F.deriv(0, 1), F.deriv(1, 1)
    Gu, Gv, Guu = G.deriv(1, 0), G.deriv(0, 1), G.deriv(2, 0)
    e, f, g = E.value, F.value, G.value
    m1 = np.array(
        [
            [-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev],
            [Fv - 0.5 * Gu, e, f],
            [0.5 * Gv, f, g],
        ]
    )
    m2 = np.array([[0.0, 0.5 * Ev, 0.5 * Gu], [0.5 * Ev, e, f], [0.5 * Gu, f, g]])
    return (np.linalg.det(m1) - np.linalg.det(m2)) / (e * g - f * f) ** 2


# ---------------------------------------------------------------------------


@dataclass
class PointGeometry:
    """Geometric state of a surface at one parameter point."""

    point: tuple[float, float]
    spaceform: SpaceForm
    x: np.ndarray
    g: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    e4: np.ndarray
    h: np.ndarray  # h[alpha, i, j], alpha 0 -> e3, 1 -> e4
    H: np.ndarray
    Hclass: CausalClass
    A3: np.ndarray
    A4: np.ndarray
    K: float
    K_intrinsic: float
    KD: float
    DH: tuple[np.ndarray, np.ndarray]
    nu: np.ndarray
    laplacian_nu_direct: Optional[np.ndarray] = None
    laplacian_nu_structural: Optional[np.ndarray] = None
    hvec: np.ndarray = field(default=None, repr=False)  # h(e_i, e_j) as ambient vectors

    @property
    def signature(self) -> Signature:
        return self.spaceform.ambient

    @property
    def H_norm2(self) -> float:
        return self.signature.inner(self.H, self.H)

    @property
    def A_H(self) -> np.ndarray:
        """Shape operator along H: entries ``<h(e_i, e_j), H>``."""
        sig = self.signature
        return np.array([[sig.inner(self.hvec[i, j], self.H) for j in range(2)] for i in range(2)])

    @property
    def hat_h_norm2(self) -> float:
        """Squared norm of the second fundamental form in the flat ambient space."""
        sig = self.signature
        n = sum(sig.inner(self.hvec[i, j], self.hvec[i, j]) for i in range(2) for j in range(2))
        return n + 2 * self.spaceform.delta


class _Local:
    """Jets and frames shared by the pointwise computations."""

    def __init__(self, imm: Immersion, u, v, sf: SpaceForm, tol, shell_tol=ON_SHELL_TOL):
        sig = sf.ambient
        if imm.dim != sig.dim:
            raise ValueError(
                f"immersion has {imm.dim} coordinates but {sf.name} needs {sig.dim}"
            )
        self.sig, self.sf, self.point = sig, sf, (u, v)
        X = imm(u, v, 3)
        if min(c.degree for c in X) < 3:
            raise ValueError("surface computations need jets of degree 3")
        self.X = X
        self.x = _values(X)
        if sf.delta != 0:
            q = sig.inner(self.x, self.x)
            if abs(q - sf.delta) > shell_tol:
                raise OffShell(f"<x,x> = {q!r} at {(u, v)}, expected {sf.delta}")
        self.Xu = [jets.partial(c, "u") for c in X]
        self.Xv = [jets.partial(c, "v") for c in X]
        self.E = _jet_inner(self.Xu, self.Xu, sig)
        self.F = _jet_inner(self.Xu, self.Xv, sig)
        self.G = _jet_inner(self.Xv, self.Xv, sig)
        e, f, g = self.E.value, self.F.value, self.G.value
        det = e * g - f * f
        if not (e > 0 and det > 0) or det <= tol * (e + g) ** 2:
            raise NotSpacelike(f"tangent plane is not space-like at {(u, v)} (E={e!r}, det={det!r})")
        self.det = det
        self.g = np.array([[e, f], [f, g]])
        self.ginv = np.array([[g, -f], [-f, e]]) / det
        # Gram-Schmidt of (x_u, x_v): e_a = sum_k T[a, k] x_k
        s1 = math.sqrt(e)
        s2 = math.sqrt(det / e)
        self.T = np.array([[1 / s1, 0.0], [-f / (e * s2), 1 / s2]])
        self.xu, self.xv = _values(self.Xu), _values(self.Xv)
        self.e1 = self.T[0, 0] * self.xu
        self.e2 = self.T[1, 0] * self.xu + self.T[1, 1] * self.xv

    def project_normal(self, w) -> np.ndarray:
        """Component of an ambient vector normal to the surface inside the space form."""
        sig = self.sig
        a = np.array([sig.inner(w, self.xu), sig.inner(w, self.xv)])
        c = self.ginv @ a
        out = w - c[0] * self.xu - c[1] * self.xv
        if self.sf.delta != 0:
            out = out - sig.inner(w, self.x) / self.sf.delta * self.x
        return out

    def project_normal_jets(self, w, X, Xu, Xv, ginv):
        sig = self.sig
        a1, a2 = _jet_inner(w, Xu, sig), _jet_inner(w, Xv, sig)
        c1 = ginv[0] * a1 + ginv[1] * a2
        c2 = ginv[1] * a1 + ginv[2] * a2
        out = [wk - c1 * uk - c2 * vk for wk, uk, vk in zip(w, Xu, Xv)]
        if self.sf.delta != 0:
            cx = _jet_inner(w, X, sig) * (1.0 / self.sf.delta)
            out = [ok - cx * xk for ok, xk in zip(out, X)]
        return out

    def normal_frame(self):
        """Orthonormal normal frame ``(e3, e4)`` with ``<e3,e3> = 1``, ``<e4,e4> = -1``.

        The projected coordinate axes span the normal plane; a Euclidean
        orthonormal basis of that span is taken and the 2x2 Gram matrix of the
        indefinite metric on it is diagonalized.  Unlike Gram-Schmidt on the
        axes themselves this stays well conditioned when every axis projects
        to a nearly light-like vector (steep graphs).
        """
        sig = self.sig
        cols = [self.project_normal(sig.basis(k)) for k in range(sig.dim)]
        cols = [c / np.linalg.norm(c) for c in cols if np.linalg.norm(c) > 0]
        U, sv, _ = np.linalg.svd(np.column_stack(cols))
        if sv.size < 2 or sv[1] <= 1e-13 * sv[0]:
            raise DegenerateSpan(f"normal space is degenerate at {self.point}")
        b = [U[:, 0], U[:, 1]]
        Q = np.array([[sig.inner(p, q) for q in b] for p in b])
        lam, vec = np.linalg.eigh(Q)
        if not (lam[0] < 0 < lam[1]) or min(-lam[0], lam[1]) <= 1e-14 * max(-lam[0], lam[1]):
            raise DegenerateSpan(f"normal plane is not Lorentzian at {self.point}")
        e3 = (vec[0, 1] * b[0] + vec[1, 1] * b[1]) / math.sqrt(lam[1])
        e4 = vec[0, 0] * b[0] + vec[1, 0] * b[1]
        # one refinement pass: back onto the normal space, then Gram-Schmidt
        e3 = self.project_normal(e3)
        e3 = e3 / math.sqrt(sig.inner(e3, e3))
        e4 = self.project_normal(e4)
        e4 = e4 - sig.inner(e4, e3) * e3
        e4 = e4 / math.sqrt(-sig.inner(e4, e4))
        # deterministic orientation: the largest entry of each vector is positive
        e3 = e3 if e3[np.argmax(np.abs(e3))] > 0 else -e3
        e4 = e4 if e4[np.argmax(np.abs(e4))] > 0 else -e4
        return e3, e4

    def mean_curvature_jets(self):
        """Mean curvature vector as degree-1 jets (for its covariant derivative)."""
        X = [c.truncate(1) for c in self.X]
        Xu = [c.truncate(1) for c in self.Xu]
        Xv = [c.truncate(1) for c in self.Xv]
        E, F, G = self.E.truncate(1), self.F.truncate(1), self.G.truncate(1)
        det = E * G - F * F
        ginv = (G / det, -F / det, E / det)
        Xuu = [jets.partial(c, "u") for c in self.Xu]
        Xuv = [jets.partial(c, "v") for c in self.Xu]
        Xvv = [jets.partial(c, "v") for c in self.Xv]
        Puu = self.project_normal_jets(Xuu, X, Xu, Xv, ginv)
        Puv = self.project_normal_jets(Xuv, X, Xu, Xv, ginv)
        Pvv = self.project_normal_jets(Xvv, X, Xu, Xv, ginv)
        return [
            0.5 * (ginv[0] * a + 2.0 * (ginv[1] * b) + ginv[2] * c)
            for a, b, c in zip(Puu, Puv, Pvv)
        ]

    def gauss_map_jets(self):
        sq = jets.sqrt(self.E * self.G - self.F * self.F)
        return [w / sq for w in _jet_wedge(self.Xu, self.Xv, self.sig)]


def point_geometry(
    imm: Immersion,
    u: float,
    v: float,
    sf: SpaceForm = MINKOWSKI,
    tol: float = CAUSAL_TOL,
    *,
    laplacians: bool = True,
    tangent_angle: float = 0.0,
    normal_rapidity: float = 0.0,
    shell_tol: float = ON_SHELL_TOL,
) -> PointGeometry:
    """Full geometric state of the surface at ``(u, v)``.

    Parameters
    ----------
    tol : float
        Relative tolerance of the causal classification of ``H``.
    laplacians : bool
        Also fill both Laplacian-of-Gauss-map fields.  The structural one is
        left as ``None`` when ``H`` is neither light-like nor zero.
    tangent_angle, normal_rapidity : float
        Rotate the tangent frame / boost the normal frame before computing the
        frame-dependent quantities (gauge checks).
    shell_tol : float
        Allowed ``|<x,x> - delta|`` for de Sitter and anti-de Sitter surfaces.

    Raises
    ------
    NotSpacelike
        The tangent plane is degenerate or not space-like.
    OffShell
        For ``delta != 0``, ``<x, x>`` differs from ``delta``.
    """
    loc = _Local(imm, u, v, sf, tol, shell_tol)
    sig = loc.sig
    T = loc.T
    if tangent_angle:
        c, s = math.cos(tangent_angle), math.sin(tangent_angle)
        T = np.array([[c, s], [-s, c]]) @ T
    e1 = T[0, 0] * loc.xu + T[0, 1] * loc.xv
    e2 = T[1, 0] * loc.xu + T[1, 1] * loc.xv
    e3, e4 = loc.normal_frame()
    if normal_rapidity:
        ch, sh = math.cosh(normal_rapidity), math.sinh(normal_rapidity)
        e3, e4 = ch * e3 + sh * e4, sh * e3 + ch * e4

    # h in coordinates, then in the orthonormal tangent frame
    X2 = {
        (0, 0): [jets.partial(c, "u").value for c in loc.Xu],
        (0, 1): [jets.partial(c, "v").value for c in loc.Xu],
        (1, 1): [jets.partial(c, "v").value for c in loc.Xv],
    }
    hc = np.zeros((2, 2, sig.dim))
    for (i, j), w in X2.items():
        hc[i, j] = hc[j, i] = loc.project_normal(np.array(w))
    hvec = np.einsum("ai,bj,ijk->abk", T, T, hc)
    hvec[1, 0] = hvec[0, 1]
    H = 0.5 * (hvec[0, 0] + hvec[1, 1])
    normals = (e3, e4)
    eps = (1.0, -1.0)
    h = np.array(
        [[[eps[a] * sig.inner(hvec[i, j], normals[a]) for j in range(2)] for i in range(2)] for a in range(2)]
    )
    A3 = np.array([[sig.inner(hvec[i, j], e3) for j in range(2)] for i in range(2)])
    A4 = np.array([[sig.inner(hvec[i, j], e4) for j in range(2)] for i in range(2)])
    K = sf.delta + sig.inner(hvec[0, 0], hvec[1, 1]) - sig.inner(hvec[0, 1], hvec[0, 1])
    KD = float((A3 @ A4 - A4 @ A3)[1, 0])
    K_int = gauss_curvature_intrinsic(loc.E, loc.F, loc.G)

    Hj = loc.mean_curvature_jets()
    dH = [np.array([jets.partial(c, d).value for c in Hj]) for d in ("u", "v")]
    DH = tuple(loc.project_normal(T[a, 0] * dH[0] + T[a, 1] * dH[1]) for a in range(2))

    pg = PointGeometry(
        point=(u, v),
        spaceform=sf,
        x=loc.x,
        g=loc.g,
        e1=e1,
        e2=e2,
        e3=e3,
        e4=e4,
        h=h,
        H=H,
        Hclass=sig.causal_class(H, tol),
        A3=A3,
        A4=A4,
        K=float(K),
        K_intrinsic=float(K_int),
        KD=KD,
        DH=DH,
        nu=sig.wedge(e1, e2),
        hvec=hvec,
    )
    if laplacians:
        pg.laplacian_nu_direct = _direct(loc)
        if pg.Hclass in (CausalClass.LIGHTLIKE, CausalClass.ZERO):
            pg.laplacian_nu_structural = laplacian_gauss_structural(pg, sf)
    return pg


def _direct(loc: _Local) -> np.ndarray:
    return laplace_beltrami(loc.gauss_map_jets(), loc.E, loc.F, loc.G)


def laplacian_gauss_direct(imm: Immersion, u, v, sf: SpaceForm = MINKOWSKI) -> np.ndarray:
    """Laplacian of the Gauss map, applying Laplace-Beltrami to each Plücker coordinate."""
    return _direct(_Local(imm, u, v, sf, CAUSAL_TOL))


def laplacian_gauss_structural(pg: PointGeometry, sf: Optional[SpaceForm] = None, *, strict=True):
    """Laplacian of the Gauss map assembled from curvature data.

    ``(4 delta - 2K) nu - 2 KD e3^e4 - 2 D_{e1}H ^ e2 - 2 e1 ^ D_{e2}H``, valid
    when ``H`` is light-like or zero.  With ``strict=False`` the general form
    (extra ``4 <H,H> nu`` term) is used for surfaces of any causal type.

    Raises
    ------
    NotLightlikeMeanCurvature
        If ``strict`` and ``H`` is space-like or time-like.
    """
    sf = pg.spaceform if sf is None else sf
    sig = sf.ambient
    if strict and pg.Hclass not in (CausalClass.LIGHTLIKE, CausalClass.ZERO):
        raise NotLightlikeMeanCurvature(
            f"H is {pg.Hclass.value} at {pg.point}; the light-like formula does not apply"
        )
    coef = 4 * sf.delta - 2 * pg.K
    if not strict:
        coef += 4 * pg.H_norm2
    return (
        coef * pg.nu
        - 2 * pg.KD * sig.wedge(pg.e3, pg.e4)
        - 2 * sig.wedge(pg.DH[0], pg.e2)
        - 2 * sig.wedge(pg.e1, pg.DH[1])
    )


class TrappedKind(enum.Enum):
    MARGINALLY_TRAPPED = "MarginallyTrapped"
    PARTLY_MARGINALLY_TRAPPED = "PartlyMarginallyTrapped"
    NOT_MARGINALLY_TRAPPED = "NotMarginallyTrapped"


@dataclass
class TrappedVerdict:
    kind: TrappedKind
    zero_points: list = field(default_factory=list)
    classes: dict = field(default_factory=dict)


def marginally_trapped_test(imm: Immersion, grid, sf: SpaceForm = MINKOWSKI, tol: float = CAUSAL_TOL):
    """Classify the surface by the causal type of H over ``grid``.

    Marginally trapped: H light-like at every point.  Partly: light-like or
    zero everywhere, with some zeros and some light-like points.  A surface
    with H identically zero is maximal, hence not marginally trapped.
    """
    grid = list(grid)
    if not grid:
        raise ValueError("empty grid")
    classes = {}
    for u, v in grid:
        pg = point_geometry(imm, u, v, sf, tol, laplacians=False)
        classes[(u, v)] = pg.Hclass
    return trapped_verdict(classes)


def trapped_verdict(classes: dict) -> TrappedVerdict:
    """Verdict from a mapping ``(u, v) -> CausalClass`` of H."""
    values = set(classes.values())
    zeros = [p for p, c in classes.items() if c is CausalClass.ZERO]
    if values == {CausalClass.LIGHTLIKE}:
        kind = TrappedKind.MARGINALLY_TRAPPED
    elif values == {CausalClass.LIGHTLIKE, CausalClass.ZERO}:
        kind = TrappedKind.PARTLY_MARGINALLY_TRAPPED
    else:
        kind = TrappedKind.NOT_MARGINALLY_TRAPPED
    return TrappedVerdict(kind, zeros, dict(classes))


def beltrami_check(imm: Immersion, u, v, sf: SpaceForm = MINKOWSKI) -> float:
    """Norm of ``Delta x - (-2H + 2 delta x)`` with ``Delta x`` from the metric Laplacian."""
    loc = _Local(imm, u, v, sf, CAUSAL_TOL)
    lap_x = laplace_beltrami(loc.X, loc.E, loc.F, loc.G)
    pg = point_geometry(imm, u, v, sf, laplacians=False)
    return float(np.linalg.norm(lap_x - (-2 * pg.H + 2 * sf.delta * pg.x)))


def pseudo_umbilical_test(pg: PointGeometry, tol: float = 1e-9) -> bool:
    """True iff the shape operator along H vanishes (entrywise ``<= tol``)."""
    return bool(np.all(np.abs(pg.A_H) <= tol))


@dataclass
class MembershipFit:
    """Least-squares fit of ``<x - c, x - c> = k`` over sampled positions."""

    center: np.ndarray
    radius2: float
    residual: float
    null_dim: int

    @property
    def kind(self) -> str:
        return "pseudo-sphere" if self.radius2 > 0 else "pseudo-hyperbolic"


def membership_fit(points, sig: Signature, tol: float = ON_SHELL_TOL) -> MembershipFit:
    """Fit a pseudo-sphere through ambient points.

    ``<x,x> = 2<x,c> + (k - <c,c>)`` is linear in ``(c, k - <c,c>)``; the
    minimum-norm solution is taken when the system is rank deficient.

    Raises
    ------
    RankDeficient
        If fewer than 6 points are given, or the fit is consistent
        (residual <= tol) but the center is not determined.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[1] != sig.dim or len(P) < 6:
        raise RankDeficient("need at least 6 ambient points", null_dim=-1)
    A = np.hstack([2 * P * sig.weights, np.ones((len(P), 1))])
    b = np.einsum("pi,i,pi->p", P, sig.weights, P)
    scale = max(1.0, float(np.max(np.abs(A))))
    sol, _, rank, _ = np.linalg.lstsq(A / scale, b, rcond=None)
    sol = sol / scale
    c, m = sol[:-1], sol[-1]
    resid = float(np.sqrt(np.mean((A @ sol - b) ** 2)))
    null_dim = A.shape[1] - int(rank)
    if null_dim > 0 and resid <= tol:
        raise RankDeficient(
            f"points lie on a pseudo-sphere but its center is undetermined "
            f"(null-space dimension {null_dim})",
            null_dim=null_dim,
            residual=resid,
        )
    return MembershipFit(center=c, radius2=float(m + sig.inner(c, c)), residual=resid, null_dim=null_dim)


def membership_check(imm: Immersion, grid, sf: SpaceForm = MINKOWSKI, tol: float = ON_SHELL_TOL):
    """Does a surface in Minkowski space lie in a pseudo-sphere or pseudo-hyperbolic space?"""
    if sf.delta != 0:
        raise ValueError("membership_check applies to surfaces in Minkowski space")
    pts = [imm.position(u, v) for u, v in grid]
    return membership_fit(pts, sf.ambient, tol)
