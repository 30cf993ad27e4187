"""Dirichlet eigenproblem of the positive Laplacian on rasterized planar domains.

An eigenfunction ``phi`` with ``Delta phi = lam phi`` and zero boundary values
makes the graph ``(phi, u, v, phi)`` a (partly) marginally trapped surface
with ``Delta nu = lam (nu + C)``; :func:`forge` builds that surface on the
grid and checks the relation with the same 5-point stencil.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from . import jets
from .algebra import Signature
from .errors import EmptyInterior, NoConvergence

E41 = Signature(4, 1)
DENSE_LIMIT = 400
EIG_TOL = 1e-8
_EDGE_TOL = 1e-12


@dataclass(frozen=True)
class Rectangle:
    """``(0, a) x (0, b)``."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("rectangle sides must be positive")

    def bbox(self):
        return 0.0, 0.0, self.a, self.b

    def contains(self, x, y):
        return (0 < x) & (x < self.a) & (0 < y) & (y < self.b)


@dataclass(frozen=True)
class Disc:
    """Open disc of radius ``r`` centered at the origin."""

    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("radius must be positive")

    def bbox(self):
        return -self.r, -self.r, self.r, self.r

    def contains(self, x, y):
        return x * x + y * y < self.r * self.r


@dataclass(frozen=True)
class Polygon:
    """Simple polygon; the closing edge is implicit."""

    vertices: tuple

    def __post_init__(self):
        vs = tuple((float(x), float(y)) for x, y in self.vertices)
        if len(vs) > 1 and vs[0] == vs[-1]:
            vs = vs[:-1]
        if len(vs) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def from_csv_text(cls, text: str) -> "Polygon":
        """One ``x,y`` vertex per line; blank lines, ``#`` comments and a header row are skipped."""
        vs = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            x, y = line.split(",")
            try:
                vs.append((float(x), float(y)))
            except ValueError:
                if vs:
                    raise
        return cls(tuple(vs))

    def bbox(self):
        xs, ys = zip(*self.vertices)
        return min(xs), min(ys), max(xs), max(ys)

    def contains(self, x, y):
        """Even-odd rule; points on an edge count as outside."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        inside = np.zeros(np.broadcast(x, y).shape, dtype=bool)
        on_edge = np.zeros_like(inside)
        vs = self.vertices
        scale = max(1.0, *(abs(c) for v in vs for c in v))
        for (x1, y1), (x2, y2) in zip(vs, vs[1:] + vs[:1]):
            cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1)
            within = (np.minimum(x1, x2) - _EDGE_TOL <= x) & (x <= np.maximum(x1, x2) + _EDGE_TOL)
            within &= (np.minimum(y1, y2) - _EDGE_TOL <= y) & (y <= np.maximum(y1, y2) + _EDGE_TOL)
            on_edge |= within & (np.abs(cross) <= _EDGE_TOL * scale * scale)
            crosses = (y1 > y) != (y2 > y)
            with np.errstate(divide="ignore", invalid="ignore"):
                xint = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            inside ^= crosses & (x < xint)
        return inside & ~on_edge


DomainSpec = Union[Rectangle, Disc, Polygon]


@dataclass(frozen=True)
class Grid:
    """Lattice ``origin + h (i, j)``; ``mask[j, i]`` marks interior nodes.

    ``index[j, i]`` numbers interior nodes row-major (``-1`` elsewhere).  The
    lattice always has an exterior layer around the interior, so every
    interior node has four lattice neighbours.
    """

    h: float
    origin: tuple
    mask: np.ndarray
    index: np.ndarray
    domain: Optional[DomainSpec] = None

    @property
    def n(self) -> int:
        return int(self.mask.sum())

    @property
    def shape(self):
        return self.mask.shape

    def coordinates(self):
        """Lattice coordinate arrays ``(X, Y)`` of shape ``mask.shape``."""
        ny, nx = self.mask.shape
        xs = self.origin[0] + self.h * np.arange(nx)
        ys = self.origin[1] + self.h * np.arange(ny)
        return np.meshgrid(xs, ys)

    def to_lattice(self, values) -> np.ndarray:
        """Scatter interior values onto the lattice, zero elsewhere."""
        out = np.zeros(self.mask.shape)
        out[self.mask] = values
        return out


def rasterize(domain: DomainSpec, h: float) -> Grid:
    """Interior lattice nodes of ``domain`` at spacing ``h``.

    Lattice points are the integer multiples of ``h``; a node is interior when
    it lies strictly inside the domain.

    Raises
    ------
    EmptyInterior
        No lattice node lies inside.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    x0, y0, x1, y1 = domain.bbox()
    i0, i1 = math.floor(x0 / h) - 1, math.ceil(x1 / h) + 1
    j0, j1 = math.floor(y0 / h) - 1, math.ceil(y1 / h) + 1
    xs = h * np.arange(i0, i1 + 1)
    ys = h * np.arange(j0, j1 + 1)
    X, Y = np.meshgrid(xs, ys)
    mask = np.asarray(domain.contains(X, Y), dtype=bool)
    if not mask.any():
        raise EmptyInterior(f"no lattice node of spacing {h!r} lies inside {domain!r}")
    index = np.full(mask.shape, -1, dtype=np.int64)
    index[mask] = np.arange(int(mask.sum()))
    return Grid(h=h, origin=(i0 * h, j0 * h), mask=mask, index=index, domain=domain)


def assemble(grid: Grid) -> scipy.sparse.csr_matrix:
    """5-point stencil of ``-(d_xx + d_yy)`` with zero Dirichlet data."""
    h2 = grid.h * grid.h
    idx = grid.index
    rows = [idx[grid.mask]]
    cols = [idx[grid.mask]]
    vals = [np.full(grid.n, 4.0 / h2)]
    for dj, di in ((0, 1), (0, -1), (1, 0), (-1, 0)):
        nb = np.roll(idx, (-dj, -di), axis=(0, 1))
        both = grid.mask & (nb >= 0)
        rows.append(idx[both])
        cols.append(nb[both])
        vals.append(np.full(int(both.sum()), -1.0 / h2))
    A = scipy.sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(grid.n, grid.n)
    )
    return A.tocsr()


@dataclass
class EigenPair:
    lam: float
    phi: np.ndarray
    residual: float


def default_seed() -> int:
    return int(os.environ.get("TRAPGAUSS_SEED", "0"))


def _fix_sign(v):
    k = int(np.argmax(np.abs(v)))
    return v if v[k] > 0 else -v


def smallest_eigenpairs(A, k: int = 1, tol: float = EIG_TOL, seed: Optional[int] = None,
                        maxiter: Optional[int] = None) -> list[EigenPair]:
    """The ``k`` smallest eigenpairs of a symmetric positive-definite matrix.

    Small problems are solved densely; larger ones by shift-invert Lanczos
    around zero with a start vector drawn from ``seed`` (default
    ``TRAPGAUSS_SEED``, else 0).  A final Rayleigh-Ritz step makes the
    vectors orthonormal within clusters.  Each vector's largest entry is
    positive.

    Raises
    ------
    NoConvergence
        The iteration fails or a residual ``|A phi - lam phi| / lam`` exceeds ``tol``.
    """
    N = A.shape[0]
    if not 1 <= k <= N:
        raise ValueError(f"k must lie in [1, {N}]")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if N <= DENSE_LIMIT or k >= N - 1:
        dense = A.toarray() if scipy.sparse.issparse(A) else np.asarray(A)
        lam, vec = scipy.linalg.eigh(dense, subset_by_index=[0, k - 1])
    else:
        rng = np.random.default_rng(default_seed() if seed is None else seed)
        try:
            lam, vec = scipy.sparse.linalg.eigsh(
                A.tocsc(), k=k, sigma=0.0, which="LM", v0=rng.standard_normal(N),
                tol=tol * 1e-3, maxiter=maxiter,
            )
        except scipy.sparse.linalg.ArpackNoConvergence as exc:
            raise NoConvergence(f"eigensolver did not converge: {exc}") from None
        Q, _ = np.linalg.qr(vec)
        lam, S = np.linalg.eigh(Q.T @ (A @ Q))
        vec = Q @ S
    order = np.argsort(lam)
    out = []
    for j in order:
        v = _fix_sign(vec[:, j] / np.linalg.norm(vec[:, j]))
        lj = float(lam[j])
        res = float(np.linalg.norm(A @ v - lj * v)) / abs(lj)
        if not res <= tol:
            raise NoConvergence(f"eigenpair {len(out)} has residual {res:.3e} above {tol:.3e}")
        out.append(EigenPair(lj, v, res))
    return out


@dataclass
class RectangleMode:
    lam: float
    a: float
    b: float
    m: int
    n: int

    def phi(self, u, v):
        return jets.sin((self.m * math.pi / self.a) * u) * jets.sin((self.n * math.pi / self.b) * v)


def rectangle_oracle(a: float, b: float, m: int, n: int) -> RectangleMode:
    """Exact Dirichlet mode ``sin(m pi u / a) sin(n pi v / b)`` of ``(0,a) x (0,b)``."""
    if not (a > 0 and b > 0) or m < 1 or n < 1:
        raise ValueError("need a, b > 0 and m, n >= 1")
    return RectangleMode(math.pi**2 * (m * m / (a * a) + n * n / (b * b)), a, b, m, n)


@dataclass
class ForgedSurface:
    """Graph ``(phi, u, v, phi)`` sampled on the full lattice of a grid."""

    grid: Grid
    phi: np.ndarray  # lattice-shaped, zero outside the interior

    def positions(self) -> np.ndarray:
        X, Y = self.grid.coordinates()
        return np.stack([self.phi, X, Y, self.phi], axis=-1)

    def csv_text(self) -> str:
        """Row-major ``u,v,phi`` table of the interior nodes."""
        X, Y = self.grid.coordinates()
        m = self.grid.mask
        lines = ["u,v,phi"]
        lines += [f"{float(x)!r},{float(y)!r},{float(p)!r}" for x, y, p in zip(X[m], Y[m], self.phi[m])]
        return "\n".join(lines) + "\n"


@dataclass
class ForgeResult:
    surface: ForgedSurface
    lam: float
    C: np.ndarray
    residual: float
    nodes: int
    reference_lam: Optional[float] = None
    reference_C: Optional[np.ndarray] = None
    reference_residual: Optional[float] = None

    @property
    def dominant_slot(self) -> tuple:
        k = int(np.argmax(np.abs(self.C)))
        return E41.pairs[k], float(self.C[k])


def _gauss_map_fields(phi, mask, h):
    """Plücker components of ``nu`` from central differences (zero outside)."""
    pu = (np.roll(phi, -1, axis=1) - np.roll(phi, 1, axis=1)) / (2 * h)
    pv = (np.roll(phi, -1, axis=0) - np.roll(phi, 1, axis=0)) / (2 * h)
    one = np.ones_like(phi)
    nu = np.stack([-pv, pu, 0 * phi, one, pv, -pu], axis=-1)
    return nu * mask[..., None]


def _stencil(F, h):
    """Positive 5-point Laplacian of each component of a lattice field."""
    nb = (
        np.roll(F, 1, axis=0) + np.roll(F, -1, axis=0) + np.roll(F, 1, axis=1) + np.roll(F, -1, axis=1)
    )
    return (4 * F - nb) / (h * h)


def _fit(nu, dnu, lam):
    C = np.mean(dnu / lam - nu, axis=0)
    res = float(np.max(np.linalg.norm(dnu - lam * (nu + C), axis=1)))
    return C, res


def forge(grid: Grid, ep: EigenPair, reference_lam: Optional[float] = None) -> ForgeResult:
    """Build the graph surface of ``ep`` and check ``Delta nu = lam (nu + C)``.

    ``phi`` is scaled to unit discrete L2 norm on the domain.  ``nu`` comes
    from central differences of ``phi`` and ``Delta nu`` from the 5-point
    stencil, evaluated at nodes whose four neighbours are interior.  ``C`` is
    the least-squares constant for the fixed ``lam``; ``residual`` is the
    largest Euclidean misfit.  With ``reference_lam`` (e.g. the exact
    continuum eigenvalue) the same check is repeated against it, which
    measures the discretization error.
    """
    if ep.phi.shape != (grid.n,):
        raise ValueError("eigenpair does not belong to this grid")
    phi = grid.to_lattice(ep.phi / grid.h)
    nu = _gauss_map_fields(phi, grid.mask, grid.h)
    dnu = _stencil(nu, grid.h)
    m = grid.mask
    core = m & np.roll(m, 1, 0) & np.roll(m, -1, 0) & np.roll(m, 1, 1) & np.roll(m, -1, 1)
    if not core.any():
        raise EmptyInterior("no interior node has four interior neighbours")
    nu_c, dnu_c = nu[core], dnu[core]
    C, res = _fit(nu_c, dnu_c, ep.lam)
    out = ForgeResult(ForgedSurface(grid, phi), ep.lam, C, res, int(core.sum()))
    if reference_lam is not None:
        out.reference_lam = float(reference_lam)
        out.reference_C, out.reference_residual = _fit(nu_c, dnu_c, reference_lam)
    return out


def discrete_l2_distance(grid: Grid, values, exact) -> float:
    """``min(|a - b|, |a + b|)`` in the discrete L2 norm after normalizing both."""
    a = np.asarray(values, dtype=float)
    b = np.asarray(exact, dtype=float)
    a = a / math.sqrt(np.sum(a * a) * grid.h**2)
    b = b / math.sqrt(np.sum(b * b) * grid.h**2)
    return min(math.sqrt(np.sum((a - b) ** 2) * grid.h**2), math.sqrt(np.sum((a + b) ** 2) * grid.h**2))
