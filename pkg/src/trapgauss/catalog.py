"""Graph surfaces ``x = (phi, u, v, phi)`` in Minkowski space and a catalog of named surfaces.

Every such graph is marginally trapped (or partly so) with flat induced
metric; the helpers here give the closed forms of ``H``, ``nu`` and
``Delta nu`` for it, the predicted ``(f, C)`` when ``phi`` solves a
semilinear equation, and the splitting of the position vector for
Helmholtz data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import jets
from .algebra import Signature
from .errors import HypothesisViolated
from .expr import Expr, parse
from .geometry import (
    DE_SITTER,
    MINKOWSKI,
    Domain,
    Immersion,
    SpaceForm,
    _jet_inner,
    laplace_beltrami,
)
from .jets import Jet

E41 = Signature(4, 1)
NULL_DIRECTION = np.array([1.0, 0.0, 0.0, 1.0])
HYPOTHESIS_TOL = 1e-8
UNIT_SQUARE = Domain((0.0, 1.0), (0.0, 1.0))


def _field(phi) -> Callable:
    """Accept an expression string, a parsed :class:`Expr` or a callable ``(U, V)``."""
    if isinstance(phi, str):
        return parse(phi)
    if isinstance(phi, Expr) or callable(phi):
        return phi
    raise TypeError(f"cannot use {phi!r} as a scalar field")


def _jet(phi, u, v, degree=3) -> Jet:
    U = Jet.variable(u, v, "u", degree)
    V = Jet.variable(u, v, "v", degree)
    out = phi(U, V)
    return out if isinstance(out, Jet) else Jet.constant(out, (u, v), degree)


def _flat_laplacian(p: Jet) -> Jet:
    """``-(p_uu + p_vv)``, degree lowered by two."""
    return -(jets.partial(jets.partial(p, "u"), "u") + jets.partial(jets.partial(p, "v"), "v"))


@dataclass(frozen=True)
class GraphImmersion(Immersion):
    phi: Optional[Callable] = None


def build_graph_immersion(phi, domain: Domain = UNIT_SQUARE) -> GraphImmersion:
    """The surface ``(phi, u, v, phi)`` over ``domain``; ``phi`` may be an expression string."""
    fn = _field(phi)

    def evaluate(u, v, degree):
        p = _jet(fn, u, v, degree)
        return [p, Jet.variable(u, v, "u", degree), Jet.variable(u, v, "v", degree), p]

    return GraphImmersion(evaluate, 4, domain, fn)


@dataclass
class GraphClosedForms:
    H: np.ndarray
    nu: np.ndarray
    dnu: np.ndarray


def graph_closed_forms(phi, u: float, v: float) -> GraphClosedForms:
    """Closed forms for the graph of ``phi`` at ``(u, v)``.

    ``H = -(Delta phi / 2) N``, ``nu = N ^ (-phi_v E1 + phi_u E2) + E1 ^ E2`` and
    ``Delta nu = N ^ (-Delta(phi_v) E1 + Delta(phi_u) E2)`` with ``N = (1,0,0,1)``.
    """
    p = _jet(_field(phi), u, v, 3)
    lap = _flat_laplacian(p)
    pu, pv = p.deriv(1, 0), p.deriv(0, 1)
    lap_u, lap_v = lap.deriv(1, 0), lap.deriv(0, 1)
    e1, e2 = E41.basis(1), E41.basis(2)
    nu = E41.wedge(NULL_DIRECTION, -pv * e1 + pu * e2) + E41.wedge(e1, e2)
    dnu = E41.wedge(NULL_DIRECTION, -lap_v * e1 + lap_u * e2)
    return GraphClosedForms(H=-(lap.value / 2) * NULL_DIRECTION, nu=nu, dnu=dnu)


@dataclass
class Prop3Prediction:
    """Predicted ``Delta nu = f (nu + C)`` data for ``phi = psi - c1 u - c2 v``."""

    f: Callable[[float, float], float]
    C: np.ndarray
    phi: Callable
    hypothesis_residual: float


def prop3_predict(F, psi, c1: float = 0.0, c2: float = 0.0, grid=(), tol: float = HYPOTHESIS_TOL):
    """Predict ``(f, C)`` for the graph of ``phi = psi - c1 u - c2 v`` where ``Delta psi = F(psi)``.

    ``f = F'(psi)`` with ``F'`` taken by jet differentiation of ``F``, and
    ``C = N ^ (0, -c2, c1, 0) - E1 ^ E2``.  The constants enter ``phi`` with
    a minus sign so that ``Delta phi_u = f (phi_u + c1)`` and
    ``Delta phi_v = f (phi_v + c2)``, which is what makes this ``C`` the
    right one.  The hypothesis is checked on ``grid`` with relative
    tolerance ``tol``.

    Raises
    ------
    HypothesisViolated
        ``Delta psi`` differs from ``F(psi)`` somewhere on the grid.
    """
    psi = _field(psi)
    worst = 0.0
    for u, v in grid:
        p = _jet(psi, u, v, 2)
        lhs = _flat_laplacian(p).value
        rhs = _scalar(F, p.value)
        err = abs(lhs - rhs) / (1.0 + abs(lhs))
        worst = max(worst, err)
        if err > tol:
            raise HypothesisViolated(
                f"Delta psi - F(psi) = {lhs - rhs!r} at {(u, v)} exceeds tolerance {tol!r}"
            )

    def f(u, v):
        t = Jet.variable(_scalar(psi, u, v), 0.0, "u", 1)
        out = F(t)
        return out.deriv(1, 0) if isinstance(out, Jet) else 0.0

    C = E41.wedge(NULL_DIRECTION, np.array([0.0, -c2, c1, 0.0])) - E41.wedge(E41.basis(1), E41.basis(2))

    def phi(U, V):
        return psi(U, V) - c1 * U - c2 * V

    return Prop3Prediction(f=f, C=C, phi=phi, hypothesis_residual=worst)


def _scalar(fn, *args) -> float:
    out = fn(*args)
    return out.value if isinstance(out, Jet) else float(out)


@dataclass
class NullTwoTypeSplit:
    x0: Immersion
    x1: Immersion
    residuals: tuple


def null_two_type_split(phi, lam: float, c1: float = 0.0, c2: float = 0.0, grid=(),
                        tol: float = HYPOTHESIS_TOL, domain: Domain = UNIT_SQUARE) -> NullTwoTypeSplit:
    """Split the graph of ``phi`` as ``x0 + x1`` with ``Delta x0 = 0`` and ``Delta x1 = lam x1``.

    The hypothesis, with the positive Laplacian, is ``Delta phi - lam phi = c1 u + c2 v``.
    ``residuals`` are the maxima over ``grid`` of ``|Delta x0|`` and
    ``|Delta x1 - lam x1|``, each Laplacian taken in the metric of the graph.

    Raises
    ------
    HypothesisViolated
        ``lam`` is zero or the Helmholtz-type equation fails on the grid.
    """
    if lam == 0:
        raise HypothesisViolated("lambda must be nonzero")
    fn = _field(phi)
    grid = list(grid)
    for u, v in grid:
        p = _jet(fn, u, v, 2)
        lhs = _flat_laplacian(p).value - lam * p.value
        rhs = c1 * u + c2 * v
        if abs(lhs - rhs) > tol * (1.0 + abs(lam * p.value)):
            raise HypothesisViolated(f"Delta phi - lambda phi - (c1 u + c2 v) = {lhs - rhs!r} at {(u, v)}")

    def drift(U, V):
        return (c1 * U + c2 * V) * (1.0 / lam)

    x0 = Immersion.from_coordinates(
        [lambda U, V: -drift(U, V), lambda U, V: U, lambda U, V: V, lambda U, V: -drift(U, V)], domain
    )
    x1 = Immersion.from_coordinates(
        [
            lambda U, V: fn(U, V) + drift(U, V),
            lambda U, V: 0.0 * U,
            lambda U, V: 0.0 * U,
            lambda U, V: fn(U, V) + drift(U, V),
        ],
        domain,
    )
    surface = build_graph_immersion(fn, domain)
    r0 = r1 = 0.0
    for u, v in grid:
        X = surface(u, v, 3)
        Xu = [jets.partial(c, "u") for c in X]
        Xv = [jets.partial(c, "v") for c in X]
        E, F, G = _jet_inner(Xu, Xu, E41), _jet_inner(Xu, Xv, E41), _jet_inner(Xv, Xv, E41)
        J0, J1 = x0(u, v, 3), x1(u, v, 3)
        r0 = max(r0, float(np.linalg.norm(laplace_beltrami(J0, E, F, G))))
        lap1 = laplace_beltrami(J1, E, F, G)
        r1 = max(r1, float(np.linalg.norm(lap1 - lam * np.array([c.value for c in J1]))))
    return NullTwoTypeSplit(x0, x1, (r0, r1))


@dataclass(frozen=True)
class CatalogEntry:
    """A named surface.  ``expected`` is documentation only; no code reads it."""

    name: str
    immersion: Immersion
    spaceform: SpaceForm
    description: str
    expected: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    @property
    def is_graph(self) -> bool:
        return isinstance(self.immersion, GraphImmersion)


DEFAULT_USER_EXPRESSION = "sin(u)*exp(v/2) + u*v"


def desitter_product() -> Immersion:
    """``(1, sin u, cos u cos v, cos u sin v, 1)`` in de Sitter space."""
    return Immersion.from_coordinates(
        [
            lambda U, V: 1.0 + 0.0 * U,
            lambda U, V: jets.sin(U),
            lambda U, V: jets.cos(U) * jets.cos(V),
            lambda U, V: jets.cos(U) * jets.sin(V),
            lambda U, V: 1.0 + 0.0 * U,
        ],
        Domain((-1.2, 1.2), (-math.pi, math.pi)),
    )


def exp_example_domain(eps: float = 0.1) -> Domain:
    return Domain((0.0, 1.0), (0.0, 1.0), lambda u, v: eps < u + v < 1.0)


def catalog(eps: float = 0.1, n: int = 1, expression: str = DEFAULT_USER_EXPRESSION) -> list[CatalogEntry]:
    """All named surfaces.  ``eps`` parametrizes exp-example, ``n`` square-eigenfunction."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    if n < 1:
        raise ValueError("n must be a positive integer")
    square = f"sin({n}*pi*u)*sin({n}*pi*v)"
    return [
        CatalogEntry(
            "plane",
            build_graph_immersion("0", Domain((-1.0, 1.0), (-1.0, 1.0))),
            MINKOWSKI,
            "space-like plane, phi = 0",
            {"trapped": "NotMarginallyTrapped", "taxonomy": "Harmonic", "K": 0.0},
        ),
        CatalogEntry(
            "harmonic-gauss",
            build_graph_immersion("u^2", UNIT_SQUARE),
            MINKOWSKI,
            "graph of phi = u^2; H = (1,0,0,1) and harmonic Gauss map",
            {"trapped": "MarginallyTrapped", "taxonomy": "Harmonic", "K": 0.0},
        ),
        CatalogEntry(
            "exp-example",
            build_graph_immersion("exp(1/(u+v))", exp_example_domain(eps)),
            MINKOWSKI,
            f"graph of phi = exp(1/(u+v)) on {eps} < u+v < 1",
            {
                "trapped": "MarginallyTrapped",
                "taxonomy": "ProperPointwiseSecondKind",
                "f": "-12/s^2 - 12/s^3 - 2/s^4, s = u+v",
                "C": "-E1^E2",
            },
            {"eps": eps},
        ),
        CatalogEntry(
            "square-eigenfunction",
            build_graph_immersion(square, UNIT_SQUARE),
            MINKOWSKI,
            f"graph of the Dirichlet eigenfunction {square} of the unit square",
            {
                "trapped": "PartlyMarginallyTrapped",
                "taxonomy": "GlobalSecondKind",
                "lambda": 2 * n * n * math.pi**2,
                "C": "-E1^E2",
            },
            {"n": n},
        ),
        CatalogEntry(
            "desitter-product",
            desitter_product(),
            DE_SITTER,
            "(1, sin u, cos u cos v, cos u sin v, 1) in de Sitter space",
            {"trapped": "MarginallyTrapped", "taxonomy": "GlobalFirstKind", "lambda": 2.0, "K": 1.0},
        ),
        CatalogEntry(
            "user-graph",
            build_graph_immersion(expression, Domain((-1.0, 1.0), (-1.0, 1.0))),
            MINKOWSKI,
            f"graph of the user expression {expression}",
            {},
            {"expression": expression},
        ),
    ]


def get_entry(name: str, **params) -> CatalogEntry:
    for entry in catalog(**params):
        if entry.name == name:
            return entry
    names = ", ".join(e.name for e in catalog())
    raise KeyError(f"unknown catalog entry {name!r}; available: {names}")
