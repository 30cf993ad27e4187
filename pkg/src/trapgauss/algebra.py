"""Linear algebra over pseudo-Euclidean spaces and their bivector spaces.

Vectors are plain 1-d numpy arrays; a :class:`Signature` supplies the metric.
Axes ``0 .. index-1`` are time-like, the rest space-like.  Bivectors are
stored in Plücker coordinates, slot ``(i, j)`` with ``i < j`` in lexicographic
order, e.g. ``(01, 02, 03, 12, 13, 23)`` for four dimensions.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegenerateSpan, SignatureMismatch

CAUSAL_TOL = 1e-9


class CausalClass(enum.Enum):
    SPACELIKE = "Spacelike"
    TIMELIKE = "Timelike"
    LIGHTLIKE = "Lightlike"
    ZERO = "Zero"


@dataclass(frozen=True)
class Signature:
    """Pseudo-Euclidean space E^m_s of dimension ``dim`` and index ``index``."""

    dim: int
    index: int = 0

    def __post_init__(self):
        if self.dim < 1 or not 0 <= self.index <= self.dim:
            raise ValueError(f"invalid signature ({self.dim}, {self.index})")

    @cached_property
    def weights(self) -> np.ndarray:
        w = np.ones(self.dim)
        w[: self.index] = -1.0
        return w

    @cached_property
    def pairs(self) -> list[tuple[int, int]]:
        return list(itertools.combinations(range(self.dim), 2))

    @cached_property
    def bivector_weights(self) -> np.ndarray:
        w = self.weights
        return np.array([w[i] * w[j] for i, j in self.pairs])

    @property
    def bivector_dim(self) -> int:
        return self.dim * (self.dim - 1) // 2

    @property
    def bivector_index(self) -> int:
        return int(np.sum(self.bivector_weights < 0))

    def slot(self, i: int, j: int) -> int:
        """Plücker slot of the coordinate bivector ``E_i ^ E_j`` (``i < j``)."""
        return self.pairs.index((i, j))

    def basis(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim)
        e[i] = 1.0
        return e

    def _check(self, *vs, size=None):
        size = self.dim if size is None else size
        for v in vs:
            if np.shape(v) != (size,):
                raise SignatureMismatch(
                    f"expected length {size} for signature ({self.dim},{self.index}), "
                    f"got shape {np.shape(v)}"
                )

    def inner(self, u, v) -> float:
        self._check(u, v)
        return math.fsum(np.asarray(u) * np.asarray(v) * self.weights)

    def norm2(self, u) -> float:
        return self.inner(u, u)

    def wedge(self, u, v) -> np.ndarray:
        self._check(u, v)
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return np.array([u[i] * v[j] - u[j] * v[i] for i, j in self.pairs])

    def bivector_inner(self, b1, b2) -> float:
        self._check(b1, b2, size=self.bivector_dim)
        return math.fsum(np.asarray(b1) * np.asarray(b2) * self.bivector_weights)

    def causal_class(self, u, tol: float = CAUSAL_TOL) -> CausalClass:
        """Causal character of ``u`` with a scale-relative light-like band."""
        if tol <= 0:
            raise ValueError("tol must be positive")
        self._check(u)
        e2 = float(np.dot(u, u))
        if math.sqrt(e2) <= tol:
            return CausalClass.ZERO
        q = self.inner(u, u)
        if abs(q) <= tol * e2:
            return CausalClass.LIGHTLIKE
        return CausalClass.SPACELIKE if q > 0 else CausalClass.TIMELIKE

    def orthonormalize(self, vs, tol: float = CAUSAL_TOL):
        """Gram-Schmidt under the indefinite metric, in the given order.

        Returns
        -------
        frame : list of ndarray
            Vectors with ``<f_i, f_j> = 0`` for ``i != j``.
        signs : list of int
            ``<f_i, f_i>``, each +1 or -1.

        Raises
        ------
        DegenerateSpan
            If an intermediate vector is (nearly) light-like or zero.
        """
        frame, signs = [], []
        for k, v in enumerate(vs):
            w = np.array(v, dtype=float)
            self._check(w)
            for f, s in zip(frame, signs):
                w = w - s * self.inner(w, f) * f
            n = self.inner(w, w)
            e2 = float(np.dot(w, w))
            # a residue of norm <= tol |v| means v was (nearly) dependent on the frame
            if e2 <= tol * tol * float(np.dot(v, v)) or abs(n) <= tol * e2:
                raise DegenerateSpan(f"vector {k} is light-like or dependent after projection")
            frame.append(w / math.sqrt(abs(n)))
            signs.append(1 if n > 0 else -1)
        return frame, signs


MINKOWSKI = Signature(4, 1)
