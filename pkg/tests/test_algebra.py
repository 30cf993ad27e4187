import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from trapgauss.algebra import CausalClass, Signature
from trapgauss.errors import DegenerateSpan, SignatureMismatch

E41 = Signature(4, 1)
E51 = Signature(5, 1)
E52 = Signature(5, 2)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
vec4 = arrays(float, 4, elements=finite)


def test_weights_put_timelike_axes_first():
    assert E41.weights.tolist() == [-1, 1, 1, 1]
    assert E52.weights.tolist() == [-1, -1, 1, 1, 1]


def test_invalid_signature():
    with pytest.raises(ValueError):
        Signature(3, 4)


def test_pluecker_order_is_lexicographic():
    assert E41.pairs == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert E41.slot(1, 2) == 3


@pytest.mark.parametrize("sig, dim, index", [(E41, 6, 3), (E51, 10, 4), (E52, 10, 6)])
def test_bivector_index(sig, dim, index):
    # count coordinate bivectors with negative self product, straight from the definition
    neg = 0
    for i, j in itertools.combinations(range(sig.dim), 2):
        b = sig.wedge(sig.basis(i), sig.basis(j))
        neg += sig.bivector_inner(b, b) < 0
    assert sig.bivector_dim == dim
    assert neg == index == sig.bivector_index


@given(vec4, vec4)
def test_wedge_antisymmetric(a, b):
    np.testing.assert_array_equal(E41.wedge(a, b), -E41.wedge(b, a))


@given(vec4, vec4, vec4, vec4)
def test_decomposable_inner_product(a, b, c, d):
    lhs = E41.bivector_inner(E41.wedge(a, b), E41.wedge(c, d))
    rhs = E41.inner(a, c) * E41.inner(b, d) - E41.inner(a, d) * E41.inner(b, c)
    scale = 1 + np.prod([np.linalg.norm(x) for x in (a, b, c, d)])
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_length_mismatch():
    with pytest.raises(SignatureMismatch):
        E41.inner(np.ones(3), np.ones(4))
    with pytest.raises(SignatureMismatch):
        E41.bivector_inner(np.ones(6), np.ones(10))


@pytest.mark.parametrize(
    "u, expected",
    [
        ([1, 0, 0, 1], CausalClass.LIGHTLIKE),
        ([1, 0, 0, 0], CausalClass.TIMELIKE),
        ([0, 1, 0, 0], CausalClass.SPACELIKE),
        ([0, 0, 0, 0], CausalClass.ZERO),
        ([1e6, 0, 0, 1e6 + 1e-4], CausalClass.LIGHTLIKE),
    ],
)
def test_causal_class(u, expected):
    assert E41.causal_class(np.array(u, dtype=float)) is expected


def test_causal_class_rejects_bad_tol():
    with pytest.raises(ValueError):
        E41.causal_class(np.ones(4), tol=0)


@given(arrays(float, (3, 4), elements=finite))
def test_orthonormalize_reproduces_span(vs):
    try:
        frame, signs = E41.orthonormalize(list(vs))
    except DegenerateSpan:
        return
    F = np.array(frame)
    G = np.array([[E41.inner(a, b) for b in frame] for a in frame])
    np.testing.assert_allclose(G, np.diag(signs), atol=1e-8)
    for v in vs:
        coef, *_ = np.linalg.lstsq(F.T, v, rcond=None)
        assert np.linalg.norm(F.T @ coef - v) <= 1e-10 * (1 + np.linalg.norm(v))


def test_orthonormalize_rejects_null_vector():
    with pytest.raises(DegenerateSpan):
        E41.orthonormalize([np.array([1.0, 0, 0, 1])])


def test_orthonormalize_examples():
    frame, signs = E41.orthonormalize([np.array([2.0, 0, 0, 0])])
    np.testing.assert_array_equal(frame[0], [1, 0, 0, 0])
    assert signs == [-1]
    frame, signs = E41.orthonormalize([np.array([0, 3.0, 0, 0]), np.array([0, 4.0, 5, 0])])
    np.testing.assert_allclose(frame, [[0, 1, 0, 0], [0, 0, 1, 0]], atol=1e-15)
    assert signs == [1, 1]


def test_orthonormalize_rejects_dependent_vectors():
    with pytest.raises(DegenerateSpan):
        E41.orthonormalize([np.ones(4), np.ones(4)])
