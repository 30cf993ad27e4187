import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trapgauss.catalog import get_entry
from trapgauss.classify import (
    GaussSample,
    Kind,
    admissible_global_eigenvalue,
    classify,
    fit_C,
    fit_first_kind,
    sample_gauss_map,
    second_kind_structure,
)
from trapgauss.errors import AllHarmonic, DegenerateBasis, RankDeficient
from trapgauss.geometry import point_geometry


def synthetic(seed, n=12, f=None, C=None, dim=6):
    rng = np.random.default_rng(seed)
    C = rng.normal(size=dim) if C is None else np.asarray(C, dtype=float)
    fs = rng.uniform(0.5, 3.0, size=n) * rng.choice([-1, 1], size=n) if f is None else np.broadcast_to(f, n)
    out = []
    for k in range(n):
        nu = rng.normal(size=dim)
        nu /= np.linalg.norm(nu)
        out.append(GaussSample((k, 0), nu, fs[k] * (nu + C)))
    return out, np.array(fs, dtype=float), C


@given(st.integers(0, 2**32 - 1))
def test_synthetic_recovery(seed):
    samples, fs, C0 = synthetic(seed)
    fit = fit_C(samples)
    assert fit.null_dim == 0
    np.testing.assert_allclose(fit.C, C0, atol=1e-8 * (1 + np.abs(C0).max()))
    np.testing.assert_allclose(fit.f, fs, rtol=1e-8, atol=1e-8)
    assert fit.residual <= 1e-10


@given(st.integers(0, 2**32 - 1), st.floats(0.01, 100.0), st.sampled_from([1, -1]))
def test_scale_gauge(seed, k, sign):
    k *= sign
    samples, _, _ = synthetic(seed)
    scaled = [GaussSample(s.point, s.nu, k * s.dnu) for s in samples]
    a, b = fit_C(samples), fit_C(scaled)
    np.testing.assert_allclose(b.C, a.C, atol=1e-9 * (1 + np.abs(a.C).max()))
    np.testing.assert_allclose(b.f, k * np.array(a.f), rtol=1e-9)
    assert classify(samples).kind is classify(scaled).kind


def test_first_kind_wins_when_both_fit():
    samples, _, _ = synthetic(3, f=2.5, C=np.zeros(6))
    tax = classify(samples)
    assert tax.kind is Kind.GLOBAL_FIRST_KIND
    assert tax.lam == pytest.approx(2.5, abs=1e-12)
    assert tax.C is None


def test_proper_first_kind():
    samples, _, _ = synthetic(4, C=np.zeros(6))
    assert classify(samples).kind is Kind.PROPER_POINTWISE_FIRST_KIND


def test_global_and_proper_second_kind():
    C = np.array([0, 0, 0, -1.0, 0, 0])
    tax = classify(synthetic(5, f=-7.0, C=C)[0])
    assert tax.kind is Kind.GLOBAL_SECOND_KIND
    assert tax.lam == pytest.approx(-7.0)
    np.testing.assert_allclose(tax.C, C, atol=1e-10)
    assert classify(synthetic(6, C=C)[0]).kind is Kind.PROPER_POINTWISE_SECOND_KIND


def test_not_one_type():
    rng = np.random.default_rng(7)
    samples = [GaussSample((k, 0), rng.normal(size=6), rng.normal(size=6)) for k in range(10)]
    assert classify(samples).kind is Kind.NOT_POINTWISE_ONE_TYPE


def test_harmonic_and_zero_samples():
    nu = np.eye(6)
    zero = [GaussSample((k, 0), nu[k], np.zeros(6)) for k in range(6)]
    assert classify(zero).kind is Kind.HARMONIC
    with pytest.raises(AllHarmonic):
        fit_C(zero)
    samples, _, _ = synthetic(8)
    fit = fit_C(samples + zero[:2])
    assert fit.f[-2:] == [None, None]
    assert fit.residual >= 0


def test_rank_deficiency():
    samples, _, _ = synthetic(9, n=2)
    with pytest.raises(RankDeficient):
        fit_C(samples)
    # every nu equal: C is only known modulo nu
    nu = np.eye(6)[0]
    same = [GaussSample((k, 0), nu, (k + 1.0) * (nu + np.eye(6)[1])) for k in range(5)]
    fit = fit_C(same)
    assert fit.null_dim > 0
    with pytest.raises(RankDeficient):
        fit_C(same, min_norm=False)


def test_first_kind_fit_has_zero_C():
    samples, _, _ = synthetic(10)
    assert not fit_first_kind(samples).C.any()


def test_graph_second_kind_structure():
    for name in ("exp-example", "square-eigenfunction"):
        entry = get_entry(name)
        grid = entry.immersion.domain.grid(6, 6)
        tax = classify(sample_gauss_map(entry.immersion, grid))
        assert tax.kind in (Kind.GLOBAL_SECOND_KIND, Kind.PROPER_POINTWISE_SECOND_KIND)
        for u, v in grid:
            pg = point_geometry(entry.immersion, u, v, laplacians=False)
            assert second_kind_structure(tax.fit, pg).residual <= 1e-6


def test_second_kind_structure_needs_nonzero_H():
    pg = point_geometry(get_entry("plane").immersion, 0.1, 0.2, laplacians=False)
    with pytest.raises(DegenerateBasis):
        second_kind_structure(np.zeros(6), pg)


def test_desitter_global_eigenvalue_is_admissible():
    entry = get_entry("desitter-product")
    grid = entry.immersion.domain.grid(5, 5)
    tax = classify(sample_gauss_map(entry.immersion, grid, entry.spaceform))
    assert tax.kind is Kind.GLOBAL_FIRST_KIND
    assert admissible_global_eigenvalue(tax.lam, entry.spaceform.delta)
    assert not admissible_global_eigenvalue(3.0, 1)
    assert not admissible_global_eigenvalue(0.0, 0)


def test_structural_route_gives_same_classification():
    entry = get_entry("exp-example")
    grid = entry.immersion.domain.grid(5, 5)
    a = classify(sample_gauss_map(entry.immersion, grid, route="direct"))
    b = classify(sample_gauss_map(entry.immersion, grid, route="structural"))
    assert a.kind is b.kind
    np.testing.assert_allclose(a.C, b.C, atol=1e-8)


def test_second_kind_structure_trivial_case():
    pg = point_geometry(get_entry("harmonic-gauss").immersion, 0.4, 0.5, laplacians=False)
    out = second_kind_structure(pg.nu, pg)
    assert out.C12 == pytest.approx(1.0, abs=1e-12)
    assert max(abs(out.C34), abs(out.C1), abs(out.C2), out.residual) <= 1e-12


def test_fit_first_kind_on_harmonic_data():
    entry = get_entry("harmonic-gauss")
    with pytest.raises(AllHarmonic):
        fit_first_kind(sample_gauss_map(entry.immersion, entry.immersion.domain.grid(4, 4)))
