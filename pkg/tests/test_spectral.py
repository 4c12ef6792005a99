import numpy as np
import pytest

from dkt.floquet import certify_projective_period, dkt
from dkt.spectral import (
    DEFAULT_EDGES,
    compare_to_reference,
    degeneracy_profile,
    goe_levels,
    parity_sectors,
    poisson_levels,
    quasi_energies,
    ratio_histogram,
    sample_goe_reference,
    sample_poisson_reference,
    spacing_ratios,
)
from dkt.spin import SpinSystem, exp_quadratic_z


@pytest.fixture(scope="module")
def poisson1():
    return sample_poisson_reference(seed=11, order=1)


@pytest.fixture(scope="module")
def goe_refs():
    pool = goe_levels(200, 400, 12)
    from dkt.spectral import _reference
    return {k: _reference(pool, k, DEFAULT_EDGES) for k in (1, 2, 3, 4)}


def test_identity_phases():
    spec = quasi_energies(np.eye(6))
    np.testing.assert_array_equal(spec.phases, np.zeros(6))
    assert degeneracy_profile(spec) == [(0.0, 6)]


def test_diagonal_phases():
    spec = quasi_energies(exp_quadratic_z(SpinSystem(1), np.pi))
    np.testing.assert_allclose(spec.phases, [0, np.pi, np.pi], atol=1e-14)


def test_rejects_non_unitary():
    with pytest.raises(ValueError):
        quasi_energies(np.diag([1.0, 1.1]))


def test_wraparound_cluster():
    prof = degeneracy_profile(np.array([1e-10, 2 * np.pi - 1e-10, 1.0]), 1e-8)
    assert sorted(c for _, c in prof) == [1, 2]


def test_periodic_cluster_phases_align():
    U = dkt(6, 6 * np.pi / 2, 0.7)
    m = certify_projective_period(U).period
    phases = np.array([p for p, _ in degeneracy_profile(quasi_energies(U), 1e-8)])
    z = np.exp(1j * m * phases)
    assert np.max(np.abs(z - z[0])) < 1e-7


def test_generic_spectrum_is_nearly_simple():
    prof = degeneracy_profile(quasi_energies(dkt(100, 3.0)), 1e-8)
    assert max(c for _, c in prof) <= 2


def test_parity_sectors_partition_spectrum():
    U = dkt(20.5, 20.5 * np.pi / 2 * 1.01, 0.0)
    secs = parity_sectors(U)
    assert sum(len(s) for s in secs) == U.sys.d
    joined = np.sort(np.concatenate([s.phases for s in secs]))
    np.testing.assert_allclose(joined, quasi_energies(U).phases, atol=1e-9)


def test_picket_fence():
    levels = np.arange(50) * 0.1
    for k in (1, 2, 3, 4):
        np.testing.assert_allclose(spacing_ratios(levels, k, min_count=1).ratios, 1.0)


def test_ratio_arithmetic():
    r = spacing_ratios(np.array([0.0, 1.0, 3.0, 4.0]), 1, min_count=1)
    np.testing.assert_allclose(r.ratios, [2.0, 0.5])


def test_degenerate_windows_dropped():
    r = spacing_ratios(np.array([0, 1, 1, 2, 3.5, 4, 6.0]), 1, min_count=1)
    assert r.dropped == 2 and len(r.ratios) == 3
    with pytest.raises(ValueError):
        spacing_ratios(np.zeros(30), 1)
    with pytest.raises(ValueError):
        spacing_ratios(np.arange(30.0), 5)


def test_poisson_reference(poisson1):
    assert abs(poisson1.mean_ratio - (2 * np.log(2) - 1)) < 0.01
    body = poisson1.density[:-1]  # last bin also holds the r > 4 tail
    assert np.argmax(body) == 0
    assert np.all(np.diff(body[:20]) < 0)


def test_poisson_error_scaling():
    def spread(count):
        means = [sample_poisson_reference(count, 100, seed=s).mean_ratio for s in range(40)]
        return np.std(means)
    ratio = spread(100) / spread(400)
    assert 2 / 1.5 < ratio < 2 * 1.5


def test_goe_reference(goe_refs):
    g = goe_refs[1]
    assert abs(g.mean_ratio - 0.536) < 0.01
    body = g.density[:-1]
    assert body[0] < 0.3 * body.max() and body[0] < body[1] < body[2]
    means = [goe_refs[k].mean_ratio for k in (1, 2, 3, 4)]
    assert all(a < b for a, b in zip(means, means[1:]))


def test_reference_sizes_enforced():
    with pytest.raises(ValueError):
        poisson_levels(10, 10, 0)
    with pytest.raises(ValueError):
        goe_levels(10, 20, 0)


def test_reference_reproducible():
    a = sample_goe_reference(20, 100, seed=5)
    b = sample_goe_reference(20, 100, seed=5)
    assert a.density.tobytes() == b.density.tobytes()


def test_tv_distance(poisson1, goe_refs):
    assert compare_to_reference(poisson1, poisson1) == 0
    big_p = sample_poisson_reference(200, 1000, seed=3)
    assert big_p.count >= 1e5 and goe_refs[1].count >= 1e4
    assert compare_to_reference(big_p, goe_refs[1]) > 0.2
    other = ratio_histogram(spacing_ratios(np.cumsum(np.ones(100)), 1), np.linspace(0, 4, 21))
    with pytest.raises(ValueError):
        compare_to_reference(other, poisson1)


def test_histogram_overflow_kept():
    levels = np.array([0, 1, 11, 12, 13.0])
    h = ratio_histogram(spacing_ratios(levels, 1, min_count=1))
    assert np.isclose(h.mass.sum(), 1)
    assert h.mass[-1] > 0
