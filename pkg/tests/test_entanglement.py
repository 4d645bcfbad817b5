import math

import numpy as np
import pytest

from ioncavity import (
    DensityOperator,
    GhzTarget,
    TripartiteIndex,
    embed_tripartite,
    evolve_dephasing,
    linear_entropy,
    negativity,
    partial_transpose,
    reduced_density,
)
from ioncavity.errors import DimensionMismatch
from ioncavity.evolution import trusted_density
from ioncavity.linalg import hermitian_eigvals

from conftest import IDX_45, IDX_90, random_density

CUTS = ("A", "B", "C")


def _ghz8():
    return embed_tripartite(GhzTarget.minus().projector())


def _noisy_ghz(p):
    return DensityOperator(p * _ghz8().matrix + (1.0 - p) * np.eye(8) / 8.0, "tripartite")


def test_flat_index_order():
    idx = TripartiteIndex()
    assert idx.dim == 8
    assert [idx.flat(*bits) for bits in [(0, 0, 0), (1, 0, 0), (0, 1, 1), (1, 1, 1)]] == list(idx.embed)
    with pytest.raises(ValueError):
        idx.axis("D")


def test_embedding_places_model_kets(rho0):
    rho8 = embed_tripartite(rho0)
    expected = np.zeros((8, 8))
    expected[0, 0] = 1.0
    np.testing.assert_array_equal(rho8.matrix, expected)
    ghz = _ghz8().matrix
    assert ghz[0, 0] == pytest.approx(0.5) and ghz[7, 7] == pytest.approx(0.5)
    assert ghz[0, 7] == pytest.approx(0.5j)


def test_embedding_preserves_trace(rng):
    rho = DensityOperator(random_density(rng, 4))
    assert np.trace(embed_tripartite(rho).matrix).real == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(DimensionMismatch):
        embed_tripartite(DensityOperator(random_density(rng, 8)))


def test_partial_transpose_of_ghz():
    for cut in CUTS:
        values = hermitian_eigvals(partial_transpose(_ghz8(), subsystem=cut))
        assert values[0] == pytest.approx(-0.5, abs=1e-12)


def test_partial_transpose_is_an_involution(rng):
    rho = random_density(rng, 8)
    for cut in CUTS:
        twice = partial_transpose(partial_transpose(rho, subsystem=cut), subsystem=cut)
        np.testing.assert_array_equal(twice, rho)


def test_partial_transpose_of_product_state_keeps_spectrum(rng):
    rho_a = random_density(rng, 2)
    rho_bc = random_density(rng, 4)
    rho = np.kron(rho_a, rho_bc)
    np.testing.assert_allclose(
        hermitian_eigvals(partial_transpose(rho, subsystem="A")), hermitian_eigvals(rho), atol=1e-12
    )


def test_partial_transpose_dimension_check():
    with pytest.raises(DimensionMismatch):
        partial_transpose(np.eye(4) / 4)


def test_ghz_negativity():
    for cut in CUTS:
        assert negativity(_ghz8(), subsystem=cut) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("p, expected", [(0.6, 0.25), (0.2, 0.0), (1.0 / 7.0, 0.0)])
def test_noisy_ghz_negativity(p, expected):
    assert negativity(_noisy_ghz(p), subsystem="A") == pytest.approx(expected, abs=1e-10)


def test_negativity_of_separable_state(rng):
    rho = np.kron(random_density(rng, 2), random_density(rng, 4))
    assert negativity(trusted_density(rho, "tripartite"), subsystem="A") == 0.0


def test_reduced_density_of_ghz():
    for cut in CUTS:
        red = reduced_density(_ghz8(), keep=cut)
        np.testing.assert_allclose(red.matrix, np.eye(2) / 2, atol=1e-15)
        assert linear_entropy(red) == pytest.approx(1.0, abs=1e-14)


def test_reduced_density_of_product_state(rng):
    sigma, tau = random_density(rng, 2), random_density(rng, 2)
    ket0 = np.diag([1.0, 0.0])
    rho = trusted_density(np.kron(ket0, np.kron(sigma, tau)), "tripartite")
    np.testing.assert_allclose(reduced_density(rho, keep="A").matrix, ket0, atol=1e-15)
    np.testing.assert_allclose(reduced_density(rho, keep="B").matrix, sigma, atol=1e-15)
    np.testing.assert_allclose(reduced_density(rho, keep="C").matrix, tau, atol=1e-15)
    assert linear_entropy(reduced_density(rho, keep="A")) == pytest.approx(0.0, abs=1e-14)


def test_reduced_purity_is_bounded(rng):
    for _ in range(10):
        rho = DensityOperator(random_density(rng, 8), "tripartite")
        for cut in CUTS:
            m = reduced_density(rho, keep=cut).matrix
            assert np.trace(m).real == pytest.approx(1.0, abs=1e-12)
            assert np.trace(m @ m).real <= 1.0 + 1e-12


def test_linear_entropy_values():
    assert linear_entropy(DensityOperator(np.diag([0.75, 0.25]))) == pytest.approx(0.75)
    assert linear_entropy(DensityOperator(np.eye(2) / 2)) == pytest.approx(1.0)


def test_entanglement_at_ghz_point(rho0, eig, times, profiles):
    rho8 = embed_tripartite(evolve_dephasing(rho0, eig, profiles[0.0], times[IDX_45]))
    for cut in CUTS:
        assert negativity(rho8, subsystem=cut) == pytest.approx(0.5, abs=1e-9)
        assert linear_entropy(reduced_density(rho8, keep=cut)) == pytest.approx(1.0, abs=1e-9)
    product = embed_tripartite(evolve_dephasing(rho0, eig, profiles[0.0], times[0]))
    for cut in CUTS:
        assert negativity(product, subsystem=cut) == pytest.approx(0.0, abs=1e-10)
        assert linear_entropy(reduced_density(product, keep=cut)) == pytest.approx(0.0, abs=1e-10)


def _entanglement_rows(rho0, eig, profile, times, indices):
    rows = []
    for i in indices:
        rho8 = embed_tripartite(evolve_dephasing(rho0, eig, profile, times[i]))
        rows.append(
            [negativity(rho8, subsystem=cut) for cut in CUTS]
            + [linear_entropy(reduced_density(rho8, keep=cut)) for cut in CUTS]
        )
    return np.array(rows)


def test_phonon_and_photon_cuts_agree(rho0, eig, times, profiles):
    for profile in profiles.values():
        rows = _entanglement_rows(rho0, eig, profile, times, range(len(times)))
        np.testing.assert_allclose(rows[:, 1], rows[:, 2], atol=1e-10)
        np.testing.assert_allclose(rows[:, 4], rows[:, 5], atol=1e-10)
        assert rows[:, :3].max() <= 0.5 + 1e-10
        assert rows[:, :3].min() >= 0.0


def test_preset_negativities_match_lapack(rho0, eig, times, profiles):
    for profile in profiles.values():
        for t in times:
            rho8 = embed_tripartite(evolve_dephasing(rho0, eig, profile, t))
            for cut in CUTS:
                values = np.linalg.eigvalsh(partial_transpose(rho8, subsystem=cut))
                expected = -values[values < -1e-10].sum()
                assert negativity(rho8, subsystem=cut) == pytest.approx(expected, abs=1e-10)


def test_pure_state_negativity_follows_entropy(rho0, eig, times, profiles):
    rows = _entanglement_rows(rho0, eig, profiles[0.0], times, range(0, 721, 2))
    entangled = rows[:, 3] > 1e-8
    np.testing.assert_allclose(rows[entangled, 0], np.sqrt(rows[entangled, 3]) / 2.0, atol=1e-8)
    assert np.all(rows[entangled, 0] > 0.0)


def test_ion_negativity_drops_with_kappa(rho0, eig, times, profiles):
    first_peak = range(2, IDX_90 + 1, 2)
    peaks = {
        kappa: _entanglement_rows(rho0, eig, profiles[kappa], times, first_peak)[:, 0].max()
        for kappa in (0.0, 0.001, 0.01, 0.1)
    }
    assert peaks[0.0] == pytest.approx(0.5, abs=1e-9)
    assert peaks[0.1] == pytest.approx(0.0, abs=1e-10)
    assert peaks[0.001] < peaks[0.0]
    assert peaks[0.01] <= peaks[0.001] + 1e-12
    assert peaks[0.1] <= peaks[0.01] + 1e-12


def test_dephased_state_is_not_entangled_across_ion_cut(rho0, eig):
    from ioncavity import dephased_limit

    assert negativity(embed_tripartite(dephased_limit(rho0, eig)), subsystem="A") == 0.0
