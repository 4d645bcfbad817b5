import numpy as np
import pytest
from scipy.integrate import trapezoid

from ioncavity import BathSpec, beta_from_temperature, build_profile, c_of_t, gamma_of_t
from ioncavity.errors import GridMiss, InvalidParams

from conftest import IDX_45

CUTOFF = 519.3
BETA = 5.881e-4
A11 = 8.95e6 / np.sqrt(15.0)


def _oracle(kappa, t, cutoff=CUTOFF, beta=BETA, points=1_000_001):
    w = np.linspace(0.0, 3.0 * cutoff, points)
    wn = w[1:]
    damp = np.exp(-wn / cutoff)
    f_gamma = np.empty_like(w)
    f_gamma[0] = t * t / (2.0 * beta)
    f_gamma[1:] = damp / (wn * np.tanh(0.5 * beta * wn)) * np.sin(0.5 * wn * t) ** 2
    f_c = np.zeros_like(w)
    f_c[1:] = damp / wn * (np.sin(wn * t) - wn * t)
    return 8.0 * kappa * trapezoid(f_gamma, w), kappa * trapezoid(f_c, w)


def _spec(kappa, **kw):
    return BathSpec(kappa=kappa, cutoff=CUTOFF, beta=BETA, **kw)


@pytest.mark.parametrize(
    "kappa, t_deg",
    [
        (0.01, 1.0),
        (0.01, 5.0),
        (0.01, 20.0),
        (0.01, 45.0),
        (0.01, 90.0),
        (0.01, 135.0),
        (0.01, 180.0),
        (0.1, 45.0),
        (0.001, 90.0),
        (0.05, 10.0),
    ],
)
def test_integrals_match_trapezoid_oracle(kappa, t_deg):
    t = np.deg2rad(t_deg)
    gamma_ref, c_ref = _oracle(kappa, t)
    spec = _spec(kappa)
    assert gamma_of_t(spec, t) == pytest.approx(gamma_ref, rel=1e-6)
    assert c_of_t(spec, t) == pytest.approx(c_ref, rel=1e-6)


def test_zero_kappa_and_zero_time():
    assert gamma_of_t(_spec(0.0), 1.0) == 0.0
    assert c_of_t(_spec(0.0), 1.0) == 0.0
    assert gamma_of_t(_spec(0.1), 0.0) == 0.0
    assert c_of_t(_spec(0.1), 0.0) == 0.0


def test_gamma_is_quadratic_at_short_times():
    spec = _spec(0.01)
    ts = np.geomspace(1e-7, 1e-5, 5)
    ratios = np.array([gamma_of_t(spec, t) / t ** 2 for t in ts])
    assert ratios.max() / ratios.min() - 1.0 < 5e-4


def test_gamma_grows_with_kappa():
    t = np.deg2rad(30.0)
    values = [gamma_of_t(_spec(k), t) for k in (0.001, 0.01, 0.02, 0.05, 0.1)]
    assert np.all(np.diff(values) > 0)


def test_scaled_and_physical_units_agree():
    beta_phys = beta_from_temperature(0.03)
    physical = BathSpec(kappa=0.01, cutoff=1.2e9, beta=beta_phys, quad_rel_tol=1e-10)
    scaled = BathSpec(kappa=0.01, cutoff=1.2e9 / A11, beta=beta_phys * A11, quad_rel_tol=1e-10)
    for t_scaled in (0.01, 0.3, 1.5):
        t_phys = t_scaled / A11
        assert gamma_of_t(physical, t_phys) == pytest.approx(gamma_of_t(scaled, t_scaled), rel=1e-9)
        assert c_of_t(physical, t_phys) == pytest.approx(c_of_t(scaled, t_scaled), rel=1e-9)


def test_beta_from_temperature():
    assert beta_from_temperature(0.03) == pytest.approx(2.546e-10, rel=1e-3)
    assert beta_from_temperature(0.03) * A11 == pytest.approx(BETA, rel=2e-3)
    with pytest.raises(InvalidParams):
        beta_from_temperature(0.0)


def test_profile_matches_pointwise_calls(scenario, profiles):
    profile = profiles[0.1]
    spec = scenario.bath.with_kappa(0.1)
    for idx in range(0, 721, 30):
        t = scenario.times[idx]
        assert profile.gamma[idx] == pytest.approx(gamma_of_t(spec, t), rel=1e-14, abs=0.0)
        assert profile.c[idx] == pytest.approx(c_of_t(spec, t), rel=1e-14, abs=0.0)


def test_profile_shapes_and_signs(scenario, profiles):
    for kappa, profile in profiles.items():
        assert len(profile) == 721
        assert profile.gamma[0] == 0.0 and profile.c[0] == 0.0
        assert np.all(profile.gamma >= 0.0)
        assert np.all(profile.c <= 0.0)
        np.testing.assert_allclose(profile.phi, 4.0 * scenario.params.mu_mn * scenario.params.a_mn * profile.c)
        if kappa > 0:
            assert np.all(np.diff(profile.c) < 0.0)


def test_zero_kappa_profile_is_zero(profiles):
    profile = profiles[0.0]
    assert not profile.gamma.any() and not profile.c.any() and not profile.phi.any()


def test_profile_is_read_only(profiles):
    with pytest.raises(ValueError):
        profiles[0.01].gamma[3] = 1.0


def test_profile_lookup(scenario, profiles):
    profile = profiles[0.01]
    t = scenario.times[IDX_45]
    gamma, c, phi = profile.at(t)
    assert gamma == profile.gamma[IDX_45]
    assert c == profile.c[IDX_45]
    with pytest.raises(GridMiss):
        profile.at(0.5 * (scenario.times[1] + scenario.times[2]))


def test_single_point_grid(params):
    profile = build_profile(_spec(0.1), params, [0.0])
    assert profile.at(0.0) == (0.0, 0.0, 0.0)


def test_interpolated_lookup(params):
    grid = np.deg2rad(np.linspace(0.0, 180.0, 37))
    profile = build_profile(_spec(0.01), params, grid, interpolate=True)
    t = 0.5 * (grid[10] + grid[11])
    gamma, c, _ = profile.at(t)
    assert profile.c[11] < c < profile.c[10]
    assert gamma >= 0.0
    with pytest.raises(GridMiss):
        profile.at(grid[-1] + 0.1)


@pytest.mark.parametrize("grid", [[], [-0.1, 0.0], [0.0, 0.2, 0.1], [0.0, 0.0]])
def test_invalid_grids(params, grid):
    with pytest.raises(ValueError):
        build_profile(_spec(0.01), params, grid)


def test_profile_requires_derived_params():
    from ioncavity import SystemParams

    with pytest.raises(InvalidParams):
        build_profile(_spec(0.01), SystemParams(1.0, 1.0, 0.1), [0.0, 0.1])


@pytest.mark.parametrize("kwargs", [dict(kappa=-0.1), dict(cutoff=0.0), dict(beta=-1.0)])
def test_invalid_bath(kwargs):
    values = dict(kappa=0.01, cutoff=CUTOFF, beta=BETA)
    values.update(kwargs)
    with pytest.raises(InvalidParams):
        BathSpec(**values)


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        gamma_of_t(_spec(0.01), -1.0)
