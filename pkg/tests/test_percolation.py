import numpy as np
import pytest

import primlocal as pl
from primlocal.generators import GenSpec
from primlocal.percolation import ThetaProfile

# scalar bisection values for the 3-regular offspring fixed point, computed
# independently of the library and frozen here
ORACLE_D3 = {
    0.55: 0.452291510143,
    0.60: 0.703703703704,
    0.70: 0.921282798834,
    0.80: 0.984375000000,
    0.90: 0.998628257888,
}


def test_analytic_subcritical_zero():
    for p in (0.0, 0.2, 0.5):
        assert pl.analytic_theta_regular(3, p) == 0.0
    assert pl.analytic_theta_regular(4, 1.0 / 3.0) == 0.0


def test_analytic_full_survival():
    assert pl.analytic_theta_regular(3, 1.0) == pytest.approx(1.0, abs=1e-10)


def test_analytic_matches_frozen_oracle():
    for p, theta in ORACLE_D3.items():
        assert pl.analytic_theta_regular(3, p) == pytest.approx(theta, abs=1e-9)


def test_analytic_strictly_increasing_supercritical():
    grid = np.linspace(0.501, 1.0, 500)
    vals = np.array([pl.analytic_theta_regular(3, p) for p in grid])
    assert np.all(np.diff(vals) > 0)


def test_analytic_validation():
    with pytest.raises(ValueError):
        pl.analytic_theta_regular(2, 0.5)
    with pytest.raises(ValueError):
        pl.analytic_theta_regular(3, 1.5)


def test_empirical_theta_connected_at_one():
    spec = GenSpec(family="grid", side=20, seed=1)
    prof = pl.empirical_theta(spec, p_list=[0.5, 1.0], trials=3)
    assert prof.theta_regressed[-1] == pytest.approx(1.0)


def test_empirical_theta_critical_point_small():
    spec = GenSpec(family="random-regular", n=10_000, d=3, seed=2)
    prof = pl.empirical_theta(spec, p_list=[0.5], trials=5)
    assert prof.theta_mean[0] < 0.1


def test_empirical_theta_matches_analytic():
    spec = GenSpec(family="random-regular", n=20_000, d=3, seed=3)
    prof = pl.empirical_theta(spec, p_list=[0.6, 0.7, 0.8], trials=5)
    for p, t in zip(prof.p, prof.theta_regressed):
        assert abs(t - pl.analytic_theta_regular(3, p)) < 0.03


def test_empirical_theta_monotone_after_regression():
    spec = GenSpec(family="random-regular", n=2000, d=3, seed=4)
    prof = pl.empirical_theta(spec, trials=3)
    assert np.all(np.diff(prof.theta_regressed) >= 0)
    assert np.all((prof.theta_regressed >= 0) & (prof.theta_regressed <= 1))


def test_empirical_theta_validation():
    spec = GenSpec(family="random-regular", n=100, d=3, seed=0)
    with pytest.raises(ValueError):
        pl.empirical_theta(spec, p_list=[0.5, 0.4], trials=1)
    with pytest.raises(ValueError):
        pl.empirical_theta(spec, p_list=[0.0, 0.5], trials=1)
    with pytest.raises(ValueError):
        pl.empirical_theta(spec, trials=0)


def hand_profile():
    p = np.array([0.5, 0.55, 0.6, 0.65, 0.7])
    theta = np.array([0.0, 0.1, 0.25, 0.4, 0.53])
    return ThetaProfile(
        p=p,
        theta_mean=theta,
        theta_regressed=theta,
        c2_fraction=np.zeros_like(p),
        n=0,
        trials=1,
        p_c_estimate=0.55,
    )


def test_theta_inverse_conventions():
    prof = hand_profile()
    assert pl.theta_inverse(prof, 1.0) == 1.0
    assert pl.theta_inverse(prof, 0.0) == prof.p_c_estimate
    with pytest.raises(ValueError):
        pl.theta_inverse(prof, -0.1)


def test_theta_inverse_strict_boundary():
    # at the last sampled value the strict inequality pushes to its p
    prof = hand_profile()
    assert pl.theta_inverse(prof, 0.53) == pytest.approx(0.7)


def test_theta_inverse_interpolates():
    prof = hand_profile()
    # halfway between (0.6, 0.25) and (0.65, 0.4)
    assert pl.theta_inverse(prof, 0.325) == pytest.approx(0.625)


def test_theta_inverse_monotone_and_bounded():
    spec = GenSpec(family="random-regular", n=5000, d=3, seed=5)
    prof = pl.empirical_theta(spec, trials=3)
    prev = 0.0
    for t in np.linspace(0.0, 1.0, 21):
        p = pl.theta_inverse(prof, t)
        assert prof.p_c_estimate <= p <= 1.0
        assert p >= prev - 1e-12
        prev = p


def test_theta_inverse_pseudo_consistency():
    spec = GenSpec(family="random-regular", n=5000, d=3, seed=6)
    prof = pl.empirical_theta(spec, p_list=list(np.linspace(0.5, 1.0, 11)), trials=3)
    spacing = 0.05
    for p, t in zip(prof.p, prof.theta_regressed):
        if t > 0.05:
            assert pl.theta_inverse(prof, t) <= p + spacing + 1e-9


def test_theta_inverse_rejects_nonmonotone():
    prof = hand_profile()
    prof.theta_regressed = np.array([0.0, 0.3, 0.2, 0.4, 0.53])
    with pytest.raises(RuntimeError):
        pl.theta_inverse(prof, 0.25)


def test_profile_csv_roundtrip(tmp_path):
    spec = GenSpec(family="random-regular", n=1000, d=3, seed=7)
    prof = pl.empirical_theta(spec, p_list=[0.4, 0.6, 0.8], trials=2)
    path = tmp_path / "theta.csv"
    prof.to_csv(path)
    back = ThetaProfile.from_csv(path)
    assert np.allclose(back.p, prof.p)
    assert np.allclose(back.theta_regressed, prof.theta_regressed)
    assert np.allclose(back.c2_fraction, prof.c2_fraction)


def test_assumption_report_regular_decays():
    spec = GenSpec(family="random-regular", n=10_000, d=3, seed=8)
    rep = pl.assumption_report(spec, [0.7], [2, 20, 200], trials=5)
    level = rep["levels"][0]
    stats = [e["almost_local_mean"] for e in level["by_k"]]
    assert stats[-1] <= stats[0]
    assert stats[-1] < 0.01
    assert not level["suspect"]


def test_assumption_report_union_flagged():
    half = GenSpec(family="random-regular", n=5000, d=3)
    spec = GenSpec(family="union", child_a=half, child_b=half, bridges=1, seed=9)
    rep = pl.assumption_report(spec, [0.8], [10, 100], trials=3)
    level = rep["levels"][0]
    assert level["by_k"][-1]["almost_local_mean"] > 0.03
    assert level["suspect"]


def test_assumption_report_subcritical_c1_small():
    spec = GenSpec(family="random-regular", n=100_000, d=3, seed=10)
    prof = pl.empirical_theta(spec, p_list=[0.45], trials=3)
    assert prof.theta_mean[0] < 0.05


def test_union_theta_is_survival_mixture():
    # with two supercritical halves the two giants together carry the
    # survival mass, so c1 + c2 tracks the average of the half curves
    a = GenSpec(family="random-regular", n=10_000, d=3)
    b = GenSpec(family="random-regular", n=10_000, d=4)
    spec = GenSpec(family="union", child_a=a, child_b=b, bridges=0, seed=11)
    prof = pl.empirical_theta(spec, p_list=[0.7], trials=5)
    mix = (pl.analytic_theta_regular(3, 0.7) + pl.analytic_theta_regular(4, 0.7)) / 2
    est = prof.theta_mean[0] + prof.c2_fraction[0]
    assert abs(est - mix) < 0.03
