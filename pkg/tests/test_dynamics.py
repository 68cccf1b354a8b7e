import numpy as np
import pytest

import primlocal as pl
from primlocal.generators import GenSpec
from primlocal.percolation import ThetaProfile


def small_regular(seed=0, n=2000):
    return GenSpec(family="random-regular", n=n, d=3, seed=seed)


def flat_profile():
    p = np.array([0.2, 0.4, 0.6, 0.8, 1.0])
    theta = np.array([0.0, 0.1, 0.5, 0.9, 1.0])
    return ThetaProfile(
        p=p,
        theta_mean=theta,
        theta_regressed=theta,
        c2_fraction=np.zeros_like(p),
        n=0,
        trials=1,
        p_c_estimate=0.3,
    )


def test_addition_times_basics():
    g = small_regular(1).generate()
    tr = pl.prim_trace(g)
    tau = pl.addition_times(g, tr, 3)
    assert tau[0] == 0.0
    assert np.all(np.diff(tau) >= 0)
    assert list(pl.addition_times(g, tr, 0)) == [0.0]


def test_addition_times_partial_ball():
    g = pl.weighted_graph(4, [(0, 1, 0.2), (2, 3, 0.6), (1, 2, 0.4)], root=0)
    tr = pl.prim_trace(g)
    tau = pl.addition_times(g, tr, 3)
    assert tau.size == 4


def test_completion_time_edges():
    g = small_regular(2, n=500).generate()
    tr = pl.prim_trace(g)
    assert pl.completion_time(g, tr, 0) == 0.0
    assert pl.completion_time(g, tr, g.n) == pytest.approx((g.n - 1) / g.n)
    prev = 0.0
    for r in range(0, 8):
        c = pl.completion_time(g, tr, r)
        assert c >= prev
        prev = c


def test_completion_prediction_path():
    # root at one end of a 5-path; a one-step first phase leaves the second
    # ball edge as the only excluded one
    g = pl.weighted_graph(
        5, [(0, 1, 0.1), (1, 2, 0.8), (2, 3, 0.3), (3, 4, 0.9)], root=0
    )
    tr = pl.prim_trace(g)
    mst = pl.kruskal_mst(g)
    prof = flat_profile()
    pred = pl.completion_prediction(g, tr, mst, prof, 2, alpha=0.1)
    assert pred == pytest.approx(prof.theta(0.8))


def test_completion_prediction_empty_exclusion_zero():
    g = pl.weighted_graph(3, [(0, 1, 0.2), (1, 2, 0.4)], root=0)
    tr = pl.prim_trace(g)
    mst = pl.kruskal_mst(g)
    # alpha high enough that the first phase swallows the whole tree
    pred = pl.completion_prediction(g, tr, mst, flat_profile(), 2, alpha=0.99)
    assert pred == 0.0


def test_completion_close_to_prediction():
    spec = small_regular(3, n=20_000)
    prof = pl.empirical_theta(spec, trials=5)
    vals = []
    for seed in range(5):
        g = spec.with_seed(seed).generate()
        tr = pl.prim_trace(g)
        mst = pl.kruskal_mst(g)
        rep = pl.times_report(g, tr, mst, prof, 2)
        vals.append((rep.completion, rep.prediction))
    comp = np.mean([v[0] for v in vals])
    pred = np.mean([v[1] for v in vals])
    assert abs(comp - pred) < 0.1


def test_verify_exact_step_p1_exact():
    for spec in (
        small_regular(4, n=400),
        GenSpec(family="grid", side=15, seed=4),
        GenSpec(family="erdos-renyi", n=400, lam=4.0, seed=4),
    ):
        assert pl.verify_exact_step(spec, 1.0, 2, 5) == 1.0


def test_verify_exact_step_supercritical():
    assert pl.verify_exact_step(small_regular(5), 0.7, 2, 10) == 1.0


def test_verify_marginal_t1_exact():
    assert pl.verify_marginal(small_regular(6, n=1000), 1.0, 2, 5) == 1.0


def test_verify_marginal_midpoint():
    frac = pl.verify_marginal(small_regular(7), 0.5, 2, 10)
    assert frac >= 0.8


def test_verify_marginals_joint_structure():
    rep = pl.verify_marginals(small_regular(8, n=1000), [0.5, 1.0], 2, 5)
    assert len(rep["success"]) == 2
    assert rep["joint_success"] <= min(rep["success"]) + 1e-12
    assert rep["levels"][1] == 1.0


def test_verify_process_conditions_trivial_cases():
    rep = pl.verify_process_conditions(
        small_regular(9, n=1000), [1.0], 2, [0.0, 0.02], trials=5
    )
    assert rep["joint_success"] == 1.0
    assert rep["continuity_at_one"][0] == 0.0
    assert 0.0 <= rep["double_jump"][1] <= 1.0


def test_two_phase_check_range():
    frac = pl.two_phase_check(small_regular(10, n=5000), 2, 5)
    assert 0.0 <= frac <= 1.0


def test_times_report_csv(tmp_path):
    spec = small_regular(11, n=1000)
    g = spec.generate()
    tr = pl.prim_trace(g)
    mst = pl.kruskal_mst(g)
    prof = pl.empirical_theta(spec, trials=2)
    rep = pl.times_report(g, tr, mst, prof, 2)
    path = tmp_path / "times.csv"
    rep.to_csv(path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "m,tau_over_n"
    assert lines[-1].startswith("prediction,")


def test_verify_rejects_bad_inputs():
    with pytest.raises(ValueError):
        pl.verify_marginal(small_regular(12, n=200), 1.5, 2, 1)
    with pytest.raises(ValueError):
        pl.verify_exact_step(small_regular(12, n=200), -0.2, 2, 1)
