"""Empirical survival curves theta(p), their pseudo-inverse, a branching
process oracle for regular graphs, and locality diagnostics.

theta(p) is estimated by the giant fraction |C1(p)|/n averaged over trials
that redraw both the graph and its weights, then made monotone by isotonic
regression.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import isotonic_regression

from . import _kernels
from ._parallel import trial_map
from .generators import GenSpec
from .graph import almost_local_statistic, ball, percolate

EPS0 = 0.01
_REFINE_LEVELS = 3


def _trial_seed(base_seed: int, tag: int, i: int) -> int:
    ss = np.random.SeedSequence(base_seed, spawn_key=(tag, i))
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass
class ThetaProfile:
    """Monotone empirical curve p -> theta(p) with pseudo-inverse queries."""

    p: np.ndarray
    theta_mean: np.ndarray
    theta_regressed: np.ndarray
    c2_fraction: np.ndarray
    n: int
    trials: int
    p_c_estimate: float

    def theta(self, w) -> np.ndarray:
        """Piecewise-linear interpolation of the regressed curve, anchored
        at (0,0) and (1,1)."""
        xs = np.concatenate([[0.0], self.p, [1.0]])
        ys = np.concatenate([[0.0], self.theta_regressed, [1.0]])
        xs, idx = np.unique(xs, return_index=True)
        return np.interp(w, xs, ys[idx])

    def to_csv(self, path) -> None:
        with open(path, "w") as f:
            f.write("p,theta_mean,theta_regressed,c2_fraction,trials\n")
            for i in range(self.p.size):
                f.write(
                    "%.17g,%.17g,%.17g,%.17g,%d\n"
                    % (
                        self.p[i],
                        self.theta_mean[i],
                        self.theta_regressed[i],
                        self.c2_fraction[i],
                        self.trials,
                    )
                )

    @staticmethod
    def from_csv(path) -> "ThetaProfile":
        data = np.genfromtxt(path, delimiter=",", skip_header=1)
        data = np.atleast_2d(data)
        prof = ThetaProfile(
            p=data[:, 0],
            theta_mean=data[:, 1],
            theta_regressed=data[:, 2],
            c2_fraction=data[:, 3],
            n=0,
            trials=int(data[0, 4]),
            p_c_estimate=0.0,
        )
        prof.p_c_estimate = _estimate_pc(prof.p, prof.theta_regressed)
        return prof


def _estimate_pc(p: np.ndarray, theta_r: np.ndarray, eps0: float = EPS0) -> float:
    above = np.flatnonzero(theta_r > eps0)
    return float(p[above[0]]) if above.size else 1.0


def _sweep_profile(spec: GenSpec, thresholds: np.ndarray, trials: int):
    n = spec.num_vertices

    def one(i: int):
        g = spec.with_seed(_trial_seed(spec.seed, 11, i)).generate()
        order = np.argsort(g.weights, kind="stable")
        return _kernels.top_two_sweep(
            g.n, g.edges_u[order], g.edges_v[order], g.weights[order], thresholds
        )

    results = trial_map(one, trials)
    c1 = np.mean([r[0] for r in results], axis=0) / n
    c2 = np.mean([r[1] for r in results], axis=0) / n
    return c1, c2


def empirical_theta(
    spec: GenSpec,
    p_list=None,
    trials: int = 20,
    eps0: float = EPS0,
) -> ThetaProfile:
    """Estimate theta over a p grid by the mean giant fraction.

    With the default grid (i/64 for i = 1..64) the grid is refined by three
    rounds of midpoint insertion around the estimated threshold; an explicit
    p_list is used as given.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    refine = p_list is None
    if refine:
        thresholds = np.arange(1, 65) / 64.0
    else:
        thresholds = np.asarray(p_list, dtype=float)
        if thresholds.size == 0 or np.any(np.diff(thresholds) <= 0):
            raise ValueError("p_list must be strictly increasing")
        if thresholds[0] <= 0 or thresholds[-1] > 1:
            raise ValueError("p_list must lie in (0,1]")
    if refine:
        c1, _ = _sweep_profile(spec, thresholds, trials)
        reg = np.clip(isotonic_regression(c1).x, 0.0, 1.0)
        pc = _estimate_pc(thresholds, reg, eps0)
        j = int(np.searchsorted(thresholds, pc))
        lo = thresholds[max(j - 1, 0)] if j > 0 else thresholds[0] / 2
        hi = thresholds[min(j + 1, thresholds.size - 1)]
        window = thresholds[(thresholds >= lo) & (thresholds <= hi)]
        window = np.concatenate([[lo], window, [hi]])
        for _ in range(_REFINE_LEVELS):
            window = np.unique(
                np.concatenate([window, (window[:-1] + window[1:]) / 2])
            )
        thresholds = np.unique(np.concatenate([thresholds, window]))
    c1, c2 = _sweep_profile(spec, thresholds, trials)
    reg = np.clip(isotonic_regression(c1).x, 0.0, 1.0)
    return ThetaProfile(
        p=thresholds,
        theta_mean=c1,
        theta_regressed=reg,
        c2_fraction=c2,
        n=spec.num_vertices,
        trials=trials,
        p_c_estimate=_estimate_pc(thresholds, reg, eps0),
    )


def analytic_theta_regular(d: int, p: float) -> float:
    """Survival probability of the d-regular tree limit.

    Solves q = (1 - p + p q)^(d-1) for the extinction probability and
    returns theta = 1 - (1 - p + p q)^d. Subcritical p (at most 1/(d-1))
    gives 0.
    """
    if d < 3:
        raise ValueError("d must be at least 3")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0,1]")
    if p <= 1.0 / (d - 1):
        return 0.0
    q = 0.0
    for _ in range(100_000):
        nxt = (1.0 - p + p * q) ** (d - 1)
        if abs(nxt - q) < 1e-12:
            q = nxt
            break
        q = nxt
    else:
        raise RuntimeError("fixed-point iteration did not converge")
    return 1.0 - (1.0 - p + p * q) ** d


def theta_inverse(profile: ThetaProfile, t: float) -> float:
    """Pseudo-inverse inf{p : theta(p) > t} on the interpolated curve.

    t = 1 returns 1 exactly; t = 0 returns the threshold estimate. Results
    never fall below the threshold estimate.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0,1]")
    if t == 1.0:
        return 1.0
    if t == 0.0:
        return float(profile.p_c_estimate)
    theta_r = profile.theta_regressed
    if np.any(np.diff(theta_r) < 0):
        raise RuntimeError("profile is not monotone; regression was bypassed")
    xs = np.concatenate([profile.p, [1.0]])
    ys = np.concatenate([theta_r, [1.0]])
    above = np.flatnonzero(ys > t)
    if above.size == 0:
        return 1.0
    i = above[0]
    if i == 0:
        return float(max(xs[0], profile.p_c_estimate))
    x0, x1 = xs[i - 1], xs[i]
    y0, y1 = ys[i - 1], ys[i]
    cross = x0 + (t - y0) / (y1 - y0) * (x1 - x0)
    return float(min(1.0, max(cross, profile.p_c_estimate)))


def assumption_report(
    spec: GenSpec,
    p_list,
    k_list,
    trials: int = 10,
    r: int = 2,
    ball_cap: int = 4096,
) -> dict:
    """Locality diagnostics per (p, k).

    For each p and size cutoff k: the mean pair-counting statistic for
    coexisting large components, the mean second-component fraction, and the
    fraction of trials with some non-giant component of size >= k meeting
    the radius-r ball of the root. A (family, p) is flagged suspect when the
    pair statistic fails to decay across k_list.
    """
    p_arr = [float(p) for p in p_list]
    k_arr = [int(k) for k in k_list]
    n = spec.num_vertices

    def one(i: int):
        g = spec.with_seed(_trial_seed(spec.seed, 13, i)).generate()
        root = g.root if g.root is not None else 0
        b = ball(g, root, r, cap=ball_cap)
        out = []
        for p in p_arr:
            decomp = percolate(g, p)
            c2 = decomp.sizes[1] / g.n if decomp.sizes.size > 1 else 0.0
            giant = decomp.giant_mask()
            comp_sizes = decomp.sizes[decomp.rank_of[decomp.labels[b.vertices]]]
            outside = ~giant[b.vertices]
            row = []
            for k in k_arr:
                stat = almost_local_statistic(g, p, k)
                near = bool(np.any(outside & (comp_sizes >= k)))
                row.append((stat, near))
            out.append((c2, row))
        return out

    results = trial_map(one, trials)
    report = {"n": n, "trials": trials, "r": r, "levels": []}
    for pi, p in enumerate(p_arr):
        c2_mean = float(np.mean([res[pi][0] for res in results]))
        entries = []
        for ki, k in enumerate(k_arr):
            stats = [res[pi][1][ki][0] for res in results]
            nears = [res[pi][1][ki][1] for res in results]
            entries.append(
                {
                    "k": k,
                    "almost_local_mean": float(np.mean(stats)),
                    "ball_large_nongiant_fraction": float(np.mean(nears)),
                }
            )
        first = entries[0]["almost_local_mean"]
        last = entries[-1]["almost_local_mean"]
        suspect = last > 0.01 and last > 0.5 * first
        report["levels"].append(
            {
                "p": p,
                "c2_fraction_mean": c2_mean,
                "by_k": entries,
                "suspect": bool(suspect),
            }
        )
    return report
