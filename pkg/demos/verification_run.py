"""Compare partial Prim trees against expansions of the invasion cluster.

Two experiments on random 3-regular graphs:

1. the exact finite identity: once Prim enters the largest component of
   G(p) it sweeps it completely, so the prefix with K + |C1(p)| vertices
   matches the expansion of the invasion cluster at level p;
2. the marginal comparison: the floor(t n)-step prefix looks locally like
   the expansion at level theta_inverse(t), for several t.

Run: python3 demos/verification_run.py
"""

import json

import primlocal as pl
from primlocal.generators import GenSpec

spec = GenSpec(family="random-regular", n=10_000, d=3, seed=3)

frac = pl.verify_exact_step(spec, p=0.7, r=2, trials=30)
print(f"exact step identity at p=0.7, r=2: success {frac:.2f}")

profile = pl.empirical_theta(spec, trials=10)
report = pl.verify_marginals(
    spec, [0.0, 0.25, 0.5, 0.75, 1.0], r=2, trials=30, profile=profile
)
print("marginal comparison (radius-2 balls, tolerance 1/2):")
for t, p, s in zip(report["t"], report["levels"], report["success"]):
    print(f"  t={t:.2f} -> level {p:.4f}: success {s:.2f}")
print(f"joint success across all t: {report['joint_success']:.2f}")

with open("verification_report.json", "w") as f:
    json.dump(report, f, indent=2, sort_keys=True)
print("wrote verification_report.json")
