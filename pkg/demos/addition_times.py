"""Watch when Prim's algorithm collects the root's neighbourhood.

Addition times tau(r,m)/n split into two groups: vertices the invasion
cluster reaches almost immediately, and vertices behind heavier edges that
join only once the growing tree has swallowed the corresponding giant, at
time about theta(w). The completion time of the radius-r tree ball is
predicted by the heaviest such edge.

Run: python3 demos/addition_times.py
"""

import numpy as np

import primlocal as pl
from primlocal.generators import GenSpec

spec = GenSpec(family="random-regular", n=50_000, d=3, seed=5)
profile = pl.empirical_theta(spec, trials=10)

g = spec.generate()
trace = pl.prim_trace(g)
mst = pl.kruskal_mst(g)

r = 2
tau = pl.addition_times(g, trace, r)
print(f"addition times of the radius-{r} graph ball (m, tau/n):")
for m, t in enumerate(tau, start=1):
    phase = "first phase" if t < g.n ** (-1.0 / 3.0) * np.log(g.n) else "second phase"
    print(f"  m={m:2d}  tau/n = {t:8.5f}  ({phase})")

rep = pl.times_report(g, trace, mst, profile, r)
print()
print(f"completion time C/n:        {rep.completion:.4f}")
print(f"theta-based prediction:     {rep.prediction:.4f}")
rep.to_csv("addition_times.csv")
print("wrote addition_times.csv")
