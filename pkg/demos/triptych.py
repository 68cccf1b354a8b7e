"""Render one Prim run on a square lattice at three stages.

Each pixel is a vertex, coloured green -> yellow -> red by the step at
which Prim's algorithm added it; the root sits turquoise in the middle and
vertices not yet added stay white. The three images show the tree after
n/3, 2n/3, and n steps.

Run: python3 demos/triptych.py
View: any PPM viewer, or convert with e.g. `magick stage_1.ppm stage_1.png`
"""

import primlocal as pl
from primlocal.render import render_ppm

side = 600
g = pl.gen_grid(side, "torus", seed=7)
trace = pl.prim_trace(g)

for i, fraction in enumerate((1.0 / 3.0, 2.0 / 3.0, 1.0), start=1):
    path = f"stage_{i}.ppm"
    render_ppm(trace, side, path, fraction=fraction)
    print(f"wrote {path} (first {fraction:.0%} of steps)")

# the early picture is the invasion cluster hugging the root; the late
# pictures fill the lattice component by component as the level rises
