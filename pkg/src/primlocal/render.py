"""Deterministic lattice rendering of Prim addition steps.

One pixel per vertex at its lattice coordinate, coloured green to yellow to
red by normalized addition step, with a mild luminance ripple that exposes
the step ordering inside large same-hue regions. Output is binary PPM (P6)
so identical configurations produce byte-identical files.
"""

from __future__ import annotations

import json

import numpy as np

from .spanning import PrimTrace

GREEN = np.array([0, 160, 0], dtype=np.float64)
YELLOW = np.array([240, 220, 0], dtype=np.float64)
RED = np.array([200, 0, 0], dtype=np.float64)
TURQUOISE = np.array([64, 224, 208], dtype=np.uint8)
WHITE = np.array([255, 255, 255], dtype=np.uint8)
RIPPLE = 0.15


def step_colors(steps: np.ndarray, n: int) -> np.ndarray:
    """Map addition steps to RGB rows; negative steps render white."""
    steps = np.asarray(steps, dtype=np.int64)
    t = np.clip(steps / max(n, 1), 0.0, 1.0)
    s = np.where(t <= 0.5, 2.0 * t, 2.0 * t - 1.0)[:, None]
    low = np.where(t[:, None] <= 0.5, GREEN, YELLOW)
    high = np.where(t[:, None] <= 0.5, YELLOW, RED)
    rgb = low + s * (high - low)
    ripple = 1.0 - RIPPLE + RIPPLE * ((steps % 256) / 256.0)
    rgb = np.clip(rgb * ripple[:, None], 0.0, 255.0)
    out = rgb.astype(np.uint8)
    out[steps < 0] = WHITE
    return out


def render_ppm(
    trace: PrimTrace,
    side: int,
    path,
    fraction: float = 1.0,
    crop=None,
) -> dict:
    """Write a P6 image of one lattice trace.

    `fraction` keeps only vertices added within the first fraction * n
    steps (the rest stay white); `crop` is (x0, y0, width, height) in
    lattice coordinates, defaulting to the full lattice.
    """
    if side * side != trace.n:
        raise ValueError("trace is not over a side x side lattice")
    if not 0.0 <= fraction <= 1.0:
        raise ValueError("fraction must lie in [0,1]")
    if crop is None:
        crop = (0, 0, side, side)
    x0, y0, w, h = (int(c) for c in crop)
    if w <= 0 or h <= 0 or x0 < 0 or y0 < 0 or x0 + w > side or y0 + h > side:
        raise ValueError("crop window outside the lattice")
    steps = trace.vertex_step.copy()
    cutoff = int(fraction * trace.n)
    steps[steps > cutoff] = -1
    pixels = step_colors(steps, trace.n).reshape(side, side, 3)
    row, col = divmod(trace.root, side)
    pixels[row, col] = TURQUOISE
    window = pixels[y0 : y0 + h, x0 : x0 + w]
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (w, h))
        f.write(np.ascontiguousarray(window).tobytes())
    return {"width": w, "height": h, "fraction": fraction, "crop": [x0, y0, w, h]}


def write_sidecar(path, config: dict) -> None:
    """Persist the producing configuration next to an output file."""
    with open(str(path) + ".json", "w") as f:
        json.dump(config, f, indent=2, sort_keys=True)
        f.write("\n")
