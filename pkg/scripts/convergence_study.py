#!/usr/bin/env python3
"""Measure the composite-Simpson convergence order on a circular arc.

Samples exp(i t) on [0, pi/3] at doubling node counts, integrates with the
on-node Simpson rule, and reports errors against the closed-form
antiderivative together with the observed log2 error ratios.
"""

from __future__ import annotations

import cmath
import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from bochner_bounds.gridfn import Interval, QuadratureRule, integrate_vector, sample

A, B = 0.0, math.pi / 3
EXACT = (cmath.exp(1j * B) - cmath.exp(1j * A)) / 1j
RULE = QuadratureRule("composite-simpson", refinement=1)


def main() -> int:
    print(f"{'intervals':>9}  {'error':>12}  {'order':>6}")
    prev = None
    for n_intervals in (16, 32, 64, 128, 256, 512):
        f = sample(lambda t: cmath.exp(1j * t), Interval(A, B), n_intervals + 1)
        err = abs(integrate_vector(f, RULE)[0] - EXACT)
        order = "" if prev is None else f"{math.log2(prev / err):6.2f}"
        print(f"{n_intervals:>9}  {err:12.3e}  {order:>6}")
        prev = err
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
