"""Besov norms on band-limited grid functions.

Shows the two-sided comparison with the plain L^p norm on a single
annulus (the norm lives within a dyadic window around 2^(n s)), the
contractive embedding in the summation exponent, and the index shift of
the homogeneous block sequence under dilation.
"""

import numpy as np

from besovlp import (
    BesovParams,
    GridSpec,
    ValueSpace,
    besov_norm,
    build_partition,
    homogeneous_besov_norm,
    lp_norm,
)
from besovlp.testfunctions import random_band_limited

rng = np.random.default_rng(7)
grid = GridSpec(1, 256, 1.0)
part = build_partition(grid)
space = ValueSpace.scalar()

print("Besov/L^2 ratio for random functions on a single annulus (s = 0.5):")
for ann in range(2, part.k_max):
    ratios = []
    for _ in range(20):
        f = random_band_limited(grid, part.annulus_mask(ann), rng)
        ratios.append(
            besov_norm(f, BesovParams(0.5, 2.0, 2.0), part, space)
            / lp_norm(f, 2.0, space)
        )
    lo, hi = 2.0 ** ((ann - 1) * 0.5), 2.0 ** ((ann + 1) * 0.5)
    print(
        f"  annulus {ann}: ratios in [{min(ratios):6.3f}, {max(ratios):6.3f}],"
        f" dyadic window [{lo:6.3f}, {hi:6.3f}]"
    )

print("\nsummation-exponent embedding (norms decrease as v grows):")
f = random_band_limited(grid, part.band_limit_mask(), rng)
for v in (1.0, 2.0, np.inf):
    val = besov_norm(f, BesovParams(0.5, 2.0, v), part, space)
    print(f"  v={v!s:4}: {val:.6f}")

print("\nhomogeneous block sequence shifts by one index under x -> 2x:")
coarse = GridSpec(1, 128, 1.0)
part_c = build_partition(coarse)
f = random_band_limited(coarse, part_c.annulus_mask_hom(3), rng, mean_zero=True)
n_c = homogeneous_besov_norm(f, BesovParams(1.0, 2.0, 2.0), part_c, space)

fine = GridSpec(1, 256, 1.0)
part_f = build_partition(fine)
from besovlp import GridFunction, dft

fhat = dft(f).samples[:, 0]
freqs = coarse.axis_frequencies()
x = fine.physical_coords()[:, 0]
gx = sum(c * np.exp(2j * np.pi * xi * 2.0 * x) for c, xi in zip(fhat, freqs) if c != 0)
g = GridFunction(fine, gx)
n_f = homogeneous_besov_norm(g, BesovParams(1.0, 2.0, 2.0), part_f, space)
print(f"  ||f||_B^1: {n_c:.6f}   ||f(2.)||_B^1: {n_f:.6f}   ratio: {n_f / n_c:.6f}"
      f"  (expected 2^s = 2)")
