"""Gaussian-sum functionals: moments, type/cotype anchors, gamma-bounds.

Hilbert geometry is the exactness anchor: the type-2 and cotype-2
searches must return 1, the gamma-bound collapses to the uniform
operator-norm bound, and the gamma-radonifying norm of a function equals
its L^2 norm.  Away from Hilbert the estimators report certified lower
bounds, and the universal constants (type-1, cotype-infinity) cap at 1.
"""

import numpy as np

from besovlp import (
    GaussianSampler,
    GridFunction,
    GridSpec,
    MatrixFamily,
    SearchBudget,
    ValueSpace,
    cotype_constant_lower,
    dft,
    gamma_bound_hilbert,
    gamma_bound_lower,
    gamma_function_norm,
    gaussian_moment,
    lp_norm,
    type_constant_lower,
)

sampler = GaussianSampler(2024, 20000)
budget = SearchBudget(restarts=16, steps=60, search_samples=3000)

print("gaussian moment of orthogonal vectors in l2_4 (exact sqrt(2)):")
h4 = ValueSpace.hilbert(4)
est = gaussian_moment([np.eye(4)[0], np.eye(4)[1]], h4, sampler)
print(f"  estimate {est.value:.4f} +- {est.std_error:.4f}")

print("\ntype/cotype anchors:")
for label, space, fn, exponent in [
    ("l2_8 type-2  ", ValueSpace.hilbert(8), type_constant_lower, 2.0),
    ("l2_8 cotype-2", ValueSpace.hilbert(8), cotype_constant_lower, 2.0),
    ("l1_4 type-1  ", ValueSpace.lp(1.0, 4), type_constant_lower, 1.0),
    ("linf_4 cotype-inf", ValueSpace.lp(np.inf, 4), cotype_constant_lower, np.inf),
]:
    val = fn(space, exponent, budget, sampler)
    print(f"  {label}: {val:.4f}")

print("\ngamma-bound of a diagonal family between Hilbert spaces:")
rng = np.random.default_rng(12)
mats = tuple(np.diag(rng.standard_normal(3)) for _ in range(3))
fam = MatrixFamily(mats, ValueSpace.hilbert(3), ValueSpace.hilbert(3))
exact = gamma_bound_hilbert(fam)
lower = gamma_bound_lower(fam, budget, sampler)
print(f"  exact (spectral) {exact:.4f},  search lower bound {lower:.4f}")

print("\ngamma-radonifying function norm:")
grid = GridSpec(1, 64, 1.0)
f = GridFunction(grid, rng.standard_normal((64, 2)) + 1j * rng.standard_normal((64, 2)))
g2 = gamma_function_norm(f, ValueSpace.hilbert(2), sampler)
print(f"  Hilbert target: gamma-norm {g2.value:.4f} vs L2 norm "
      f"{lp_norm(f, 2.0, ValueSpace.hilbert(2)):.4f}")
sp4 = ValueSpace.lp(4.0, 2)
a = gamma_function_norm(f, sp4, sampler)
b = gamma_function_norm(dft(f), sp4, sampler)
print(f"  Fourier invariance in l4_2: {a.value:.4f} (physical) vs "
      f"{b.value:.4f} (frequency)")
