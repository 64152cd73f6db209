"""
Learning a membership test from samples
=======================================

Given finitely many points of an unknown set, fit a residue function
that vanishes exactly on the samples and stays small near them, then
use it as a one-sided membership test.
"""

import numpy as np

from padiclearn import LearningParams, SampleSet, build_value_grid, learn

# Target set: multiples of 4 on the line, observed through the four
# samples inside the window [0, 16).
params = LearningParams(p=2, E=6, D=1, M=16)
samples = SampleSet(params, np.array([[0], [4], [8], [12]]))

# Step one tabulates f(x) = 2^(distance to nearest sample) over the
# window, with f = 0 exactly at the samples.
grid = build_value_grid(samples)
print(f"value grid over [0, 16): {grid.data}")

# Step two converts that table to binomial-basis coefficients.  The
# fit is interpolation, so every training point is reproduced exactly.
est = learn(samples)
residues = est.predict_residue_batch(np.arange(16).reshape(-1, 1))
print(f"fitted residues:         {residues}")
assert np.array_equal(residues, grid.data)

# is_member accepts exactly the zero-residue points.  Inside the
# window that means the samples themselves.
members = [x for x in range(16) if est.is_member((x,))]
print(f"members in window: {members}")

# Outside the window the series extrapolates.  Points 2-adically close
# to a sample get small residues, so the test generalises to the coset
# structure of the samples rather than their literal values.
outside = np.arange(16, 32).reshape(-1, 1)
print(f"residues on [16, 32): {est.predict_residue_batch(outside)}")

# Truncation: keep only coefficients with index below L.  A shorter
# series is cheaper to evaluate and acts as a smoother, at the cost of
# exactness on the training set.
short = learn(SampleSet(LearningParams(p=2, E=6, D=1, M=16, L=4), samples.points))
kept = short.coeffs.data[:6]
print(f"first coefficients after truncation to L=4: {kept}")
