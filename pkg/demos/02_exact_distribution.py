"""
Exact CDF of the normalised sum
===============================

Each of the N summands is either one of the atoms or uniform.  Conditioning
on how many are uniform turns P(S_N <= s) into a binomial mixture of
lattice sums convolved with Irwin-Hall laws, all computed exactly with a
certified error radius.
"""
import numpy as np

from berrylab.exactdist import sum_cdf
from berrylab.specfun import std_normal_cdf

sc = sum_cdf(0.5, 0.5, 16, tol=1e-12)
print("mixture terms kept:", sc.J_cap + 1, " tail mass:", sc.mixture.tail_mass)

s = np.linspace(-3, 3, 13)
val, err = sc.evaluate(s)
for a, v, e in zip(s, val, err):
    print(f"s = {a:5.2f}   F = {v:.12f}  +- {e:.1e}   Phi = {std_normal_cdf(a):.12f}")

# F jumps only at the points of the all-atom lattice
jumps, sizes = sc.jump_points()
print("largest jump:", sizes.max(), "at", jumps[np.argmax(sizes)])
