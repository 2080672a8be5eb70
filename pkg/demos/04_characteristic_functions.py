"""
Characteristic-function envelopes
=================================

Near the origin |phi(t/sqrt N)^N - e^{-t^2/2}| sits under a polynomial times
e^{-t^2/4} envelope; far out, the density box makes |phi| decay.  Print both
sides on a coarse grid.
"""
import numpy as np

from berrylab.charfun import cf_eval, envelope_constants, gauss_gap, global_decay_bound, local_envelope
from berrylab.laws import moment_profile, mu_hw

law = mu_hw(0.5, 0.5)
prof = moment_profile(law)
c = envelope_constants(prof.k, prof.m_k1)
print(f"c0 = {c.c0:.4f} (c1 = {c.c1:.4f}, c2 = {c.c2:.2f})")

for N in (1, 4, 16, 64):
    t = np.linspace(0, c.local_range(N), 6)[1:]
    gap = gauss_gap(law, t, N)
    env = local_envelope(prof.k, prof.abs_moment_k1, t, N)
    print(f"N = {N}")
    for a, g, e in zip(t, gap, env):
        print(f"   t = {a:6.3f}   gap = {g:.3e}   envelope = {e:.3e}   ratio = {g / e:.3f}")

# away from the origin: one summand, |t| >= t0
for t0 in (0.5, 2.0, 8.0):
    t = np.linspace(t0, 100, 5000)
    print(f"t0 = {t0}: max |phi| = {np.abs(cf_eval(law, t)).max():.5f} <= {global_decay_bound(0.5, 0.5, t0):.5f}")
