"""
How small can the box be?
=========================

With a tiny box (h w^3 N <= 1/24, hw <= 1/2) the lattice part dominates and
the KS distance is still of order 1/sqrt(N).  The witness search turns this
into a concrete N where a hypothetical sharper bound would be violated.
"""
from berrylab.bounds import reverse_condition, thm_reverse_witness
from berrylab.ksmetric import ks_exact_mu_hw

for h, w, N in [(0.2, 0.2, 16), (0.15, 0.15, 36), (0.1, 0.2, 48)]:
    v = reverse_condition(h, w, N)
    r = ks_exact_mu_hw(h, w, N)
    print(f"h={h} w={w} N={N}: admissible={v.admissible} (h w^3 N = {v.hw3N:.4f}), "
          f"d_KS = {r.distance:.5f} >= {v.lower:.5f}")

wit = thm_reverse_witness(C=1, c=1, rho=1, rho_prime=0)
print(f"witness: N = {wit.N}, h = w = {wit.h:.3e}, lower {wit.lhs_lower:.3e} > bound {wit.rhs_value:.3e}")
