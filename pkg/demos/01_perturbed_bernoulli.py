"""
A Bernoulli law with a small uniform bump
=========================================

Mix (1 - hw) parts of a two-point law at +-x with a box of height h and
width w at the origin.  x is picked so the variance stays at 1, and the
first three moments then agree with the Gaussian.
"""
from berrylab.laws import abs_moment, density_rectangle, matching_order, moment, mu_hw

law = mu_hw(0.5, 0.5)
print(law)

for j in range(1, 7):
    print(f"E[X^{j}] = {moment(law, j): .6f}")
print("matches Gaussian moments up to order", matching_order(law))

# the fourth moment is what enters the 1/N term of the bound
print("E[X^4] =", abs_moment(law, 4))

# the box is the density rectangle driving the exponential term
r = density_rectangle(law)
print(f"rectangle at a={r.a}, width {r.w}, height {r.h}, h*w^3 = {r.merit}")

# shrinking the box pushes the atoms back towards +-1
for h in (0.5, 0.1, 0.01, 0.001):
    x = mu_hw(h, 0.5).atoms[-1].location
    print(f"h = {h:<6}  x = {x:.8f}")
