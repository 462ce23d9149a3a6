"""Walk through the scalar bound machinery on a handful of points.

h maps a two-level log-odds gap to its symmetric divergence, g inverts it
numerically, B(x) = tanh(g(x)/2)^2 caps the squared flux ratio, and
f(x) = 1/sinh(g(x)/2)^2 floors the variance ratio.  B and f tie together
as B(x) (1 + f(x)) = 1.
"""

import numpy as np

from fluxbound import (divergence_from_gap, flux_ratio_sq_bound,
                       gap_from_divergence, onsager_like, variance_ratio_floor)

xs = [1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0]

print(f"{'x':>10} {'g(x)':>12} {'B(x)':>12} {'f(x)':>12} {'B(1+f)':>10}")
for x in xs:
    g = gap_from_divergence(x)
    b = flux_ratio_sq_bound(x)
    f = variance_ratio_floor(x)
    print(f"{x:>10.2e} {g:>12.6g} {b:>12.6g} {f:>12.6g} {b * (1 + f):>10.8f}")

# the inverse really inverts
worst = max(abs(divergence_from_gap(gap_from_divergence(x)) - x) for x in xs)
print(f"\nmax |h(g(x)) - x| over the table: {worst:.2e}")

# B never exceeds the quadratic (Pinsker) envelope x/2, and the two meet
# only in the x -> 0 limit
print("\nbound vs quadratic envelope:")
for x in (0.01, 0.5, 2.0, 8.0):
    print(f"  x={x:<5g} B={flux_ratio_sq_bound(x):.6f}  x/2={x / 2:.6f}")

# the entropy cost of driving flux ratio r: 2 r artanh r, always >= 2 r^2,
# and B(cost(r)) lands back on r^2
print("\ncost of a flux ratio r:")
for r in (0.1, 0.5, 0.9, 0.99):
    cost = onsager_like(r)
    print(f"  r={r:<5g} 2r*artanh(r)={cost:.6f}  2r^2={2 * r * r:.6f}"
          f"  B(cost)-r^2={flux_ratio_sq_bound(cost) - r * r:+.2e}")
