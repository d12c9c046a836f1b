"""
A conductance bottleneck on stretched expanders
===============================================

Stretch a cubic bipartite expander so every edge becomes a path, then weigh
independent sets by whether they use more branch vertices on the left or the
right.  Balanced sets are few when the fugacity is large.
"""
import math

from hardcore_hfree.torpid import (
    build_instance,
    conductance_ratio,
    find_expander,
    max_balanced_size,
    threshold_log2_lambda,
)

ell = 1
rows = []
for n in range(3, 9):
    base, alpha = find_expander(n, seed=n, tries=100)
    inst = build_instance(base, ell, alpha=alpha)
    rows.append(inst)
    print(f"n={n}: alpha={alpha}, |G*|={inst.stretched.n}, max balanced size {max_balanced_size(inst)} "
          f"vs one-sided {(3 * ell + 1) * n}")

# 2^(6 ell + 2) lam^(2/(2+alpha) - 1) < 1/2 exactly when log2 lam > (6 ell + 3)(2 + alpha)/alpha;
# evaluated in rationals since the threshold is often an integer.
exact = max((6 * ell + 3) * (2 + inst.alpha) / inst.alpha for inst in rows)
assert math.isclose(float(exact), max(threshold_log2_lambda(ell, inst.alpha) for inst in rows))
log2_lam = math.floor(exact) + 1
print(f"\nlambda = 2^{log2_lam}")
prev = None
for inst in rows:
    r = conductance_ratio(inst, 2 ** log2_lam)
    step = "" if prev is None else f"  step {r.log2_ratio - prev:+.2f}"
    print(f"n={r.n}: log2 ratio {r.log2_ratio:8.2f}, log2 bound {r.log2_bound:8.2f}{step}")
    prev = r.log2_ratio
