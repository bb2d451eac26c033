#!/usr/bin/env python3
"""Tour of exact moment sequences and the Hankel positivity test.

A sequence m_0, m_1, ... is the moment sequence of some nonnegative measure
exactly when every Hankel determinant det[m_{i+j}] is nonnegative.  With a
finite prefix we can test finitely many orders -- and because everything here
is rational arithmetic, a determinant that prints as 0 really is 0.
"""

from fractions import Fraction as F

from poslab import (
    builtin,
    carleman_partial,
    catalog_entries,
    hankel_det,
    is_pm,
    moment_gf_eval,
    pm_binomial_combine,
    pm_mixture,
    pm_product,
    pm_reflect,
    pm_sqrt_symmetrize,
    pm_subsample,
)

print("=" * 72)
print("The builtin catalog")
print("=" * 72)

for entry in catalog_entries():
    if entry.name == "geometric":
        seq = builtin("geometric", 7, 2)
    elif entry.name == "log_kernel":
        seq = builtin("log_kernel", 7, 1)
    else:
        seq = builtin(entry.name, 7)
    values = ", ".join(str(v) for v in seq.values)
    print(f"{seq.label:>14}: {values}")

print()
print("Every entry passes the positivity battery.  The interesting part is")
print("HOW they pass: point masses have rank-1 Hankel matrices, so their")
print("determinants collapse to zero after d_0.")
print()

for key, param in [("geometric", 2), ("gaussian", None), ("catalan", None)]:
    seq = builtin(key, 11, param)
    report = is_pm(seq, 4)
    dets = ", ".join(str(d) for d in report.hankel_dets)
    print(f"{seq.label:>14}: d_0..d_4 = {dets}")
    print(f"{'':>14}  pm to order {report.is_pm_to_order}, "
          f"strictly positive: {report.strictly_positive}, "
          f"support in [0, inf): {report.nonneg_support}")

print()
print("A sequence that is NOT a moment sequence of any positive measure:")
from poslab import MomentSequence

bad = is_pm(MomentSequence((F(0), F(1), F(0)), "odd-start"), 1)
print(f"  [0, 1, 0] has d_1 = {bad.hankel_dets[1]} < 0 -> refuted at order 1")

print()
print("=" * 72)
print("Closure algebra: building new pm sequences from old ones")
print("=" * 72)

gauss = builtin("gaussian", 9)
cat = builtin("catalan", 9)

prod = pm_product(cat, gauss)
print(f"product (moments of X*Y):      {[str(v) for v in prod.values[:5]]}")
print(f"  pm at order 2: {is_pm(prod, 2).is_pm}")

mix = pm_mixture(builtin("geometric", 9, 0), builtin("geometric", 9, 2), F(1, 2))
print(f"fair mixture of atoms 0 and 2: {[str(v) for v in mix.values[:5]]}")

combo = pm_binomial_combine(gauss, gauss, F(3, 5), F(4, 5))
print(f"(3/5) X + (4/5) Y for standard normals -> standard normal again: "
      f"{combo.values == gauss.values}")

even = pm_subsample(gauss, 2)
print(f"even Gaussian moments = chi-square(1) moments: {[str(v) for v in even.values]}")

sym = pm_sqrt_symmetrize(even.prefix(3))
print(f"symmetrized sqrt of chi-square(1) recovers the Gaussian: "
      f"{sym.values == gauss.values[:5]}")

refl = pm_reflect(builtin("geometric", 5, 2))
rep = is_pm(refl, 1)
print(f"reflected atom at 2: {[str(v) for v in refl.values]} -- still pm, but the")
print(f"  shifted determinant {rep.shifted_dets[1]} < 0 betrays support outside [0, inf)")

print()
print("=" * 72)
print("Determinacy diagnostics (floats, never verdicts)")
print("=" * 72)

g = builtin("gaussian", 21)
print("Carleman partial sums for the Gaussian (divergence <=> the moment")
print("problem pins down a unique measure):")
for upper in (1, 4, 10):
    print(f"  N = {upper:2d}: {carleman_partial(g, upper)}")

print()
print("Exponential generating function at t = 1 approaches exp(1/2):")
print(f"  20 terms: {moment_gf_eval(g, F(1), 20)}")
