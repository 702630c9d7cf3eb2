"""Solve small factor-revealing LPs and turn them into approximation ratios.

Run:  python3 demos/walkthrough_lp_bounds.py
"""

from __future__ import annotations

from hedcs import alpha_from_f, analytic_alpha, build_lp, check_h_recurrence, solve_lp, trivial_alpha
from hedcs.bounds import lp_size

print(" k  beta  beta-   vars  LP value   alpha  trivial")
for k, beta in [(1, 2), (1, 4), (1, 8), (1, 16), (2, 4), (2, 6), (3, 3)]:
    inst = build_lp(k, beta, beta - 1)
    sol = solve_lp(inst)
    print(f"{k:2d} {beta:5d} {beta - 1:5d} {inst.n_vars:6d}  {sol.objective:8.5f}  "
          f"{alpha_from_f(sol.objective):.4f}  {trivial_alpha(k, beta, beta - 1):.4f}")

vars_, cons = lp_size(2, 142)
print(f"\nLP(2,142,141) would have {vars_:,} variables and {cons:,} constraints; "
      "export it with `hedcs bounds --k 2 --beta 142 --lp FILE` for an external solver.")

print("\nf -> alpha for published LP values:")
for f in (0.780, 0.789, 0.569, 0.645):
    print(f"  f={f:.3f} -> alpha={alpha_from_f(f):.6f}")

a = analytic_alpha(1, 0.0)
print(f"\nanalytic bound for k=1: {a.value}  (1/2 + 1/96 = {0.5 + 1 / 96:.12f})")
print("h recurrence margins (log2):", [round(r.log2_margin, 2) for r in check_h_recurrence(6)])
