"""Follow a matching as a random graph churns underneath it.

Run:  python3 demos/walkthrough_dynamic_matching.py
"""

from __future__ import annotations

from hedcs import EngineConfig, generate_trace, run_trace

trace = generate_trace("churn", n=150, delta_cap=20, m_cap=800, length=4000, seed=7)
print(f"trace: {len(trace)} events on {trace.n} vertices (degree cap {trace.delta_cap})")

for k in (0, 1, 2):
    cfg = EngineConfig(k=k, beta=8, epsilon=0.05, seed=1)
    res = run_trace(trace, cfg, check_every=200, oracle_every=250)
    s = res.summary
    print(
        f"k={k}: final |M|={s['final_matching_size']:3d}  "
        f"min ratio={s['min_ratio']:.3f}  median ratio={s['median_ratio']:.3f}  "
        f"mean work/update={s['mean_work']:.1f}  recomputations per level={s['recomputations']}"
    )

# The per-update CSV carries the level sizes, so the hierarchy can be watched directly.
rows = run_trace(trace, EngineConfig(k=2, beta=8, seed=1)).rows
for r in rows[999::1000]:
    print(f"update {r['update_index']:>5}: |G|={r['U_1']:>4} |U_2|={r['U_2']:>4} |U_3|={r['U_3']:>4} "
          f"|H_1|={r['H_1']:>3} |H_2|={r['H_2']:>3} |M|={r['matching_size']}")
