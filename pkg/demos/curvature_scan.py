"""Sectional curvature near the Einstein extensions of lambda6 and lambda7."""

from solsolitons.moduli import negativity_near_einstein, orthogonal_direction_check

for eid in ("lambda6", "lambda7"):
    rep = negativity_near_einstein(eid, samples=1024, neighbors=5)
    worst = max([rep.einstein.max] + [s.max for _, s in rep.neighbors])
    print(f"{eid}: all negative {rep.all_negative}, largest sectional curvature {worst:.4f}")

# a trace-orthogonal extension keeps Ric|n but has an indefinite Ricci operator
for eid in ("h3", "lambda6", "mu33", "R3"):
    rep = orthogonal_direction_check(eid)
    print(f"{eid}: Ric|n defect {rep.nil_block_defect:.1e}, "
          f"Ricci spectrum [{rep.eigenvalues.min():.3f}, {rep.eigenvalues.max():.3f}], "
          f"indefinite {rep.indefinite}")
