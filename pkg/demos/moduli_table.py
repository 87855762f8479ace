"""Components of the solsoliton moduli space in each dimension from 2 to 7."""

from solsolitons.moduli import moduli_slice

for m in range(2, 8):
    s = moduli_slice(m)
    print(f"Sol({m}): {len(s.components)} components")
    for c in s.components:
        if c.r == 0:
            continue
        where = c.domain or "-"
        print(f"  {c.entry_id:8} r={c.r} params={c.parameter_dim} |W|={c.weyl_order} "
              f"domain={where} einstein={c.einstein}")
