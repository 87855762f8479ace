"""Heisenberg group: nilsoliton, its rank-two frame and two solvable extensions."""

import numpy as np

from solsolitons import get_entry, nilsoliton_certificate
from solsolitons.curvature import negativity_scan
from solsolitons.moduli import extend_entry
from solsolitons.weyl import canonical_form, entry_action

alg = get_entry("h3").algebra()
cert = nilsoliton_certificate(alg)
print("c =", cert.c)
print("D1 =", np.diag(cert.D1))

act = entry_action("h3")
print("Weyl group order", act.order, "domain", act.domain)
print("canonical form of (2, 1):", canonical_form([2.0, 1.0], act))

for point in ([1.0, 1.0], [0.0, 1.0]):
    ext = extend_entry("h3", [point])
    scan = negativity_scan(ext.algebra, samples=512)
    print(f"a = {point}: |X0|^2 = {ext.a_gram[0, 0]:.4f}, Einstein {ext.verdict.is_einstein}, "
          f"sectional curvature in [{scan.min:.3f}, {scan.max:.3f}]")
