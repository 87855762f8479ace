"""Certify every catalog entry and print its type, rank and Weyl group order."""

from solsolitons.catalog import catalog_ids, get_entry
from solsolitons.soliton import eigenvalue_type, nilsoliton_certificate
from solsolitons.weyl import entry_action

print(f"{'id':9} {'dim':>3} {'rank':>4} {'|W|':>4}  type")
for eid in catalog_ids():
    entry = get_entry(eid)
    cert = nilsoliton_certificate(entry.algebra())
    kind = eigenvalue_type(cert)
    assert kind == entry.expected_type()
    print(f"{eid:9} {entry.dim:3d} {entry.expected_rank:4d} {entry_action(eid).order:4d}  {kind}")
