"""Qudit legos: traces over GF(3) and GF(5) and the atomic CZ synthesis."""

from qlego import builders, describe, extract
from qlego.legos import repetition
from qlego.network import LOGICAL, TensorNetwork

for d in (3, 5):
    net = TensorNetwork(d)
    net.add("a", repetition(3, "Z", d=d))
    net.add("b", repetition(3, "Z", d=d))
    net.connect(("a", 0), ("b", 0))
    net.set_role(("a", 3), LOGICAL)
    net.set_role(("b", 3), LOGICAL)
    print(describe(extract(net.build())))
    print()

for d in (2, 3, 5):
    print(f"CZ from atomic legos, d={d}:", "PASS" if builders.verify_cz_synthesis(d) else "FAIL")
