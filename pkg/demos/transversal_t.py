"""Pushing a transversal T through two glued [[15,1,3]] Reed-Muller codes.

Each tile carries T on every leg as a unitary stabilizer. Across the contracted
edge T must meet its complex conjugate, so the second tile gets Tdag.
"""

from qlego import builders
from qlego.pushing import flow_to_dot, symbolic_flow, verify_symbolic

net = builders.rm_pair()

for assignment in ({"rm_a": "T", "rm_b": "Tdag"}, {"rm_a": "T", "rm_b": "T"}):
    ok, dangling = verify_symbolic(net, assignment)
    print(assignment, "->", "consistent" if ok else "mismatch on the shared edge")
    if ok:
        for inst in ("rm_a", "rm_b"):
            labels = [dangling[(inst, i)] for i in range(16) if i != 14]
            print(f"  {inst}: physical {' '.join(labels[:14])} | logical {labels[14]}")

print()
print(flow_to_dot(symbolic_flow(net, {"rm_a": "T", "rm_b": "Tdag"})))
