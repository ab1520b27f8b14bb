"""Two [[4,2,2]] codes glued on their logical legs give the Steane code.

Run with ``python demos/steane_from_422.py``.
"""

from qlego import builders, describe, distance, extract
from qlego.analysis import is_correctable_erasure

net = builders.steane_from_422()
print("instances:", list(net.instances))
print("edges:", net.edges)

report = extract(net.build())
print(describe(report))

# every logical operator has weight at least three
res = distance(report)
print(res)

# so any two erased qubits can be recovered, but not every three
pairs = [(a, b) for a in range(7) for b in range(a + 1, 7)]
print("all pairs correctable:", all(is_correctable_erasure(report, p) for p in pairs))
print("{0,1,2} correctable:", is_correctable_erasure(report, [0, 1, 2]))
