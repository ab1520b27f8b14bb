"""Maximum-likelihood decoding of small codes under depolarizing noise."""

import numpy as np

from qlego.decoder import depolarizing, exact_failure_rate, export_tl, monte_carlo, write_csv
from qlego.duality import extract_state
from qlego.legos import code_513_perfect, steane_713


def code(lego, n):
    return extract_state(lego.state, list(range(n)), [n])


steane, five = code(steane_713(), 7), code(code_513_perfect(), 5)

rows = []
for p in (0.01, 0.03, 0.1):
    noise = depolarizing(p, 7)
    mc = monte_carlo(steane, noise, 20000, seed=1)
    print(f"Steane p={p}: exact {exact_failure_rate(steane, noise):.5f}, sampled {mc.rate:.5f} "
          f"[{mc.ci_low:.5f}, {mc.ci_high:.5f}]")
    rows.append(mc)
print()
print(write_csv(rows))

# the five-qubit code against the same noise
for p in (0.01, 0.1):
    print(f"[[5,1,3]] p={p}: exact failure {exact_failure_rate(five, depolarizing(p, 5)):.5f}")

# every Pauli equivalent to logical X of the five-qubit code
tl = export_tl(five, "X")
print()
print(f"T(X) of [[5,1,3]] has {len(tl)} entries; first few:")
print("\n".join(tl.to_text().splitlines()[:5]))
print("weights:", np.bincount([sum(1 for v in e if v) for e in tl.entries]))
