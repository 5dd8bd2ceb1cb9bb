"""The full 16-mode nonlinear system: spreading, invariants, and probes.

Beyond the single-mode picture, the cubic force couples modes through exact
selection rules.  A mode started alone either stays alone (modes 5..14) or
feeds a specific arithmetic cascade (mode 1 reaches 3, 5, 7, ...).  Torsional
stability is probed directly: seed the torsional slot with a tiny amplitude
delta and watch whether it stays of that order or grows by decades.
"""

import numpy as np

from plateflutter import (CoupledState, CoupledSystem, ModeBasis, ProbeConfig,
                          integrate, probe)

basis = ModeBasis.build()
system = CoupledSystem.build(basis, gamma=5.17e-4)

print("Mode 1 started alone at amplitude 1 (60 time units):")
phi0 = np.zeros(16)
phi0[0] = 1.0
t, phis, _ = integrate(CoupledState(phi0, np.zeros(16)), 60.0, system)
for j in range(16):
    peak = np.max(np.abs(phis[j]))
    tag = "active" if peak > 1e-9 else ("exact zero" if peak == 0.0 else "noise")
    if peak > 0 or j in (14, 15):
        print(f"  mode {j + 1:>2}: max|phi| = {peak:10.3e}  ({tag})")
print("Only the odd cascade 1 -> 3 -> 5 -> ... lights up; even and torsional "
      "modes remain exactly zero, by the tensor's zero pattern, not by luck.")

print("\nPerturbation probe of mode 5 against the first torsional slot:")
for A in (1.91, 1.92):
    res = probe(ProbeConfig(5, 15, A), system)
    print(f"  A={A}: torsional growth x{res.max_ratio:8.1f}  -> {res.status}")
print("One hundredth of amplitude separates bounded twisting from runaway "
      "growth: the coupled system reproduces the scalar Hill threshold.")
