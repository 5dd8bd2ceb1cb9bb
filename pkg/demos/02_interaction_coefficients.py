"""Compute the strip-interaction coefficients and the quartic mode tensor.

The cables and hangers act only on two thin strips along the deck edges, with
a linear-plus-cubic restoring law.  Projecting that force on the mode basis
yields, per longitudinal mode, a linear coefficient a_k and a cubic one b_k;
per torsional mode, abar_l and the cross couplings d_{l,k}; and, for the full
16-mode system, a sparse quartic tensor whose exact zero pattern encodes
which modes can feed which.
"""

import numpy as np

from plateflutter import (ModalCoefficients, ModeBasis, compute_galerkin_tensor,
                          influence_closure)

basis = ModeBasis.build()
coeffs = ModalCoefficients.from_basis(basis, gamma=5.17e-4)

print("Longitudinal strip coefficients (a_k near the strip mass fraction 0.1):")
print("  k : ", "  ".join(f"{k:7d}" for k in range(1, 15)))
print("  a : ", "  ".join(f"{v:7.5f}" for v in coeffs.a))
print("  b : ", "  ".join(f"{v:7.5f}" for v in coeffs.b))
print("\nTorsional fractions abar:", np.round(coeffs.a_bar, 4))
print("Cross couplings d_{l,k} (diagonal l=k is the strong one):")
for l in (1, 2):
    print(f"  l={l}: ", "  ".join(f"{v:5.2f}" for v in coeffs.d[l - 1]))

tensor = compute_galerkin_tensor(basis)
print(f"\nQuartic tensor: {len(tensor.entries)} stored entries out of "
      f"{16 ** 4} dense slots; exact zeros come from the sine selection rule "
      "and the even/odd strip parity, never from thresholding.")

print("\nWhich modes can a single excited mode reach?")
for seed in (1, 2, 5):
    closure = sorted(influence_closure({seed}, tensor, pool=range(1, 15)))
    print(f"  start {{{seed}}} -> {closure}")
print("Modes 5..14 reach nothing inside the truncation: their single-mode "
      "oscillation is exactly self-contained.")
