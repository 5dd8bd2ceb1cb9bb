"""Walk through the oscillating-mode spectrum of the bridge-deck plate.

The deck is a long thin plate, hinged at the short ends and free along the
sides.  Its small oscillations split into longitudinal modes (the deck moves
up and down, shape ~ sin(mx)) and torsional ones (the deck twists, shape
~ y sin(mx)).  This script solves the four transcendental characteristic
equations and prints the ordered spectrum for two plate geometries.
"""

import math

from plateflutter import PlateConfig, enumerate_spectrum


def show(cfg, title):
    print(f"\n{title}")
    print(f"  half-width = {cfg.half_width:.6f}, poisson = {cfg.poisson}")
    print(f"  {'rank':>4} {'kind':>12} {'label':>10} {'sqrt(lambda)':>14}")
    for rank, e in enumerate(enumerate_spectrum(16, cfg), start=1):
        print(f"  {rank:>4} {e.kind:>12} {e.label:>10} {e.sqrt_lam:>14.4f}")


show(PlateConfig(), "Tacoma-proportioned deck (half-width pi/150, sigma 0.2)")
show(PlateConfig(half_width=math.pi / 144, poisson=0.25, strip_width=math.pi / 1440),
     "Slightly wider, stiffer-material variant (half-width pi/144, sigma 0.25)")

print("""
Note how the first ten modes are longitudinal; the first torsional mode
(y sin x) appears only at rank 11, and the one-node torsional mode
(y sin 2x) -- the shape seen in historical deck failures -- at rank 16.
""")
