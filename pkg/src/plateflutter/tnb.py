"""Physical parameters of the Tacoma Narrows deck and unit conversions.

Derives the cable tension, plate rigidity, equivalent thickness, and the
dimensionless stiffness gamma from the bridge data, and converts
nondimensional mode amplitudes back to meters of deck displacement.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .modes import ModeBasis, sup_norm_mode


@dataclass(frozen=True)
class TnbParameters:
    """Bridge inputs (SI units) and the derived model constants.

    The rigidity uses the deck width implied by the nondimensional plate
    (span * 2*ell_hat/pi); with the default ell_hat = pi/150 that is span/75,
    the width consistent with scaling the deck to (0, pi) x (-ell_hat,
    ell_hat).  half_width records the physical half-width for reference.
    """
    span: float = 853.44                 # m
    half_width: float = 5.945            # m, physical deck half-width
    sag: float = 70.0                    # m, cable parabola sag
    weight_per_length: float = 83000.0   # N/m
    mass_density: float = 635.0          # kg/m^2
    young: float = 2.1e11                # Pa
    inertia: float = 0.1528              # m^4
    poisson: float = 0.2
    ell_hat: float = math.pi / 150       # nondimensional plate half-width
    tension: float = field(init=False)         # H, N
    rigidity: float = field(init=False)        # Gamma, Pa m^3
    thickness: float = field(init=False)       # d, m
    gamma: float = field(init=False)           # dimensionless stiffness
    spring_constant: float = field(init=False)  # k1 = k2 = 6000 H / L^3

    def __post_init__(self):
        for name in ("span", "half_width", "sag", "weight_per_length",
                     "mass_density", "young", "inertia", "ell_hat"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        L, sig = self.span, self.poisson
        H = self.weight_per_length * L ** 2 / (8.0 * self.sag)
        width = L * 2.0 * self.ell_hat / math.pi
        Gamma = self.young * self.inertia / (width * (1.0 - sig ** 2))
        d = (12.0 * (1.0 - sig ** 2) * Gamma / self.young) ** (1.0 / 3.0)
        gamma = math.pi ** 4 * Gamma / (6000.0 * H * L)
        object.__setattr__(self, "tension", H)
        object.__setattr__(self, "rigidity", Gamma)
        object.__setattr__(self, "thickness", d)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "spring_constant", 6000.0 * H / L ** 3)

    @property
    def amplitude_scale(self) -> float:
        """sqrt(k1/k2) converting nondimensional u to meters; 1 at the TNB."""
        return 1.0

    def report_json(self) -> str:
        rec = {"span_m": self.span, "half_width_m": self.half_width,
               "sag_m": self.sag, "weight_per_length_N_per_m": self.weight_per_length,
               "mass_density_kg_per_m2": self.mass_density, "young_Pa": self.young,
               "inertia_m4": self.inertia, "poisson": self.poisson,
               "tension_N": self.tension, "rigidity_Pa_m3": self.rigidity,
               "thickness_m": self.thickness, "gamma": self.gamma,
               "spring_constant_N_per_m3": self.spring_constant}
        return json.dumps(rec, sort_keys=True, indent=2)


def derive_parameters(**overrides) -> TnbParameters:
    """TnbParameters with any subset of the bridge inputs overridden."""
    return TnbParameters(**overrides)


def displacement_meters(A: float, k: int, basis: ModeBasis,
                        params: TnbParameters | None = None) -> float:
    """Deck displacement in meters for mode k at nondimensional amplitude A.

    ||u0||_inf = A * ||w~_k||_inf * sqrt(k1/k2); the spring constants are
    equal here so the scale factor is exactly one.
    """
    if A < 0:
        raise ValueError("amplitude must be nonnegative")
    params = params or TnbParameters()
    return A * sup_norm_mode(k, basis) * params.amplitude_scale


def sup_norm_csv(basis: ModeBasis) -> str:
    """Sup norms of the L2-normalized longitudinal modes, 'k,sup_norm' rows."""
    lines = ["k,sup_norm"]
    for k in range(1, basis.n_long + 1):
        lines.append(f"{k},{sup_norm_mode(k, basis):.17g}")
    return "\n".join(lines) + "\n"


def displacement_table_csv(amplitudes_l1: dict[int, float | None],
                           amplitudes_l2: dict[int, float | None],
                           basis: ModeBasis,
                           params: TnbParameters | None = None) -> str:
    """Meter conversion of per-mode thresholds, 'k,meters_l1,meters_l2' rows.

    A None amplitude (threshold exceeded the scan cap) renders as empty.
    """
    lines = ["k,meters_l1,meters_l2"]
    for k in range(1, basis.n_long + 1):
        cells = []
        for amps in (amplitudes_l1, amplitudes_l2):
            A = amps.get(k)
            cells.append("" if A is None else f"{displacement_meters(A, k, basis, params):.17g}")
        lines.append(f"{k},{cells[0]},{cells[1]}")
    return "\n".join(lines) + "\n"
