"""Plate-mode spectrum and torsional flutter thresholds of a hinged-free
rectangular plate modelling a suspension-bridge deck."""

from .config import RunConfig, load_config
from .coefficients import (GalerkinTensor, ModalCoefficients, compute_abar_dlk,
                           compute_ak_bk, compute_galerkin_tensor, influence_closure,
                           influences, sine_quartic_integral)
from .coupled import (CoupledState, CoupledSystem, CoupledThresholdResult,
                      ProbeConfig, ProbeResult, coupled_threshold_scan, integrate,
                      nonlinear_2x2, probe)
from .duffing import (DuffingOrbit, amplitude, energy_of, lambda_pm, period,
                      solve_orbit)
from .errors import (BracketError, ConfigError, NoRootError, PlateFlutterError,
                     ToleranceError)
from .hill import (FlutterEnergy, HillProblem, StabilityVerdict, ThresholdResult,
                   burdina_check, flutter_energy, growth_simulation, monodromy,
                   resonance_flags, threshold_scan, verdict, zhukovskii_check)
from .modes import (ModeBasis, ModeProfile, eval_profile, profile_for,
                    rayleigh_quotient, sup_norm_mode)
from .spectrum import (Branch, Eigenpair, PlateConfig, enumerate_spectrum,
                       nu1_exists, residual_mu1, solve_branch)
from .tnb import TnbParameters, derive_parameters, displacement_meters

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
