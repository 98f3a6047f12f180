"""Receiver front-end modeling toolkit.

Models the noise/saturation/quantization cascade of a receiver front end,
its SNDR and spectral efficiency, its power consumption and energy per bit,
and optimizes the design knobs (noise figure, saturation level, resolution)
for single-antenna, beamformed, and one-bit receivers.
"""
from .core import (MAX_BITS, NumericalAccuracyError, QuantizerSpec, RfeKnobs,
                   SaturationKind, apply_rfe, beta_factor, gain_alpha,
                   quantize, quantizer_mse, quantizer_step, sat_envelope,
                   saturate)
from .metrics import (OperatingPoint, QuantizerModel, RhoResult,
                      awgn_capacity, binary_entropy, calibrate_c,
                      one_bit_capacity, q_function, rho_sq_monte_carlo,
                      rho_sq_numeric, rho_sq_quant_only, rho_sq_vector,
                      sdr_ceiling, sndr, sndr_approx, spectral_efficiency)
from .power import (KT, FiguresOfMerit, PowerBreakdown, energy_per_bit,
                    energy_per_bit_ratio, kt_at, one_bit_energy_per_bit,
                    p_rfe, pmax_from_iip3)
from .beamforming import (Architecture, ArrayConfig, analog_backoff,
                          analog_bf_ceiling, analog_bf_power, analog_bf_sndr,
                          digital_bf_ceiling, digital_bf_power,
                          digital_bf_sndr)
from .optimizer import (KnobGrid, OptResult, SweepResult, min_eb_over_F,
                        min_eb_over_b, min_power_at_sndr, tradeoff_curve)
from .linkbudget import (LinkScenario, ScenarioReport, evaluate_scenario,
                         load_config, parse_config, pathloss_db,
                         snr_ideal_from_link)

try:
    from importlib.metadata import version as _version
    __version__ = _version("artifact")
except Exception:  # pragma: no cover - source tree without install
    __version__ = "0.1.0"
