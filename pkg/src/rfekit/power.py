"""Front-end power consumption and energy-per-bit model.

Consumption is additive over the three knob-driven stages: a low-noise term
that diverges as the noise figure approaches ideality, a linearity term
proportional to the saturation power, and a converter term exponential in
resolution:

    P = gamma_nf * fc / (F - 1) + gamma_max * P_max + gamma_adc * B * 2**b

with P_max = e_max * B.  Dividing by the bit rate C*B gives the energy per
bit, which for fixed spectral efficiency depends on carrier and bandwidth
only through the ratio fc/B once the saturation term is dropped.
"""
import math
from dataclasses import dataclass

from .core import RfeKnobs, SaturationKind

# thermal noise density kT at the 290 K reference: -174 dBm/Hz
KT = 10.0 ** (-20.4)
T_REF = 290.0

# noise figures below this floor (dB) are treated as non-physical inputs in
# grid builders; the 1/(F-1) divergence makes them meaningless targets
NF_FLOOR_DB = 0.5


def kt_at(temperature=T_REF):
    """Thermal noise density in J at the given temperature in kelvin."""
    if not temperature > 0.0:
        raise ValueError("temperature must be positive")
    return KT * temperature / T_REF


@dataclass(frozen=True)
class FiguresOfMerit:
    """Power-consumption constants of the three front-end stages.

    gamma_adc is joules per conversion step, gamma_nf joules (scales with
    carrier frequency over F - 1), gamma_max the dimensionless multiplier on
    saturation power.
    """
    gamma_adc: float = 165e-15
    gamma_nf: float = 140e-15
    gamma_max: float = 5000.0

    def __post_init__(self):
        if not (self.gamma_adc > 0.0 and self.gamma_nf > 0.0
                and self.gamma_max > 0.0):
            raise ValueError("figures of merit must be strictly positive")

    @classmethod
    def from_config(cls, section):
        """Build from a config mapping with femtojoule keys gamma_adc_fj and
        gamma_nf_fj plus dimensionless gamma_max; missing keys keep
        defaults, unknown keys are rejected."""
        known = {"gamma_adc_fj", "gamma_nf_fj", "gamma_max"}
        extra = set(section) - known
        if extra:
            raise ValueError(f"unknown figure-of-merit keys: {sorted(extra)}")
        defaults = cls()
        return cls(
            gamma_adc=float(section.get("gamma_adc_fj",
                                        defaults.gamma_adc * 1e15)) * 1e-15,
            gamma_nf=float(section.get("gamma_nf_fj",
                                       defaults.gamma_nf * 1e15)) * 1e-15,
            gamma_max=float(section.get("gamma_max", defaults.gamma_max)),
        )


@dataclass(frozen=True)
class PowerBreakdown:
    """Per-stage front-end power in watts; total is their sum by
    construction."""
    nf_term: float
    sat_term: float
    adc_term: float

    def __post_init__(self):
        if self.nf_term < 0.0 or self.sat_term < 0.0 or self.adc_term < 0.0:
            raise ValueError("power terms must be nonnegative")

    @property
    def total(self):
        return self.nf_term + self.sat_term + self.adc_term

    def scaled(self, factor):
        """Every term multiplied by a nonnegative factor."""
        if factor < 0.0:
            raise ValueError("scale factor must be nonnegative")
        return PowerBreakdown(self.nf_term * factor, self.sat_term * factor,
                              self.adc_term * factor)

    def as_dict(self):
        return {"nf_w": self.nf_term, "sat_w": self.sat_term,
                "adc_w": self.adc_term, "total_w": self.total}


def p_rfe(fc, bandwidth, knobs: RfeKnobs, fom: FiguresOfMerit = None):
    """Front-end power consumption breakdown in watts.

    nf_term = gamma_nf * fc / (F - 1); sat_term = gamma_max * e_max * B;
    adc_term = gamma_adc * B * 2**b.  The noise figure must exceed 1 (the
    term diverges as ideality is approached).
    """
    if not (fc > 0.0 and bandwidth > 0.0):
        raise ValueError("fc and bandwidth must be positive")
    if not knobs.noise_figure > 1.0:
        raise ValueError("noise figure must be > 1 (linear scale)")
    if fom is None:
        fom = FiguresOfMerit()
    return PowerBreakdown(
        nf_term=fom.gamma_nf * fc / (knobs.noise_figure - 1.0),
        sat_term=fom.gamma_max * knobs.e_max * bandwidth,
        adc_term=fom.gamma_adc * bandwidth * 2.0 ** knobs.bits,
    )


def energy_per_bit(fc, bandwidth, knobs: RfeKnobs, fom: FiguresOfMerit,
                   spectral_eff, neglect_sat=False):
    """Consumed joules per delivered bit at spectral efficiency C bits/s/Hz.

    Equals p_rfe(...).total / (C * B); with neglect_sat the saturation term
    is dropped, leaving a function of fc and B only through their ratio.
    C = 0 yields math.inf (no bits delivered — the infinity IS the sentinel
    callers should test for); negative C is rejected.
    """
    if spectral_eff < 0.0:
        raise ValueError("spectral efficiency must be nonnegative")
    if fom is None:
        fom = FiguresOfMerit()
    breakdown = p_rfe(fc, bandwidth, knobs, fom)
    power = (breakdown.nf_term + breakdown.adc_term if neglect_sat
             else breakdown.total)
    if spectral_eff == 0.0:
        return math.inf
    return power / (spectral_eff * bandwidth)


def energy_per_bit_ratio(fc_over_b, noise_figure, bits,
                         fom: FiguresOfMerit, spectral_eff):
    """Saturation-free energy per bit written in terms of the carrier-to-
    bandwidth ratio: (gamma_nf * (fc/B)/(F - 1) + gamma_adc * 2**b) / C.

    This is energy_per_bit with neglect_sat for any (fc, B) sharing the
    ratio; the optimizers over F and b work in this form.
    """
    if not fc_over_b > 0.0:
        raise ValueError("fc/B ratio must be positive")
    if not noise_figure > 1.0:
        raise ValueError("noise figure must be > 1 (linear scale)")
    if spectral_eff < 0.0:
        raise ValueError("spectral efficiency must be nonnegative")
    if fom is None:
        fom = FiguresOfMerit()
    density = (fom.gamma_nf * fc_over_b / (noise_figure - 1.0)
               + fom.gamma_adc * 2.0 ** bits)
    if spectral_eff == 0.0:
        return math.inf
    return density / spectral_eff


def pmax_from_iip3(iip3, kind=SaturationKind.TANH):
    """Saturation power implied by a third-order input intercept point:
    P_max = 1.5 * IIP3 for the smooth tanh law.

    The hard clipper has no cubic term, hence no finite IIP3 relation.
    """
    if not iip3 > 0.0:
        raise ValueError("iip3 must be positive")
    if SaturationKind(kind) is not SaturationKind.TANH:
        raise ValueError("IIP3 conversion is defined only for the tanh law")
    return 1.5 * iip3


def one_bit_energy_per_bit(fc, bandwidth, noise_figure, fom: FiguresOfMerit,
                           capacity):
    """Energy per bit of a one-bit front end without saturation:
    (gamma_nf * (fc/B) / (F - 1) + 2 * gamma_adc) / C.

    capacity must not exceed the one-bit limit of 2 bits/s/Hz; zero yields
    math.inf as in energy_per_bit.
    """
    if capacity > 2.0:
        raise ValueError("one-bit capacity cannot exceed 2 bits/s/Hz")
    knobs = RfeKnobs(noise_figure, math.inf, 1)
    return energy_per_bit(fc, bandwidth, knobs, fom, capacity,
                          neglect_sat=True)
