"""Multi-antenna front-end models.

Digital beamforming runs one full front end per antenna and combines in
baseband: with distortion uncorrelated across antennas both the SNDR and the
power consumption scale by the antenna count.  Analog beamforming cophases
at RF into a single shared chain: the ideal SNR again grows with N, but the
combined signal drives the one saturator N times harder (backoff
nu' = e_max / (N*e_r + n0)), and the shared low-noise stage must additionally
overcome the phase-shifter insertion loss with extra gain G.
"""
from dataclasses import dataclass
from enum import Enum

from .core import RfeKnobs, SaturationKind
from .metrics import rho_sq_numeric, sdr_ceiling
from .power import FiguresOfMerit, PowerBreakdown, p_rfe


class Architecture(str, Enum):
    DIGITAL = "digital"
    ANALOG = "analog"


@dataclass(frozen=True)
class ArrayConfig:
    """Antenna count, combining architecture, and (analog only) the linear
    LNA gain surplus covering phase-shifter insertion loss."""
    n: int
    architecture: Architecture = Architecture.DIGITAL
    lna_extra_gain: float = 10.0

    def __post_init__(self):
        if self.n != int(self.n) or self.n < 1:
            raise ValueError("antenna count must be an integer >= 1")
        if not self.lna_extra_gain >= 1.0:
            raise ValueError("lna_extra_gain must be >= 1 (linear scale)")
        object.__setattr__(self, "architecture",
                           Architecture(self.architecture))

    @classmethod
    def from_config(cls, section):
        """Build from a config mapping with keys n, architecture, and
        lna_extra_gain_db."""
        known = {"n", "architecture", "lna_extra_gain_db"}
        extra = set(section) - known
        if extra:
            raise ValueError(f"unknown array keys: {sorted(extra)}")
        gain_db = float(section.get("lna_extra_gain_db", 10.0))
        return cls(n=int(section["n"]),
                   architecture=section.get("architecture", "digital"),
                   lna_extra_gain=10.0 ** (gain_db / 10.0))


def digital_bf_sndr(single_sndr, n):
    """Combined SNDR with per-antenna front ends: N times the single-antenna
    SNDR (distortion uncorrelated across antennas)."""
    if n < 1:
        raise ValueError("antenna count must be >= 1")
    if single_sndr < 0.0:
        raise ValueError("SNDR must be nonnegative")
    return n * single_sndr


def digital_bf_ceiling(rho_sq, n):
    """High-SNR SNDR ceiling of digital combining: N * rho**2/(1 - rho**2),
    growing linearly with the array."""
    if n < 1:
        raise ValueError("antenna count must be >= 1")
    return n * sdr_ceiling(rho_sq)


def digital_bf_power(per_rfe: PowerBreakdown, n):
    """Power of N replicated front ends: every term scaled by N."""
    if n < 1:
        raise ValueError("antenna count must be >= 1")
    return per_rfe.scaled(n)


def analog_backoff(e_max, n, e_r, n0):
    """Saturation backoff of the shared chain after cophased combining:
    e_max / (N*e_r + n0).  The coherent sum boosts signal energy N-fold
    while the noise stays at its single-antenna level."""
    if n < 1:
        raise ValueError("antenna count must be >= 1")
    if e_r < 0.0 or not n0 > 0.0 or not e_max > 0.0:
        raise ValueError("energies must be positive (e_r nonnegative)")
    return e_max / (n * e_r + n0)


def analog_bf_sndr(snr_ideal, noise_figure, n, bits, e_max, e_r, n0,
                   sat_kind=SaturationKind.TANH):
    """SNDR of analog combining into one shared front end.

    Identical in form to the single-antenna expression with SNR_ideal
    multiplied by N, but rho**2 is evaluated at the reduced backoff
    nu' = e_max/(N*e_r + n0) of the harder-driven saturator.
    """
    if snr_ideal < 0.0:
        raise ValueError("snr_ideal must be nonnegative")
    if not noise_figure > 1.0:
        raise ValueError("noise figure must be > 1 (linear scale)")
    nu = analog_backoff(e_max, n, e_r, n0)
    rho = rho_sq_numeric(bits, nu, sat_kind).rho_sq
    s = n * snr_ideal
    return s * rho / (noise_figure + s * (1.0 - rho))


def analog_bf_ceiling(bits, e_max, n, e_r, n0,
                      sat_kind=SaturationKind.TANH):
    """High-SNR ceiling of the analog architecture: rho**2/(1 - rho**2) at
    the combined-drive backoff — no N factor, unlike digital combining."""
    nu = analog_backoff(e_max, n, e_r, n0)
    return sdr_ceiling(rho_sq_numeric(bits, nu, sat_kind).rho_sq)


def analog_bf_power(fc, bandwidth, knobs: RfeKnobs, fom: FiguresOfMerit,
                    n, lna_extra_gain=10.0):
    """Power of the analog array: N low-noise stages each with gain surplus
    G (nf_term scaled by N*G), one shared mixer/ADC (sat and adc terms as in
    the single front end)."""
    if n < 1:
        raise ValueError("antenna count must be >= 1")
    if not lna_extra_gain >= 1.0:
        raise ValueError("lna_extra_gain must be >= 1 (linear scale)")
    single = p_rfe(fc, bandwidth, knobs, fom)
    return PowerBreakdown(nf_term=single.nf_term * n * lna_extra_gain,
                          sat_term=single.sat_term,
                          adc_term=single.adc_term)
