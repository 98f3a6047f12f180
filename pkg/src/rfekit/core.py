"""Receiver front-end signal path: memoryless saturation, automatic gain,
and complex mid-rise quantization.

The front end maps a received symbol r and thermal noise z to

    y = Q_b(sqrt(alpha) * S(r + z))

where S is a radial saturation characteristic with energy limit E_max, alpha
is the automatic gain that normalizes the saturator output to unit average
energy, and Q_b quantizes the real and imaginary parts independently with a
mid-rise uniform quantizer using 2**b levels per dimension.
"""
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy import optimize
from scipy.stats import norm

from ._quad import rayleigh_expectation

MAX_BITS = 12


class NumericalAccuracyError(ArithmeticError):
    """A self-checked numerical routine failed its own accuracy contract."""


class SaturationKind(str, Enum):
    """Radial compression law applied by the front end's analog stage."""
    TANH = "tanh"
    CLIP = "clip"


@dataclass(frozen=True)
class RfeKnobs:
    """Front-end design knobs.

    noise_figure is linear (not dB) and must exceed 1; e_max is the
    saturation energy limit in joules per symbol (math.inf disables
    saturation); bits counts quantizer bits per real dimension.
    """
    noise_figure: float
    e_max: float
    bits: float
    sat_kind: SaturationKind = SaturationKind.TANH

    def __post_init__(self):
        if not self.noise_figure > 1.0:
            raise ValueError("noise figure must be > 1 (linear scale)")
        if not self.e_max > 0.0:
            raise ValueError("e_max must be positive")
        if not self.bits > 0.0:
            raise ValueError("bits must be positive")
        object.__setattr__(self, "sat_kind", SaturationKind(self.sat_kind))


def sat_envelope(t, kind=SaturationKind.TANH):
    """Normalized saturation envelope phi on t >= 0: tanh(t) or min(t, 1).

    The physical characteristic is S(v) = sqrt(E_max) * phi(|v|/sqrt(E_max))
    * v/|v|, so phi fixes the law once amplitudes are measured against the
    saturation limit.
    """
    t = np.asarray(t, dtype=float)
    if SaturationKind(kind) is SaturationKind.TANH:
        return np.tanh(t)
    return np.minimum(t, 1.0)


def saturate(v, e_max, kind=SaturationKind.TANH):
    """Apply the radial saturation characteristic to complex samples.

    Magnitudes are compressed through the envelope law while phase is
    preserved exactly; the output magnitude never exceeds sqrt(e_max).
    """
    if not e_max > 0.0:
        raise ValueError("e_max must be positive")
    v = np.asarray(v, dtype=complex)
    if not np.all(np.isfinite(v)):
        raise ValueError("input samples must be finite")
    if math.isinf(e_max):
        out = v + 0.0
        return complex(out) if out.ndim == 0 else out
    mag = np.abs(v)
    safe = np.where(mag > 0.0, mag, 1.0)
    root = math.sqrt(e_max)
    scale = np.where(mag > 0.0,
                     root * sat_envelope(mag / root, kind) / safe, 0.0)
    out = v * scale
    return complex(out) if out.ndim == 0 else out


def beta_factor(nu, kind=SaturationKind.TANH, order=48):
    """Average output energy E[phi(|v|/sqrt(nu))**2] of the normalized
    saturator driven by unit-energy circular Gaussian input.

    nu is the backoff: saturation limit over total input energy.  For the
    clipping law the Rayleigh integral has the closed form
    (1 - exp(-nu)*(1+nu))/nu + exp(-nu); the smooth tanh law is integrated
    numerically.
    """
    if not nu > 0.0:
        raise ValueError("backoff nu must be positive")
    if math.isinf(nu):
        return 0.0
    kind = SaturationKind(kind)
    if kind is SaturationKind.CLIP:
        return (1.0 - math.exp(-nu) * (1.0 + nu)) / nu + math.exp(-nu)
    root = math.sqrt(nu)
    return rayleigh_expectation(lambda t: np.tanh(t / root) ** 2,
                                kinks=(root,), order=order)


def gain_alpha(e_r, n0, knobs: RfeKnobs, order=48):
    """Automatic gain 1 / E[|S(r+z)|**2] for symbol energy e_r and noise
    energy n0 per symbol.

    Computed as 1 / (e_max * beta(nu)) with nu = e_max / (e_r + n0).  In the
    large-backoff limit this tends to 1 / (e_r + n0).
    """
    if e_r < 0.0:
        raise ValueError("e_r must be nonnegative")
    if not n0 > 0.0:
        raise ValueError("n0 must be positive")
    if math.isinf(knobs.e_max):
        return 1.0 / (e_r + n0)
    nu = knobs.e_max / (e_r + n0)
    beta = beta_factor(nu, knobs.sat_kind, order=order)
    return 1.0 / (knobs.e_max * beta)


# --- mid-rise uniform quantizer -----------------------------------------

def _quant_moments(step, bits, sigma=1.0):
    """Closed-form (E[x*Q(x)], E[Q(x)**2]) for x ~ N(0, sigma**2) through a
    mid-rise quantizer with the given per-dimension step.

    With decision edges e_k = k*step (k = 0..K, e_K = inf, K = 2**(bits-1))
    and output points q_k = (k + 1/2)*step, symmetry in x gives

        E[xQ]   = 2*sigma * sum_k q_k * (pdf(e_k/sigma) - pdf(e_{k+1}/sigma))
        E[Q**2] = 2 * sum_k q_k**2 * (cdf(e_{k+1}/sigma) - cdf(e_k/sigma))
    """
    levels = 2 ** (int(bits) - 1)
    k = np.arange(levels)
    lo = k * step / sigma
    hi = (k + 1) * step / sigma
    hi[-1] = np.inf
    q = (k + 0.5) * step
    pdf_lo = norm.pdf(lo)
    pdf_hi = np.where(np.isinf(hi), 0.0, norm.pdf(hi))
    exq = 2.0 * sigma * float(np.sum(q * (pdf_lo - pdf_hi)))
    eq2 = 2.0 * float(np.sum(q ** 2 * (norm.cdf(hi) - norm.cdf(lo))))
    return exq, eq2


def quantizer_mse(step, bits, sigma=1.0):
    """Mean squared error E[(x - Q(x))**2] of the mid-rise quantizer on a
    zero-mean Gaussian input."""
    if not step > 0.0:
        raise ValueError("step must be positive")
    exq, eq2 = _quant_moments(step, bits, sigma)
    return sigma ** 2 - 2.0 * exq + eq2


@lru_cache(maxsize=None)
def quantizer_step(bits: int) -> float:
    """MSE-optimal mid-rise step for a unit-variance real Gaussian input.

    Found by minimizing the closed-form distortion; the bracket tracks the
    roughly geometric decay of the optimal step with bits.  At the optimum
    the quantization error is uncorrelated with the output, which downstream
    correlation formulas rely on.
    """
    if bits != int(bits) or not 1 <= int(bits) <= MAX_BITS:
        raise ValueError(f"bits must be an integer in [1, {MAX_BITS}]")
    bits = int(bits)
    lo = 0.25 * 0.55 ** (bits - 1)
    hi = 4.00 * 0.58 ** (bits - 1)
    res = optimize.minimize_scalar(quantizer_mse, bounds=(lo, hi),
                                   args=(bits,), method="bounded",
                                   options={"xatol": 1e-12})
    return float(res.x)


@dataclass(frozen=True)
class QuantizerSpec:
    """Concrete mid-rise quantizer: bits per real dimension and step size."""
    bits: int
    step: float

    def __post_init__(self):
        if self.bits != int(self.bits) or not 1 <= int(self.bits) <= MAX_BITS:
            raise ValueError(f"bits must be an integer in [1, {MAX_BITS}]")
        if not self.step > 0.0:
            raise ValueError("step must be positive")

    @classmethod
    def canonical(cls, bits: int) -> "QuantizerSpec":
        """MSE-optimal spec for unit-variance real inputs per dimension."""
        return cls(int(bits), quantizer_step(int(bits)))

    @classmethod
    def for_unit_energy(cls, bits: int) -> "QuantizerSpec":
        """MSE-optimal spec for a unit-energy complex input, whose real and
        imaginary parts each carry variance 1/2."""
        return cls(int(bits), quantizer_step(int(bits)) / math.sqrt(2.0))


def _quantize_real(x, step, levels):
    idx = np.minimum(np.floor(np.abs(x) / step), levels - 1)
    mag = (idx + 0.5) * step
    return np.where(x < 0.0, -mag, mag)


def quantize(u, spec: QuantizerSpec):
    """Complex mid-rise quantization, applied per real dimension.

    Output points sit at +-(k + 1/2)*step for k = 0..2**(bits-1) - 1; inputs
    beyond the outermost decision edge clamp to the outermost point.  Exact
    zeros map to +step/2 (the quantizer has no zero output level).
    """
    u = np.asarray(u, dtype=complex)
    levels = 2 ** (spec.bits - 1)
    out = (_quantize_real(u.real, spec.step, levels)
           + 1j * _quantize_real(u.imag, spec.step, levels))
    return complex(out) if out.ndim == 0 else out


def apply_rfe(r, z, knobs: RfeKnobs, alpha, spec: QuantizerSpec = None):
    """Full front-end map y = Q(sqrt(alpha) * S(r + z)).

    alpha is the automatic gain (see gain_alpha); when spec is omitted the
    quantizer defaults to the unit-energy canonical spec for knobs.bits,
    matching the statistics of the gain-normalized saturator output.
    """
    if not alpha > 0.0:
        raise ValueError("alpha must be positive")
    if spec is None:
        spec = QuantizerSpec.for_unit_energy(int(knobs.bits))
    sat = saturate(np.asarray(r, dtype=complex) + np.asarray(z, dtype=complex),
                   knobs.e_max, knobs.sat_kind)
    return quantize(math.sqrt(alpha) * np.asarray(sat), spec)
