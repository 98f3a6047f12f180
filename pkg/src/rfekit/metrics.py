"""Distortion and rate metrics for the saturating, quantizing front end.

The central quantity is the squared correlation coefficient rho**2 between
the unit-energy front-end input and the quantizer output.  Under a Bussgang
decomposition the end-to-end SNDR of a front end with noise figure F at
ideal SNR S is

    SNDR = S * rho**2 / (F + S * (1 - rho**2))

so rho**2 fixes both the distortion-limited ceiling rho**2/(1 - rho**2) and
the low-SNR behavior S * rho**2 / F.  Three evaluation routes are provided:
a deterministic polar quadrature (the reference), a seeded Monte Carlo
estimator (the cross-check), and closed forms for the no-saturation and
idealized-quantizer limits.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.stats import norm

from ._quad import build_breakpoints, segment_nodes
from .core import (MAX_BITS, NumericalAccuracyError, SaturationKind,
                   QuantizerSpec, _quant_moments, beta_factor, quantize,
                   quantizer_step, sat_envelope)


@dataclass(frozen=True)
class RhoResult:
    """Squared input-output correlation with its provenance.

    method is one of "quadrature", "monte-carlo", "closed-form"; stderr is
    zero for the deterministic routes.
    """
    rho_sq: float
    method: str
    stderr: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.rho_sq <= 1.0:
            raise ValueError("rho_sq must lie in [0, 1]")
        if self.stderr < 0.0:
            raise ValueError("stderr must be nonnegative")


@dataclass(frozen=True)
class OperatingPoint:
    """Receiver operating point in energy-normalized terms.

    snr_ideal is the SNR of a saturation- and quantization-free receiver at
    reference noise figure 1; noise_figure is linear; backoff is
    e_max / (e_r + n0); n0 = kT * noise_figure is the noise energy per
    symbol and e_r the received symbol energy.
    """
    snr_ideal: float
    noise_figure: float
    backoff: float
    n0: float
    e_r: float

    def __post_init__(self):
        if self.snr_ideal < 0.0:
            raise ValueError("snr_ideal must be nonnegative")
        if not self.noise_figure > 1.0:
            raise ValueError("noise figure must be > 1 (linear scale)")
        if not self.backoff > 0.0:
            raise ValueError("backoff must be positive")
        if not self.n0 > 0.0:
            raise ValueError("n0 must be positive")
        if self.e_r < 0.0:
            raise ValueError("e_r must be nonnegative")
        expect = self.snr_ideal * self.n0 / self.noise_figure
        if abs(self.e_r - expect) > 1e-9 * max(self.e_r, expect, 1e-300):
            raise ValueError("inconsistent point: e_r != snr_ideal * kT")

    @classmethod
    def create(cls, snr_ideal, noise_figure, e_max, kt=None):
        """Build a consistent point from ideal SNR, linear noise figure and
        the saturation limit e_max (joules per symbol)."""
        if kt is None:
            from .power import KT
            kt = KT
        e_r = snr_ideal * kt
        n0 = kt * noise_figure
        return cls(snr_ideal, noise_figure, e_max / (e_r + n0), n0, e_r)

    @property
    def e_max(self):
        return self.backoff * (self.e_r + self.n0)


# --- polar quadrature engine ---------------------------------------------

def _edge_kinks(bits, nu, kind, beta, step_eff):
    """Radii where the gain-normalized saturator envelope crosses quantizer
    decision edges (plus the clipping knee): the integrand's breakpoints."""
    levels = 2 ** (bits - 1)
    edges = np.arange(1, levels) * step_eff
    sb = math.sqrt(beta)
    sq = math.sqrt(nu)
    if kind is SaturationKind.TANH:
        x = edges * sb
        x = x[x < 1.0 - 1e-14]
        t = sq * np.arctanh(x)
    else:
        # Edges at or above the clipped ceiling 1/sqrt(beta) are never
        # crossed; listing them would waste segment budget past the knee.
        x = edges * sb
        t = sq * x[x < 1.0]
        t = np.append(t, sq)
    return [float(v) for v in t]


@lru_cache(maxsize=16384)
def _rho_quadrature(bits, nu, kind, order):
    """rho**2 via polar decomposition of the 2-D Gaussian expectation.

    For input radius t the gain-normalized saturator output radius is
    a(t) = phi(t/sqrt(nu))/sqrt(beta).  The angular averages of the
    correlation and output-energy integrands at fixed radius telescope into
    closed forms over the quantizer edges e_k = k*step:

        M1(a) = (2/pi)*step*(1/2 + sum_k sqrt(1 - (e_k/a)**2))
        M2(a) = step**2/4 + (4*step**2/pi) * sum_k k*arccos(min(e_k/a, 1))

    (terms with e_k >= a vanish), leaving radial integrals against the
    Rayleigh weight:

        I1 = int 2 t**2 exp(-t**2) M1(a(t)) dt     (correlation)
        I2 = int 2 t    exp(-t**2) M2(a(t)) dt     (output energy)
        rho**2 = 2 * I1**2 / I2.

    Segmented Gauss-Legendre with the sqrt substitution handles the
    one-sided sqrt branches that each edge crossing creates.
    """
    # Normalize here, not just in the public wrapper: the kink placement
    # branches on identity, and a raw string shares this cache's key space
    # with the equal-hashing enum member.
    kind = SaturationKind(kind)
    beta = beta_factor(nu, kind, order=96)
    step_eff = quantizer_step(bits) / math.sqrt(2.0)
    levels = 2 ** (bits - 1)
    edges = np.arange(1, levels) * step_eff
    karr = np.arange(1, levels, dtype=float)
    sq = math.sqrt(nu)
    sb = math.sqrt(beta)

    kinks = _edge_kinks(bits, nu, kind, beta, step_eff)
    t, w = segment_nodes(build_breakpoints(kinks), order)
    a = sat_envelope(t / sq, kind) / sb

    i1 = 0.0
    i2 = 0.0
    chunk = max(1, int(4e6 / max(1, len(edges))))
    for lo in range(0, len(t), chunk):
        tc = t[lo:lo + chunk]
        wc = w[lo:lo + chunk]
        ac = a[lo:lo + chunk]
        if len(edges):
            with np.errstate(divide="ignore"):
                ratio = np.minimum(edges[None, :] / ac[:, None], 1.0)
            root_sum = np.sqrt(1.0 - ratio * ratio).sum(axis=1)
            arc_sum = (karr * np.arccos(ratio)).sum(axis=1)
        else:
            root_sum = np.zeros_like(tc)
            arc_sum = np.zeros_like(tc)
        m1 = (2.0 / math.pi) * step_eff * (0.5 + root_sum)
        m2 = step_eff ** 2 / 4.0 + (4.0 * step_eff ** 2 / math.pi) * arc_sum
        damp = np.exp(-tc * tc)
        i1 += float(np.sum(wc * 2.0 * tc * tc * damp * m1))
        i2 += float(np.sum(wc * 2.0 * tc * damp * m2))
    return 2.0 * i1 * i1 / i2


def _check_bits(bits):
    if bits != int(bits) or not 1 <= int(bits) <= MAX_BITS:
        raise ValueError(f"bits must be an integer in [1, {MAX_BITS}]")
    return int(bits)


def rho_sq_numeric(bits, nu, sat_kind=SaturationKind.TANH, order=24):
    """Deterministic rho**2 for a b-bit front end at backoff nu.

    Runs the polar quadrature at the given order and at twice the order; a
    disagreement beyond 1e-6 raises NumericalAccuracyError rather than
    returning a silently degraded value.  nu = inf returns the exact
    no-saturation limit.
    """
    bits = _check_bits(bits)
    if not nu > 0.0:
        raise ValueError("backoff nu must be positive")
    if order < 2:
        raise ValueError("order must be at least 2")
    if math.isinf(nu):
        return rho_sq_quant_only(bits)
    kind = SaturationKind(sat_kind)
    r_lo = _rho_quadrature(bits, float(nu), kind, int(order))
    r_hi = _rho_quadrature(bits, float(nu), kind, 2 * int(order))
    if abs(r_hi - r_lo) > 1e-6:
        raise NumericalAccuracyError(
            f"quadrature self-check failed: order {order} vs {2 * order} "
            f"differ by {abs(r_hi - r_lo):.3e} (> 1e-6)")
    return RhoResult(min(r_hi, 1.0), "quadrature", 0.0)


def rho_sq_monte_carlo(bits, nu, sat_kind=SaturationKind.TANH,
                       samples=1_000_000, seed=0, chunk=1 << 20):
    """Seeded Monte Carlo estimate of rho**2 with a delta-method stderr.

    Simulates the gain-normalized pipeline on unit-energy circular Gaussian
    samples; identical arguments give bit-identical results.  Fewer than
    10**4 samples is rejected as statistically meaningless here.
    """
    bits = _check_bits(bits)
    if not nu > 0.0 or math.isinf(nu):
        raise ValueError("backoff nu must be positive and finite")
    if samples < 10_000:
        raise ValueError("samples must be at least 10000")
    kind = SaturationKind(sat_kind)
    beta = beta_factor(nu, kind)
    spec = QuantizerSpec.for_unit_energy(bits)
    root_nu = math.sqrt(nu)
    root_beta = math.sqrt(beta)
    rng = np.random.Generator(np.random.PCG64(seed))
    s1 = np.zeros(3)
    s2 = np.zeros((3, 3))
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        v = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / math.sqrt(2.0)
        mag = np.abs(v)
        safe = np.where(mag > 0.0, mag, 1.0)
        u = v * (sat_envelope(mag / root_nu, kind) / (root_beta * safe))
        y = quantize(u, spec)
        corr = np.conj(v) * y
        g = np.stack([corr.real, corr.imag, np.abs(y) ** 2])
        s1 += g.sum(axis=1)
        s2 += g @ g.T
        done += m
    mean = s1 / samples
    cov = (s2 / samples - np.outer(mean, mean)) / samples
    m0, m1, m2 = mean
    rho = (m0 * m0 + m1 * m1) / m2
    h = np.array([2.0 * m0 / m2, 2.0 * m1 / m2,
                  -(m0 * m0 + m1 * m1) / (m2 * m2)])
    stderr = float(math.sqrt(max(0.0, h @ cov @ h)))
    return RhoResult(min(float(rho), 1.0), "monte-carlo", stderr)


def rho_sq_quant_only(bits):
    """Exact rho**2 of the canonical mid-rise quantizer alone (the nu -> inf
    limit of the full front end).

    At the MSE-optimal step the error is uncorrelated with the output, so
    rho**2 equals 1 - D with D the per-dimension distortion.
    """
    bits = _check_bits(bits)
    step = quantizer_step(bits)
    exq, eq2 = _quant_moments(step, bits, 1.0)
    return RhoResult(exq * exq / eq2, "closed-form", 0.0)


def rho_sq_vector(bits):
    """rho**2 = 1 - 2**(-2b) of an idealized rate-b vector quantizer; bits
    may be fractional."""
    if not bits > 0.0:
        raise ValueError("bits must be positive")
    return RhoResult(1.0 - 4.0 ** (-bits), "closed-form", 0.0)


def calibrate_c(bit_range=range(3, 9)):
    """Fit the constant c of the asymptotic distortion model
    d(b) = c * b * 2**(-2b) to the exact scalar-quantizer distortions.

    Least squares in the log domain, i.e. ln c is the mean of
    ln(d_b / (b * 4**-b)) over the requested bit widths (each at least 3,
    where the asymptotic shape starts to hold; at least two distinct widths
    are required).
    """
    raw = list(bit_range)
    if any(b != int(b) or not 3 <= int(b) <= MAX_BITS for b in raw):
        raise ValueError(f"bit widths must be integers in [3, {MAX_BITS}]")
    bits = sorted(set(int(b) for b in raw))
    if len(bits) < 2:
        raise ValueError("need at least two distinct bit widths")
    logs = []
    for b in bits:
        d = 1.0 - rho_sq_quant_only(b).rho_sq
        logs.append(math.log(d / (b * 4.0 ** (-b))))
    return math.exp(sum(logs) / len(logs))


@dataclass(frozen=True)
class QuantizerModel:
    """Selectable quantizer abstraction used by metrics and optimizers.

    kind is one of "scalar-uniform" (exact mid-rise model), "optimal-vector"
    (idealized vector quantizer), "asymptotic" (c * b * 2**(-2b) distortion,
    requires c), or "one-bit" (sign quantizer, bits must equal 1).
    """
    kind: str
    bits: float
    c: float = None

    KINDS = ("scalar-uniform", "optimal-vector", "asymptotic", "one-bit")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"kind must be one of {self.KINDS}")
        if self.kind in ("scalar-uniform", "one-bit"):
            _check_bits(self.bits)
        elif not self.bits > 0.0:
            raise ValueError("bits must be positive")
        if self.kind == "one-bit" and int(self.bits) != 1:
            raise ValueError("one-bit model requires bits == 1")
        if self.kind == "asymptotic":
            if self.c is None or not self.c > 0.0:
                raise ValueError("asymptotic model requires c > 0")

    def rho_sq(self, nu=math.inf, sat_kind=SaturationKind.TANH):
        """rho**2 under this model at the given backoff.

        The idealized models are backoff-free abstractions; the sign
        quantizer sees only phase, so a radial saturation law cannot change
        its correlation (2/pi for Gaussian input at any backoff).
        """
        if self.kind == "scalar-uniform":
            return rho_sq_numeric(int(self.bits), nu, sat_kind)
        if self.kind == "optimal-vector":
            return rho_sq_vector(self.bits)
        if self.kind == "one-bit":
            return RhoResult(2.0 / math.pi, "closed-form", 0.0)
        d = self.c * self.bits * 4.0 ** (-self.bits)
        return RhoResult(max(0.0, 1.0 - d), "closed-form", 0.0)


# --- SNDR algebra ---------------------------------------------------------

def sndr(op: OperatingPoint, rho_sq):
    """End-to-end SNDR S*rho**2 / (F + S*(1 - rho**2)) at operating point op."""
    if not 0.0 <= rho_sq <= 1.0:
        raise ValueError("rho_sq must lie in [0, 1]")
    s = op.snr_ideal
    return s * rho_sq / (op.noise_figure + s * (1.0 - rho_sq))


def sdr_ceiling(rho_sq):
    """Distortion-limited SNDR ceiling rho**2 / (1 - rho**2) reached as the
    ideal SNR grows without bound."""
    if not 0.0 <= rho_sq <= 1.0:
        raise ValueError("rho_sq must lie in [0, 1]")
    if rho_sq == 1.0:
        return math.inf
    return rho_sq / (1.0 - rho_sq)


def sndr_approx(bits, snr_ideal, noise_figure, c):
    """Closed-form SNDR under the asymptotic distortion model
    d = c*b*2**(-2b): S*(1-d) / (F + S*d)."""
    model = QuantizerModel("asymptotic", float(bits), c)
    rho = model.rho_sq().rho_sq
    s = snr_ideal
    return s * rho / (noise_figure + s * (1.0 - rho))


def spectral_efficiency(sndr_linear, eta=1.0, sndr_derating=1.0):
    """Achievable bits/s/Hz eta * log2(1 + derating * SNDR)."""
    if sndr_linear < 0.0:
        raise ValueError("SNDR must be nonnegative")
    if not 0.0 < eta <= 1.0 or not 0.0 < sndr_derating <= 1.0:
        raise ValueError("derating factors must lie in (0, 1]")
    return eta * math.log2(1.0 + sndr_derating * sndr_linear)


def awgn_capacity(snr_linear):
    """Unconstrained complex AWGN capacity log2(1 + SNR) in bits/s/Hz."""
    if snr_linear < 0.0:
        raise ValueError("SNR must be nonnegative")
    return math.log2(1.0 + snr_linear)


# --- one-bit receiver -----------------------------------------------------

def q_function(x):
    """Gaussian tail probability Q(x)."""
    return float(norm.sf(x))


def binary_entropy(p):
    """H(p) in bits, with the continuous-limit convention H(0) = H(1) = 0."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if p in (0.0, 1.0):
        return 0.0
    return float(-p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p))


def one_bit_capacity(snr_linear):
    """Capacity in bits/s/Hz of a complex channel with one-bit output per
    real dimension: 2 * (1 - H(Q(sqrt(SNR)))).

    Zero at SNR = 0, strictly increasing, approaching 2 at high SNR.
    """
    if snr_linear < 0.0:
        raise ValueError("SNR must be nonnegative")
    return 2.0 * (1.0 - binary_entropy(q_function(math.sqrt(snr_linear))))
