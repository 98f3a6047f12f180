"""Knob optimization: minimum power at a target SNDR, energy-per-bit
minimization over the noise figure and over the resolution, and the
spectral-efficiency versus energy-per-bit tradeoff curves.

Grid searches are exhaustive and deterministic: points are visited in
lexicographic (F, b, backoff) order and a candidate replaces the incumbent
only when strictly cheaper, so ties resolve toward the smallest noise
figure, then fewest bits, then smallest saturation limit.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .beamforming import Architecture, ArrayConfig, analog_bf_power
from .core import RfeKnobs, SaturationKind
from .metrics import (QuantizerModel, calibrate_c, rho_sq_numeric,
                      rho_sq_quant_only)
from .power import KT, FiguresOfMerit, PowerBreakdown, energy_per_bit_ratio, p_rfe

_DEF_F_DB = tuple(float(v) for v in np.arange(2, 53) * 0.25)  # 0.5..13 dB
_DEF_NU_DB = tuple(float(v) for v in range(-10, 61, 2))
_DEF_BITS = tuple(range(1, 13))


def _db(x):
    return 10.0 ** (x / 10.0)


@dataclass(frozen=True)
class KnobGrid:
    """Discretization of the knob space (noise figure and backoff in dB,
    bits as integers); backoffs convert to saturation limits at the
    operating point being optimized."""
    f_db: tuple = _DEF_F_DB
    nu_db: tuple = _DEF_NU_DB
    bits: tuple = _DEF_BITS

    def __post_init__(self):
        object.__setattr__(self, "f_db", tuple(float(v) for v in self.f_db))
        object.__setattr__(self, "nu_db", tuple(float(v) for v in self.nu_db))
        object.__setattr__(self, "bits", tuple(int(v) for v in self.bits))
        for name in ("f_db", "nu_db", "bits"):
            vals = getattr(self, name)
            if not vals:
                raise ValueError(f"{name} grid must be nonempty")
            if any(b <= a for a, b in zip(vals, vals[1:])):
                raise ValueError(f"{name} grid must be strictly increasing")
        if self.f_db[0] <= 0.0:
            raise ValueError("noise figures must exceed 0 dB (F > 1)")
        if any(b < 1 for b in self.bits):
            raise ValueError("bit widths must be >= 1")


@dataclass(frozen=True)
class OptResult:
    """Optimizer outcome: chosen knobs with the metrics they achieve.

    breakdown is None for the ratio-form energy optimizers, whose model
    fixes only fc/B and therefore no absolute wattage.  feasible is False
    when no grid point met the constraint (knobs then describe the best
    effort, not a solution); boundary marks a continuous solve that hit the
    edge of its bracket; bits_continuous carries the real-valued resolution
    from the continuous mode.
    """
    knobs: RfeKnobs
    breakdown: PowerBreakdown
    sndr: float
    spectral_efficiency: float
    energy_per_bit: float
    feasible: bool = True
    bits_continuous: float = None
    boundary: bool = False


@dataclass(frozen=True)
class SweepResult:
    """Tabular sweep output: column names, numeric rows, and enough
    metadata (input echo, version, seed) to reproduce the run."""
    header: tuple
    rows: tuple
    metadata: dict = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "header", tuple(self.header))
        object.__setattr__(self, "rows",
                           tuple(tuple(r) for r in self.rows))
        if any(len(r) != len(self.header) for r in self.rows):
            raise ValueError("rows must match header arity")


def _grid_candidates(snr_ideal, fc, bandwidth, grid, fom, array,
                     sat_kind):
    """Yield (total_w, breakdown, knobs, combined_sndr) for every grid point
    in lexicographic (F, b, backoff) order."""
    n = array.n if array is not None else 1
    arch = array.architecture if array is not None else Architecture.DIGITAL
    e_r = snr_ideal * KT
    for f_db in grid.f_db:
        nf = _db(f_db)
        n0 = KT * nf
        for bits in grid.bits:
            for nu_db in grid.nu_db:
                nu = _db(nu_db)
                e_max = nu * (e_r + n0)
                knobs = RfeKnobs(nf, e_max, bits, sat_kind)
                if arch is Architecture.ANALOG:
                    nu_eff = e_max / (n * e_r + n0)
                    rho = rho_sq_numeric(bits, nu_eff, sat_kind).rho_sq
                    s = n * snr_ideal
                    combined = s * rho / (nf + s * (1.0 - rho))
                    breakdown = analog_bf_power(fc, bandwidth, knobs, fom,
                                                n, array.lna_extra_gain)
                else:
                    rho = rho_sq_numeric(bits, nu, sat_kind).rho_sq
                    single = (snr_ideal * rho
                              / (nf + snr_ideal * (1.0 - rho)))
                    combined = n * single
                    breakdown = p_rfe(fc, bandwidth, knobs, fom).scaled(n)
                yield breakdown.total, breakdown, knobs, combined


def min_power_at_sndr(target_sndr, snr_ideal, fc, bandwidth,
                      grid: KnobGrid = None, fom: FiguresOfMerit = None,
                      array: ArrayConfig = None,
                      sat_kind=SaturationKind.TANH):
    """Cheapest grid point achieving at least the target SNDR.

    Exhaustive search over the knob grid (per-antenna replication or the
    shared analog chain when an array is configured).  An unreachable
    target returns a result with feasible=False describing the best
    achievable point instead of raising.
    """
    if target_sndr < 0.0:
        raise ValueError("target SNDR must be nonnegative")
    if snr_ideal < 0.0:
        raise ValueError("snr_ideal must be nonnegative")
    grid = grid if grid is not None else KnobGrid()
    fom = fom if fom is not None else FiguresOfMerit()
    best = None
    best_sndr = None
    for total, breakdown, knobs, combined in _grid_candidates(
            snr_ideal, fc, bandwidth, grid, fom, array, sat_kind):
        if combined >= target_sndr:
            if best is None or total < best[0]:
                best = (total, breakdown, knobs, combined)
        if best_sndr is None or combined > best_sndr[3]:
            best_sndr = (total, breakdown, knobs, combined)
    feasible = best is not None
    total, breakdown, knobs, combined = best if feasible else best_sndr
    se = math.log2(1.0 + combined)
    eb = total / (se * bandwidth) if se > 0.0 else math.inf
    return OptResult(knobs=knobs, breakdown=breakdown, sndr=combined,
                     spectral_efficiency=se, energy_per_bit=eb,
                     feasible=feasible)


def min_eb_over_F(snr_ideal, fc_over_b, bits, f_grid=None,
                  fom: FiguresOfMerit = None):
    """Noise figure minimizing the saturation-free energy per bit at fixed
    resolution, using the exact scalar-quantizer correlation.

    Raising F saves low-noise power but costs rate; the argmin over the dB
    grid is returned, ties toward the smaller noise figure.
    """
    f_grid = tuple(f_grid) if f_grid is not None else _DEF_F_DB
    if not f_grid:
        raise ValueError("noise-figure grid must be nonempty")
    fom = fom if fom is not None else FiguresOfMerit()
    rho = rho_sq_quant_only(bits).rho_sq
    best = None
    for f_db in f_grid:
        nf = _db(f_db)
        sndr = snr_ideal * rho / (nf + snr_ideal * (1.0 - rho))
        se = math.log2(1.0 + sndr)
        eb = energy_per_bit_ratio(fc_over_b, nf, bits, fom, se)
        if best is None or eb < best[0]:
            best = (eb, nf, sndr, se)
    eb, nf, sndr, se = best
    knobs = RfeKnobs(nf, math.inf, bits)
    return OptResult(knobs=knobs, breakdown=None, sndr=sndr,
                     spectral_efficiency=se, energy_per_bit=eb)


def _eb_of_bits_model(bits, snr_ideal, fc_over_b, nf, fom, model_kind, c):
    model = QuantizerModel(model_kind, bits, c)
    rho = model.rho_sq().rho_sq
    sndr = snr_ideal * rho / (nf + snr_ideal * (1.0 - rho))
    se = math.log2(1.0 + sndr)
    return energy_per_bit_ratio(fc_over_b, nf, bits, fom, se)


def min_eb_over_b(snr_ideal, fc_over_b, noise_figure,
                  fom: FiguresOfMerit = None, mode="integer-grid",
                  bits_grid=None, model="asymptotic", c=None):
    """Resolution minimizing the saturation-free energy per bit at fixed
    noise figure.

    mode "integer-grid" scans integer widths with the exact scalar-
    quantizer correlation.  mode "continuous-transcendental" relaxes b to
    the reals under a smooth quantizer model (calibrated asymptotic by
    default, optimal-vector selectable), solves d(energy)/db = 0 by
    bisection on [1, 12] to 1e-4, and reports the real root together with
    its better integer neighbor; if the derivative never changes sign the
    boundary optimum is returned with boundary=True.
    """
    if not noise_figure > 1.0:
        raise ValueError("noise figure must be > 1 (linear scale)")
    fom = fom if fom is not None else FiguresOfMerit()
    nf = noise_figure
    if mode == "integer-grid":
        grid = tuple(bits_grid) if bits_grid is not None else _DEF_BITS
        if not grid:
            raise ValueError("bits grid must be nonempty")
        best = None
        for bits in grid:
            rho = rho_sq_quant_only(bits).rho_sq
            sndr = snr_ideal * rho / (nf + snr_ideal * (1.0 - rho))
            se = math.log2(1.0 + sndr)
            eb = energy_per_bit_ratio(fc_over_b, nf, bits, fom, se)
            if best is None or eb < best[0]:
                best = (eb, bits, sndr, se)
        eb, bits, sndr, se = best
        return OptResult(knobs=RfeKnobs(nf, math.inf, bits), breakdown=None,
                         sndr=sndr, spectral_efficiency=se,
                         energy_per_bit=eb)
    if mode != "continuous-transcendental":
        raise ValueError("mode must be 'integer-grid' or "
                         "'continuous-transcendental'")
    if model == "asymptotic" and c is None:
        c = calibrate_c()
    if model not in ("asymptotic", "optimal-vector"):
        raise ValueError("continuous model must be 'asymptotic' or "
                         "'optimal-vector'")
    model_c = c if model == "asymptotic" else None

    def deriv(b, h=1e-5):
        lo = _eb_of_bits_model(b - h, snr_ideal, fc_over_b, nf, fom,
                               model, model_c)
        hi = _eb_of_bits_model(b + h, snr_ideal, fc_over_b, nf, fom,
                               model, model_c)
        return (hi - lo) / (2.0 * h)

    lo, hi = 1.0, 12.0
    g_lo, g_hi = deriv(lo), deriv(hi)
    boundary = g_lo * g_hi > 0.0
    if boundary:
        root = lo if g_lo > 0.0 else hi
    else:
        a, b = lo, hi
        ga = g_lo
        while b - a > 1e-4:
            mid = 0.5 * (a + b)
            gm = deriv(mid)
            if ga * gm <= 0.0:
                b = mid
            else:
                a, ga = mid, gm
        root = 0.5 * (a + b)
    floor_b = max(1, math.floor(root))
    ceil_b = min(12, math.ceil(root))
    candidates = sorted({floor_b, ceil_b})
    best_int = min(candidates, key=lambda bb: _eb_of_bits_model(
        bb, snr_ideal, fc_over_b, nf, fom, model, model_c))
    rho = QuantizerModel(model, float(best_int), model_c).rho_sq().rho_sq
    sndr = snr_ideal * rho / (nf + snr_ideal * (1.0 - rho))
    se = math.log2(1.0 + sndr)
    eb = energy_per_bit_ratio(fc_over_b, nf, best_int, fom, se)
    return OptResult(knobs=RfeKnobs(nf, math.inf, best_int), breakdown=None,
                     sndr=sndr, spectral_efficiency=se, energy_per_bit=eb,
                     bits_continuous=root, boundary=boundary)


def tradeoff_curve(snr_ideal, fc_over_b, sweep, fom: FiguresOfMerit = None,
                   fixed_bits=6, fixed_nf_db=5.0, f_db=None, bits_grid=None):
    """Spectral efficiency and energy per bit along one swept knob.

    sweep "vary-f" holds bits at fixed_bits and sweeps the noise figure;
    sweep "vary-b" holds the noise figure at fixed_nf_db and sweeps integer
    resolutions.  Rows are (knob value, spectral efficiency, energy per
    bit) in sweep order; metadata marks the energy-minimizing knob value.
    """
    fom = fom if fom is not None else FiguresOfMerit()
    rows = []
    if sweep == "vary-f":
        grid = tuple(f_db) if f_db is not None else _DEF_F_DB
        rho = rho_sq_quant_only(fixed_bits).rho_sq
        for fdb in grid:
            nf = _db(fdb)
            sndr = snr_ideal * rho / (nf + snr_ideal * (1.0 - rho))
            se = math.log2(1.0 + sndr)
            eb = energy_per_bit_ratio(fc_over_b, nf, fixed_bits, fom, se)
            rows.append((fdb, se, eb))
        knob_name = "nf_db"
    elif sweep == "vary-b":
        grid = tuple(bits_grid) if bits_grid is not None else _DEF_BITS
        nf = _db(fixed_nf_db)
        for bits in grid:
            rho = rho_sq_quant_only(bits).rho_sq
            sndr = snr_ideal * rho / (nf + snr_ideal * (1.0 - rho))
            se = math.log2(1.0 + sndr)
            eb = energy_per_bit_ratio(fc_over_b, nf, bits, fom, se)
            rows.append((float(bits), se, eb))
        knob_name = "bits"
    else:
        raise ValueError("sweep must be 'vary-f' or 'vary-b'")
    minimizer = min(rows, key=lambda r: r[2])[0]
    metadata = {
        "inputs": {"snr_ideal": snr_ideal, "fc_over_b": fc_over_b,
                   "sweep": sweep, "fixed_bits": fixed_bits,
                   "fixed_nf_db": fixed_nf_db},
        "minimizer": minimizer,
        "seed": None,
    }
    return SweepResult(header=(knob_name, "spectral_efficiency",
                               "energy_per_bit"),
                       rows=tuple(rows), metadata=metadata)
