"""End-to-end acceptance gate.

Each test checks one release criterion at its stated tolerance and prints a
single ``[ACn] PASS/FAIL`` line directly to the terminal (bypassing capture)
so the gate is auditable from any pytest run.

Two checks are expected to fail under this toolkit's conventions and are
left failing on purpose; their docstrings carry the analysis.  Everything
else must pass.
"""
import itertools
import math
import time

import numpy as np
import pytest

from rfekit.beamforming import ArrayConfig
from rfekit.core import (QuantizerSpec, RfeKnobs, apply_rfe, gain_alpha,
                         quantize, quantizer_step)
from rfekit.linkbudget import evaluate_scenario, load_config
from rfekit.metrics import (OperatingPoint, _rho_quadrature, calibrate_c,
                            one_bit_capacity, rho_sq_monte_carlo,
                            rho_sq_numeric, rho_sq_quant_only, rho_sq_vector,
                            sdr_ceiling, sndr)
from rfekit.optimizer import (KnobGrid, min_eb_over_F, min_eb_over_b,
                              min_power_at_sndr, tradeoff_curve)
from rfekit.power import KT, FiguresOfMerit, energy_per_bit, p_rfe


@pytest.fixture
def report(capsys):
    def _report(line):
        with capsys.disabled():
            print(line)
    return _report


def _fmt(ok):
    return "PASS" if ok else "FAIL"


def test_ac1_indoor_office_reference(report):
    """Reference scenario reproduction: 0 dBm / 3.5 GHz / 200 MHz / 20 m
    indoor non-line-of-sight link with F=4 dB, b=4, backoff 30 dB."""
    _rho_quadrature.cache_clear()
    quantizer_step.cache_clear()
    t0 = time.perf_counter()
    cfg = load_config("configs/indoor-office.json")
    rep = evaluate_scenario(cfg["scenario"], cfg["knobs"], cfg["fom"])
    elapsed = time.perf_counter() - t0
    d = rep.as_dict()
    checks = {
        "snr 10.3±0.2 dB": abs(d["snr_ideal_db"] - 10.3) <= 0.2,
        "sndr 6.0±0.3 dB": abs(d["sndr_db"] - 6.0) <= 0.3,
        "rate 160±5 Mbps": abs(d["rate_mbps"] - 160.0) <= 5.0,
        "nf 0.32 mW±5%": abs(d["power_nf_mw"] - 0.32) <= 0.05 * 0.32,
        "adc in [0.52, 0.53] mW": 0.52 <= d["power_adc_mw"] <= 0.53,
        "total < 1 mW": d["power_total_mw"] < 1.0,
        "runtime < 1 s": elapsed < 1.0,
    }
    ok = all(checks.values())
    report(f"[AC1] {_fmt(ok)} — snr {d['snr_ideal_db']:.4f} dB, sndr "
           f"{d['sndr_db']:.4f} dB, rate {d['rate_mbps']:.3f} Mbps, "
           f"nf {d['power_nf_mw']:.4f} mW, adc {d['power_adc_mw']:.4f} mW, "
           f"total {d['power_total_mw']:.4f} mW, {elapsed * 1e3:.0f} ms")
    assert ok, {k: v for k, v in checks.items() if not v}


def test_ac2_energy_optimal_noise_figure(report):
    """Noise figure minimizing energy per bit at b=6, fc/B=70.

    EXPECTED TO FAIL.  Under the default figures of merit (165 fJ per
    conversion step, one converter per complex sample) the optima are
    3.25 / 4.50 / 8.00 dB for ideal SNRs of 0 / 10 / 30 dB.  The reference
    expectations (2.6 / 3.5 / 6.5 dB) are reproduced almost exactly when
    the converter coefficient is doubled to 330 fJ — i.e. when conversion
    energy is counted once per real component instead of once per complex
    sample — which locates the disagreement in that bookkeeping convention,
    not in the optimizer (the optimizer is pinned by its own grid-argmin
    oracle elsewhere in the suite).  The check is kept at the stated
    tolerance rather than weakened to match.
    """
    expected = {0.0: 2.6, 10.0: 3.5, 30.0: 6.5}
    got = {}
    for snr_db in expected:
        res = min_eb_over_F(10.0 ** (snr_db / 10.0), 70.0, 6)
        got[snr_db] = 10.0 * math.log10(res.knobs.noise_figure)
    ok = all(abs(got[s] - expected[s]) <= 0.5 for s in expected)
    report(f"[AC2] {_fmt(ok)} — F* = "
           + " / ".join(f"{got[s]:.2f}" for s in sorted(got))
           + " dB vs expected "
           + " / ".join(f"{expected[s]:.1f}" for s in sorted(expected))
           + " dB (±0.5); doubling the converter coefficient to 330 fJ "
             "reproduces the expected values")
    assert ok, f"optimal noise figures {got} not within 0.5 dB of {expected}"


def test_ac3_energy_optimal_resolution(report):
    """Resolution minimizing energy per bit at F=5 dB, fc/B=70: exactly
    4 bits at 30 dB ideal SNR and 3 bits at 10 dB, in both the integer-grid
    and the rounded continuous modes."""
    results = {}
    for snr_db, expect in ((30.0, 4), (10.0, 3)):
        snr = 10.0 ** (snr_db / 10.0)
        ri = min_eb_over_b(snr, 70.0, 10.0 ** 0.5)
        rc = min_eb_over_b(snr, 70.0, 10.0 ** 0.5,
                           mode="continuous-transcendental")
        results[snr_db] = (ri.knobs.bits, rc.knobs.bits, expect)
    ok = all(i == c == e for i, c, e in results.values())
    report(f"[AC3] {_fmt(ok)} — b*(30 dB) = {results[30.0][0]}/"
           f"{results[30.0][1]} (expect 4), b*(10 dB) = {results[10.0][0]}/"
           f"{results[10.0][1]} (expect 3), integer/continuous")
    assert ok, results


def test_ac4_energy_ratio_across_resolutions(report):
    """Energy cost of raising the resolution from 4 to 7 bits on the
    30 dB / F=5 dB sweep.

    EXPECTED TO FAIL.  The measured ratio is 2.66, just below the expected
    window [2.8, 5.6].  The energy model here charges the converter
    2^b per step, so E_b(7)/E_b(4) = 8 * (SE4/SE7) * (1 + r7)/(1 + r4)
    with r the low-noise-to-converter power ratio; with the default
    figures of merit the low-noise stage still carries enough of the
    7-bit budget to pull the ratio under 2.8.  A window anchored at a
    pure-converter extrapolation (8 / (SE7/SE4) ≈ 5.96, then halved to
    2.98 as its floor) excludes the measured operating regime; the
    companion spectral-efficiency ratio below confirms the sweep itself
    is sound.  Kept at the stated window rather than widened.
    """
    sw = tradeoff_curve(1000.0, 70.0, "vary-b", fixed_nf_db=5.0)
    rows = {int(r[0]): r for r in sw.rows}
    ratio = rows[7][2] / rows[4][2]
    ok = 2.8 <= ratio <= 5.6
    report(f"[AC4-eb] {_fmt(ok)} — E_b(7)/E_b(4) = {ratio:.4f}, expected "
           f"within [2.8, 5.6]")
    assert ok, f"energy ratio {ratio:.4f} outside [2.8, 5.6]"


def test_ac4_spectral_efficiency_ratio(report):
    """Spectral-efficiency gain of 7 bits over 4 on the same sweep."""
    sw = tradeoff_curve(1000.0, 70.0, "vary-b", fixed_nf_db=5.0)
    rows = {int(r[0]): r for r in sw.rows}
    ratio = rows[7][1] / rows[4][1]
    ok = 1.25 <= ratio <= 1.6
    report(f"[AC4-se] {_fmt(ok)} — SE(7)/SE(4) = {ratio:.4f}, expected "
           f"within [1.25, 1.6]")
    assert ok, f"spectral-efficiency ratio {ratio:.4f} outside [1.25, 1.6]"


def test_ac5_quantizer_model_agreement(report):
    """The calibrated asymptotic distortion model tracks the exact scalar
    quantizer within 1 dB of SDR for 3..8 bits, and the vector model's SDR
    is 2^(2b) - 1."""
    c = calibrate_c()
    worst = 0.0
    for bits in range(3, 9):
        exact_db = 10.0 * math.log10(
            sdr_ceiling(rho_sq_quant_only(bits).rho_sq))
        d = c * bits * 4.0 ** -bits
        model_db = 10.0 * math.log10((1.0 - d) / d)
        worst = max(worst, abs(exact_db - model_db))
    vector_ok = all(
        sdr_ceiling(rho_sq_vector(b).rho_sq)
        == pytest.approx(4.0 ** b - 1.0, rel=1e-12)
        for b in range(1, 13))
    ok = worst < 1.0 and vector_ok
    report(f"[AC5] {_fmt(ok)} — max |SDR(calibrated) - SDR(exact)| = "
           f"{worst:.3f} dB over 3..8 bits (< 1 dB); vector SDR = 4^b - 1 "
           f"{'exact' if vector_ok else 'MISMATCH'}")
    assert ok


def test_ac6_engine_cross_validation(report):
    """The quadrature engine agrees with seeded simulation at 1e7 samples
    within 4 standard errors across resolutions, backoffs, and both
    saturation laws, and reduces to the quantizer-only value at 60 dB."""
    bits_grid = (1, 2, 3, 4, 5, 6, 8, 10)
    nu_db_grid = (0, 10, 20, 30, 60)
    worst_z = 0.0
    worst_pt = None
    for b, nu_db, kind in itertools.product(bits_grid, nu_db_grid,
                                            ("tanh", "clip")):
        seed = 1000 * b + 10 * nu_db + (0 if kind == "tanh" else 1)
        nu = 10.0 ** (nu_db / 10.0)
        ref = rho_sq_numeric(b, nu, kind).rho_sq
        mc = rho_sq_monte_carlo(b, nu, kind, samples=10_000_000, seed=seed)
        z = abs(mc.rho_sq - ref) / mc.stderr if mc.stderr > 0.0 else 0.0
        if z > worst_z:
            worst_z, worst_pt = z, (b, nu_db, kind)
    grid_ok = worst_z <= 4.0
    quant_dev = max(abs(rho_sq_numeric(b, 1e6, "tanh").rho_sq
                        - rho_sq_quant_only(b).rho_sq)
                    for b in range(1, 13))
    limit_ok = quant_dev < 1e-3
    ok = grid_ok and limit_ok
    report(f"[AC6] {_fmt(ok)} — worst |z| = {worst_z:.2f} at {worst_pt} "
           f"over {len(bits_grid) * len(nu_db_grid) * 2} points (1e7 "
           f"samples, <= 4); 60 dB backoff vs quantizer-only dev "
           f"{quant_dev:.2e} (< 1e-3)")
    assert ok, (worst_z, worst_pt, quant_dev)


def test_ac7_beamforming_architectures(report):
    """Digital vs analog combining for 16 elements at 28 GHz / 400 MHz /
    0 dB per-element ideal SNR: digital is at most as expensive at every
    jointly feasible SNDR target, and both minimum-power curves rise
    monotonically toward the 16x array-gain ceiling near 12 dB."""
    grid = KnobGrid(f_db=[0.5 + 0.5 * i for i in range(26)],
                    nu_db=list(range(-10, 61, 4)),
                    bits=list(range(1, 9)))
    digital = ArrayConfig(16, "digital")
    analog = ArrayConfig(16, "analog")
    rows = []
    for tenth_db in range(0, 125, 5):
        target_db = tenth_db / 10.0
        rd = min_power_at_sndr(10.0 ** (target_db / 10.0), 1.0, 28e9, 400e6,
                               grid, None, digital)
        ra = min_power_at_sndr(10.0 ** (target_db / 10.0), 1.0, 28e9, 400e6,
                               grid, None, analog)
        rows.append((target_db, rd, ra))
    common = [(t, rd, ra) for t, rd, ra in rows
              if rd.feasible and ra.feasible]
    ceiling_db = 10.0 * math.log10(16.0)
    dig_totals = [rd.breakdown.total for _, rd, _ in common]
    ana_totals = [ra.breakdown.total for _, _, ra in common]
    checks = {
        "common grid nonempty": len(common) >= 10,
        "digital <= analog": all(d <= a for d, a in zip(dig_totals,
                                                        ana_totals)),
        "digital monotone": all(b >= a for a, b in zip(dig_totals,
                                                       dig_totals[1:])),
        "analog monotone": all(b >= a for a, b in zip(ana_totals,
                                                      ana_totals[1:])),
        "approaches array-gain ceiling":
            11.0 <= max(t for t, rd, _ in rows if rd.feasible)
            <= ceiling_db,
        "nothing beyond ceiling": all(t <= ceiling_db for t, rd, _ in rows
                                      if rd.feasible),
    }
    ok = all(checks.values())
    top = max(t for t, rd, _ in rows if rd.feasible)
    report(f"[AC7] {_fmt(ok)} — {len(common)} common targets, digital <= "
           f"analog everywhere: {checks['digital <= analog']}, both "
           f"monotone, feasible up to {top:.1f} dB (ceiling "
           f"{ceiling_db:.2f} dB)")
    assert ok, {k: v for k, v in checks.items() if not v}


def test_ac8_one_bit_capacity(report):
    """Hard-limited channel capacity: zero at zero SNR, strictly
    increasing, saturating at 2 bits, and 1.81 at 7 dB."""
    c7 = one_bit_capacity(10.0 ** 0.7)
    snrs = [10.0 ** (x / 10.0) for x in range(-10, 31, 2)]
    caps = [one_bit_capacity(s) for s in snrs]
    # Above ~20 dB the capacity equals its 2-bit ceiling exactly in double
    # precision, so strict increase is only resolvable below the ceiling.
    checks = {
        "C(0) = 0": abs(one_bit_capacity(0.0)) < 1e-12,
        "strictly increasing": all(b > a or b == 2.0
                                   for a, b in zip(caps, caps[1:])),
        "saturates at 2": one_bit_capacity(1e8) == pytest.approx(2.0,
                                                                 abs=1e-6)
                          and all(c <= 2.0 for c in caps),
        "C(7 dB) = 1.81 ± 0.02": abs(c7 - 1.81) <= 0.02,
    }
    ok = all(checks.values())
    report(f"[AC8] {_fmt(ok)} — C(0) = 0, increasing, -> 2; C(7 dB) = "
           f"{c7:.4f} (expect 1.81 ± 0.02)")
    assert ok, {k: v for k, v in checks.items() if not v}


def _bussgang_z(bits, nu_db, kind, seed_fit, seed_test):
    """Fit the linear-equivalent gain on one sample set, then measure the
    residual-input correlation on an independent set; returns the
    per-component z-scores of that correlation."""
    e_r, n0 = 3e-20, 1e-20
    nu = 10.0 ** (nu_db / 10.0)
    knobs = RfeKnobs(2.0, nu * (e_r + n0), bits, kind)
    alpha = gain_alpha(e_r, n0, knobs)

    def sample(seed, n):
        rng = np.random.default_rng(seed)
        v = math.sqrt((e_r + n0) / 2.0) * (rng.standard_normal(n)
                                           + 1j * rng.standard_normal(n))
        return v, np.asarray(apply_rfe(v, np.zeros_like(v), knobs, alpha))

    v_fit, y_fit = sample(seed_fit, 2_000_000)
    a_hat = np.mean(y_fit * np.conj(v_fit)) / np.mean(np.abs(v_fit) ** 2)
    v, y = sample(seed_test, 200_000)
    d = (y - a_hat * v) * np.conj(v)
    z_re = abs(np.mean(d.real)) / (np.std(d.real) / math.sqrt(d.size))
    z_im = abs(np.mean(d.imag)) / (np.std(d.imag) / math.sqrt(d.size))
    return z_re, z_im


def test_ac9_property_suite(report):
    """Structural properties: distortion-input orthogonality, the SNDR
    upper bounds, ratio-only energy dependence, quantizer idempotence and
    symmetry, and optimizer agreement with a brute-force oracle."""
    failures = []

    # orthogonality of the linear-equivalent decomposition
    cases = [(1, 10, "tanh"), (3, 5, "clip"), (4, 30, "tanh"),
             (2, 0, "clip")]
    for i, (bits, nu_db, kind) in enumerate(cases):
        z_re, z_im = _bussgang_z(bits, nu_db, kind, 100 + i, 5000 + i)
        if max(z_re, z_im) >= 3.0:
            failures.append(f"orthogonality b={bits} nu={nu_db} {kind}: "
                            f"z=({z_re:.2f}, {z_im:.2f})")

    # SNDR never exceeds the noise-limited or distortion-limited bound
    for snr_db, f_db, bits, nu_db in itertools.product(
            (-10.0, 0.0, 10.0, 30.0), (1.0, 4.0, 9.0), (1, 3, 6),
            (0.0, 10.0, 30.0)):
        snr, f = 10.0 ** (snr_db / 10.0), 10.0 ** (f_db / 10.0)
        nu = 10.0 ** (nu_db / 10.0)
        op = OperatingPoint.create(snr, f, nu * (snr * KT + KT * f))
        rho = rho_sq_numeric(bits, nu, "tanh").rho_sq
        val = sndr(op, rho)
        bound = min(snr / f, sdr_ceiling(rho))
        if val > bound * (1.0 + 1e-12):
            failures.append(f"sndr bound at snr={snr_db} f={f_db} "
                            f"b={bits} nu={nu_db}")

    # energy per bit depends on (fc, B) only through the ratio when the
    # saturation term is excluded
    knobs = RfeKnobs(2.0, math.inf, 5)
    base = energy_per_bit(7e9, 1e8, knobs, None, 2.0, neglect_sat=True)
    for scale in (0.1, 10.0, 1000.0):
        scaled = energy_per_bit(7e9 * scale, 1e8 * scale, knobs, None, 2.0,
                                neglect_sat=True)
        if abs(scaled - base) > 1e-12 * base:
            failures.append(f"ratio invariance at scale {scale}")

    # quantizer idempotence and odd symmetry
    rng = np.random.default_rng(77)
    spec = QuantizerSpec.for_unit_energy(5)
    u = rng.standard_normal(20_000) + 1j * rng.standard_normal(20_000)
    q1 = np.asarray(quantize(u, spec))
    if not np.array_equal(q1, np.asarray(quantize(q1, spec))):
        failures.append("idempotence")
    if not np.allclose(np.asarray(quantize(-u, spec)), -q1, atol=0.0):
        failures.append("odd symmetry")

    # grid optimality against an independent exhaustive re-scan
    grid = KnobGrid(f_db=(2.0, 5.0), nu_db=(5.0, 15.0, 25.0), bits=(2, 4))
    snr, fc, bw, target = 10.0, 3.5e9, 2e8, 1.8
    res = min_power_at_sndr(target, snr, fc, bw, grid=grid)
    best = None
    for f_db in grid.f_db:
        f = 10.0 ** (f_db / 10.0)
        for bits in grid.bits:
            for nu_db in grid.nu_db:
                nu = 10.0 ** (nu_db / 10.0)
                knobs = RfeKnobs(f, nu * (snr * KT + KT * f), bits)
                rho = rho_sq_numeric(bits, nu, "tanh").rho_sq
                achieved = snr * rho / (f + snr * (1.0 - rho))
                if achieved < target:
                    continue
                total = p_rfe(fc, bw, knobs).total
                if best is None or total < best[0]:
                    best = (total, knobs)
    if best is None or not res.feasible or res.knobs != best[1] \
            or res.breakdown.total != best[0]:
        failures.append("grid-optimality oracle")

    ok = not failures
    report(f"[AC9] {_fmt(ok)} — orthogonality (4 configs, |z| < 3), SNDR "
           f"bounds (108 points), ratio-only energy, quantizer "
           f"idempotence/symmetry, brute-force optimality"
           + ("" if ok else f"; failures: {failures}"))
    assert ok, failures
