"""Command-line interface.

Subcommands map one-to-one onto the library: single-point reports emit JSON
on stdout, sweeps emit CSV files; an echo of the effective inputs always
goes to stderr as JSON.  Units at the boundary are dB/dBm/GHz/MHz; all
computation is linear SI.

Exit codes: 0 success, 2 flag or config error (no partial output files),
3 infeasible optimization, 4 numerical-accuracy failure.
"""
import argparse
import csv
import json
import math
import os
import sys

from .beamforming import (Architecture, ArrayConfig, analog_backoff,
                          analog_bf_ceiling, analog_bf_power, analog_bf_sndr,
                          digital_bf_ceiling, digital_bf_power,
                          digital_bf_sndr)
from .core import NumericalAccuracyError, RfeKnobs, SaturationKind
from .linkbudget import evaluate_scenario, parse_config
from .metrics import (OperatingPoint, QuantizerModel, calibrate_c,
                      one_bit_capacity, rho_sq_numeric, rho_sq_vector,
                      sdr_ceiling, sndr as sndr_of)
from .power import (KT, FiguresOfMerit, energy_per_bit_ratio,
                    one_bit_energy_per_bit, p_rfe)
from .optimizer import KnobGrid, min_power_at_sndr, tradeoff_curve

try:
    from importlib.metadata import version as _dist_version
    VERSION = _dist_version("artifact")
except Exception:  # pragma: no cover - not installed
    VERSION = "0.1.0"

FOM_ENV = "RFEKIT_FOM"

_SWEEP_COLUMNS = {
    "sdr-map": "bits, backoff_db, sdr_db",
    "min-power": ("snr_ideal_db, target_sndr_db, feasible, nf_db, bits, "
                  "backoff_db, power_total_mw"),
    "power-breakdown": ("target_sndr_db, feasible, power_nf_mw, "
                        "power_sat_mw, power_adc_mw, power_total_mw"),
    "vary-nf": ("snr_ideal_db, nf_db, spectral_efficiency, "
                "energy_per_bit_pj, is_minimizer"),
    "vary-bits": ("snr_ideal_db, bits, spectral_efficiency, "
                  "energy_per_bit_pj, is_minimizer"),
    "bf-compare": ("target_sndr_db, digital_feasible, digital_total_mw, "
                   "analog_feasible, analog_total_mw"),
}

_SWEEP_HELP = """\
presets and their CSV columns:
  sdr-map          distortion ceiling over resolution and backoff
                   columns: %(sdr-map)s
  min-power        cheapest configuration vs target SNDR at several ideal SNRs
                   columns: %(min-power)s
  power-breakdown  per-stage power of the cheapest configuration vs target SNDR
                   columns: %(power-breakdown)s
  vary-nf          efficiency/energy tradeoff sweeping the noise figure
                   columns: %(vary-nf)s
  vary-bits        efficiency/energy tradeoff sweeping the resolution
                   columns: %(vary-bits)s
  bf-compare       digital vs analog array power at matched SNDR targets
                   columns: %(bf-compare)s

column order is fixed; reruns with identical inputs are byte-identical.
a config file may override preset parameters (see --config).
""" % _SWEEP_COLUMNS


def _echo(payload):
    json.dump(payload, sys.stderr, sort_keys=True)
    sys.stderr.write("\n")


def _args_echo(args):
    return {k: v for k, v in vars(args).items() if k != "func"}


def _emit(payload):
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _db(x):
    return 10.0 ** (x / 10.0)


def _to_db(x):
    return 10.0 * math.log10(x) if x > 0.0 else -math.inf


def _read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError(f"{path}: top level must be a JSON object")
    return data


def _default_fom():
    """Figures of merit from the file named by RFEKIT_FOM, else defaults."""
    path = os.environ.get(FOM_ENV)
    if not path:
        return FiguresOfMerit()
    return FiguresOfMerit.from_config(_read_json(path))


def _fom_from(config):
    if "fom" in config:
        return FiguresOfMerit.from_config(config["fom"])
    return _default_fom()


def _operating_point(snr_ideal_db, nf_db, backoff_db):
    snr = _db(snr_ideal_db)
    nf = _db(nf_db)
    nu = _db(backoff_db)
    e_max = nu * (snr * KT + KT * nf)
    return OperatingPoint.create(snr, nf, e_max)


def _rho_for(quantizer, bits, nu, sat_kind):
    if quantizer == "uniform":
        return rho_sq_numeric(bits, nu, sat_kind).rho_sq
    if quantizer == "vector":
        return rho_sq_vector(bits).rho_sq
    if quantizer == "asymptotic":
        return QuantizerModel("asymptotic", bits, calibrate_c()).rho_sq().rho_sq
    if quantizer == "onebit":
        if int(bits) != 1:
            raise ValueError("--quantizer onebit requires --bits 1")
        return QuantizerModel("one-bit", 1).rho_sq().rho_sq
    raise ValueError(f"unknown quantizer: {quantizer}")


# --- subcommands ----------------------------------------------------------

def cmd_sndr(args):
    op = _operating_point(args.snr_ideal_db, args.nf_db, args.backoff_db)
    rho = _rho_for(args.quantizer, args.bits, op.backoff,
                   SaturationKind(args.sat))
    sndr_lin = sndr_of(op, rho)
    _echo({"command": "sndr", "version": VERSION, "inputs": _args_echo(args)})
    _emit({
        "snr_ideal_db": args.snr_ideal_db,
        "nf_db": args.nf_db,
        "bits": args.bits,
        "backoff_db": args.backoff_db,
        "sat": args.sat,
        "quantizer": args.quantizer,
        "rho_sq": rho,
        "sdr_db": _to_db(sdr_ceiling(rho)),
        "sndr_db": _to_db(sndr_lin),
        "spectral_efficiency_bps_hz": math.log2(1.0 + sndr_lin),
    })
    return 0


def cmd_power(args):
    bandwidth = args.bw_mhz * 1e6
    p_max = 1e-3 * _db(args.pmax_dbm)
    knobs = RfeKnobs(_db(args.nf_db), p_max / bandwidth, args.bits,
                     SaturationKind(args.sat))
    breakdown = p_rfe(args.fc_ghz * 1e9, bandwidth, knobs, _default_fom())
    _echo({"command": "power", "version": VERSION, "inputs": _args_echo(args)})
    _emit({
        "fc_ghz": args.fc_ghz,
        "bw_mhz": args.bw_mhz,
        "nf_db": args.nf_db,
        "bits": args.bits,
        "pmax_dbm": args.pmax_dbm,
        "power_nf_mw": breakdown.nf_term * 1e3,
        "power_sat_mw": breakdown.sat_term * 1e3,
        "power_adc_mw": breakdown.adc_term * 1e3,
        "power_total_mw": breakdown.total * 1e3,
    })
    return 0


def cmd_linkbudget(args):
    raw = _read_json(args.config)
    parts = parse_config(raw)
    if parts["array"] is not None:
        raise ValueError("array sections are handled by the beamforming "
                         "command and the bf-compare sweep preset")
    if "fom" not in raw:
        parts["fom"] = _default_fom()
    report = evaluate_scenario(parts["scenario"], parts["knobs"],
                               parts["fom"])
    _echo({"command": "linkbudget", "version": VERSION, "inputs": raw})
    _emit(report.as_dict())
    return 0


def cmd_onebit(args):
    snr = _db(args.snr_db)
    capacity = one_bit_capacity(snr)
    out = {"snr_db": args.snr_db, "capacity_bits_per_hz": capacity}
    if args.fc_over_b is not None and args.nf_db is not None:
        eb = one_bit_energy_per_bit(args.fc_over_b, 1.0, _db(args.nf_db),
                                    _default_fom(), capacity)
        out["energy_per_bit_pj"] = eb * 1e12
    _echo({"command": "onebit", "version": VERSION, "inputs": _args_echo(args)})
    _emit(out)
    return 0


def cmd_beamforming(args):
    sat = SaturationKind(args.sat)
    op = _operating_point(args.snr_ideal_db, args.nf_db, args.backoff_db)
    bandwidth = args.bw_mhz * 1e6
    fc = args.fc_ghz * 1e9
    knobs = RfeKnobs(op.noise_figure, op.e_max, args.bits, sat)
    fom = _default_fom()
    gain = _db(args.lna_gain_db)
    if Architecture(args.architecture) is Architecture.DIGITAL:
        rho = rho_sq_numeric(args.bits, op.backoff, sat).rho_sq
        combined = digital_bf_sndr(sndr_of(op, rho), args.n)
        ceiling = digital_bf_ceiling(rho, args.n)
        breakdown = digital_bf_power(p_rfe(fc, bandwidth, knobs, fom), args.n)
        nu_eff = op.backoff
    else:
        combined = analog_bf_sndr(op.snr_ideal, op.noise_figure, args.n,
                                  args.bits, op.e_max, op.e_r, op.n0, sat)
        ceiling = analog_bf_ceiling(args.bits, op.e_max, args.n, op.e_r,
                                    op.n0, sat)
        breakdown = analog_bf_power(fc, bandwidth, knobs, fom, args.n, gain)
        nu_eff = analog_backoff(op.e_max, args.n, op.e_r, op.n0)
    _echo({"command": "beamforming", "version": VERSION,
           "inputs": _args_echo(args)})
    _emit({
        "architecture": args.architecture,
        "n": args.n,
        "effective_backoff_db": _to_db(nu_eff),
        "sndr_db": _to_db(combined),
        "sndr_ceiling_db": _to_db(ceiling),
        "power_nf_mw": breakdown.nf_term * 1e3,
        "power_sat_mw": breakdown.sat_term * 1e3,
        "power_adc_mw": breakdown.adc_term * 1e3,
        "power_total_mw": breakdown.total * 1e3,
    })
    return 0


# --- sweeps ----------------------------------------------------------------

def _sweep_options(args):
    options = {}
    if args.config:
        raw = _read_json(args.config)
        allowed = {"sweep", "fom"}
        extra = set(raw) - allowed
        if extra:
            raise ValueError(f"unknown config sections for sweep: "
                             f"{sorted(extra)}")
        options = raw.get("sweep", {})
        if not isinstance(options, dict):
            raise ValueError("'sweep' section must be an object")
        fom = _fom_from(raw)
    else:
        fom = _default_fom()
    return options, fom


def _take(options, key, default):
    value = options.pop(key, default)
    if isinstance(default, (list, tuple)) and not isinstance(value, (list, tuple)):
        raise ValueError(f"sweep option {key!r} must be a list")
    return value


def _coarse_grid(options):
    f_db = _take(options, "f_db", [0.5 + 0.5 * i for i in range(26)])
    nu_db = _take(options, "nu_db", list(range(-10, 61, 4)))
    bits = _take(options, "bits", list(range(1, 9)))
    return KnobGrid(f_db=f_db, nu_db=nu_db, bits=bits)


def _min_power_rows(targets_db, snr_db_list, fc, bandwidth, grid, fom,
                    array=None):
    rows = []
    for snr_db in snr_db_list:
        for target_db in targets_db:
            res = min_power_at_sndr(_db(target_db), _db(snr_db), fc,
                                    bandwidth, grid, fom, array)
            rows.append((snr_db, target_db, res))
    return rows


def _run_sweep(preset, options, fom):
    """Compute a preset's rows; returns (header, rows, inputs_echo)."""
    if preset == "sdr-map":
        bits = _take(options, "bits", list(range(1, 9)))
        nu_db = _take(options, "nu_db", list(range(-10, 61, 2)))
        sat = _take(options, "sat", "tanh")
        header = ("bits", "backoff_db", "sdr_db")
        rows = []
        for b in bits:
            for nu in nu_db:
                rho = rho_sq_numeric(int(b), _db(nu),
                                     SaturationKind(sat)).rho_sq
                rows.append((int(b), float(nu), _to_db(sdr_ceiling(rho))))
        inputs = {"bits": bits, "nu_db": nu_db, "sat": sat}
    elif preset == "min-power":
        snr_list = _take(options, "snr_ideal_db", [0.0, 10.0, 30.0])
        targets = _take(options, "targets_db", None)
        fc = _take(options, "fc_ghz", 3.5) * 1e9
        bw = _take(options, "bw_mhz", 200.0) * 1e6
        grid = _coarse_grid(options)
        header = ("snr_ideal_db", "target_sndr_db", "feasible", "nf_db",
                  "bits", "backoff_db", "power_total_mw")
        rows = []
        for snr_db in snr_list:
            tgts = (targets if targets is not None
                    else [snr_db - 10.0 + 0.5 * i for i in range(20)])
            for target_db in tgts:
                res = min_power_at_sndr(_db(target_db), _db(snr_db), fc, bw,
                                        grid, fom)
                e_r = _db(snr_db) * KT
                n0 = KT * res.knobs.noise_figure
                rows.append((
                    float(snr_db), float(target_db), int(res.feasible),
                    _to_db(res.knobs.noise_figure), int(res.knobs.bits),
                    _to_db(res.knobs.e_max / (e_r + n0)),
                    res.breakdown.total * 1e3))
        inputs = {"snr_ideal_db": snr_list, "fc_ghz": fc / 1e9,
                  "bw_mhz": bw / 1e6, "grid": {"f_db": list(grid.f_db),
                                               "nu_db": list(grid.nu_db),
                                               "bits": list(grid.bits)}}
    elif preset == "power-breakdown":
        snr_db = _take(options, "snr_ideal_db", 10.0)
        targets = _take(options, "targets_db",
                        [-6.0 + 0.5 * i for i in range(32)])
        fc = _take(options, "fc_ghz", 3.5) * 1e9
        bw = _take(options, "bw_mhz", 200.0) * 1e6
        grid = _coarse_grid(options)
        header = ("target_sndr_db", "feasible", "power_nf_mw",
                  "power_sat_mw", "power_adc_mw", "power_total_mw")
        rows = []
        for target_db in targets:
            res = min_power_at_sndr(_db(target_db), _db(snr_db), fc, bw,
                                    grid, fom)
            b = res.breakdown
            rows.append((float(target_db), int(res.feasible),
                         b.nf_term * 1e3, b.sat_term * 1e3, b.adc_term * 1e3,
                         b.total * 1e3))
        inputs = {"snr_ideal_db": snr_db, "fc_ghz": fc / 1e9,
                  "bw_mhz": bw / 1e6}
    elif preset == "vary-nf":
        snr_list = _take(options, "snr_ideal_db", [0.0, 10.0, 30.0])
        bits = int(_take(options, "bits", 6))
        ratio = _take(options, "fc_over_b", 70.0)
        header = ("snr_ideal_db", "nf_db", "spectral_efficiency",
                  "energy_per_bit_pj", "is_minimizer")
        rows = []
        for snr_db in snr_list:
            curve = tradeoff_curve(_db(snr_db), ratio, "vary-f", fom,
                                   fixed_bits=bits)
            for knob, se, eb in curve.rows:
                rows.append((float(snr_db), float(knob), se, eb * 1e12,
                             int(knob == curve.metadata["minimizer"])))
        inputs = {"snr_ideal_db": snr_list, "bits": bits,
                  "fc_over_b": ratio}
    elif preset == "vary-bits":
        snr_list = _take(options, "snr_ideal_db", [10.0, 30.0])
        nf_db = _take(options, "nf_db", 5.0)
        ratio = _take(options, "fc_over_b", 70.0)
        header = ("snr_ideal_db", "bits", "spectral_efficiency",
                  "energy_per_bit_pj", "is_minimizer")
        rows = []
        for snr_db in snr_list:
            curve = tradeoff_curve(_db(snr_db), ratio, "vary-b", fom,
                                   fixed_nf_db=nf_db)
            for knob, se, eb in curve.rows:
                rows.append((float(snr_db), float(knob), se, eb * 1e12,
                             int(knob == curve.metadata["minimizer"])))
        inputs = {"snr_ideal_db": snr_list, "nf_db": nf_db,
                  "fc_over_b": ratio}
    elif preset == "bf-compare":
        n = int(_take(options, "n", 16))
        snr_db = _take(options, "snr_ideal_db", 0.0)
        fc = _take(options, "fc_ghz", 28.0) * 1e9
        bw = _take(options, "bw_mhz", 400.0) * 1e6
        targets = _take(options, "targets_db",
                        [0.5 * i for i in range(24)])
        gain_db = _take(options, "lna_extra_gain_db", 10.0)
        grid = _coarse_grid(options)
        header = ("target_sndr_db", "digital_feasible", "digital_total_mw",
                  "analog_feasible", "analog_total_mw")
        digital = ArrayConfig(n, "digital")
        analog = ArrayConfig(n, "analog", _db(gain_db))
        rows = []
        for target_db in targets:
            res_d = min_power_at_sndr(_db(target_db), _db(snr_db), fc, bw,
                                      grid, fom, digital)
            res_a = min_power_at_sndr(_db(target_db), _db(snr_db), fc, bw,
                                      grid, fom, analog)
            rows.append((float(target_db), int(res_d.feasible),
                         res_d.breakdown.total * 1e3, int(res_a.feasible),
                         res_a.breakdown.total * 1e3))
        inputs = {"n": n, "snr_ideal_db": snr_db, "fc_ghz": fc / 1e9,
                  "bw_mhz": bw / 1e6, "lna_extra_gain_db": gain_db}
    else:
        raise ValueError(f"unknown preset: {preset}")
    if options:
        raise ValueError(f"unknown sweep options for {preset}: "
                         f"{sorted(options)}")
    return header, rows, inputs


def cmd_sweep(args):
    options, fom = _sweep_options(args)
    header, rows, inputs = _run_sweep(args.preset, dict(options), fom)
    # compute everything before opening the file: a failed run leaves no
    # partial output behind
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v
                             for v in row])
    _echo({"command": "sweep", "version": VERSION, "preset": args.preset,
           "inputs": inputs, "seed": None, "rows": len(rows),
           "out": args.out})
    return 0


def cmd_optimize(args):
    raw = _read_json(args.config)
    if "optimize" not in raw:
        raise ValueError("config requires an 'optimize' section")
    spec = dict(raw["optimize"])
    fom = _fom_from(raw)
    kind = spec.pop("kind", None)
    if kind == "min-power":
        if "link" in raw:
            from .linkbudget import scenario_from_config, snr_ideal_from_link
            scenario = scenario_from_config(raw)
            snr = snr_ideal_from_link(scenario)
            fc, bw = scenario.fc, scenario.bandwidth
        else:
            snr = _db(float(spec.pop("snr_ideal_db")))
            fc = float(spec.pop("fc_ghz")) * 1e9
            bw = float(spec.pop("bw_mhz")) * 1e6
        target = _db(float(spec.pop("target_sndr_db")))
        grid_spec = spec.pop("grid", None)
        grid = (KnobGrid(**grid_spec) if grid_spec else
                _coarse_grid({}))
        array = (ArrayConfig.from_config(raw["array"])
                 if "array" in raw else None)
        if spec:
            raise ValueError(f"unknown optimize keys: {sorted(spec)}")
        res = min_power_at_sndr(target, snr, fc, bw, grid, fom, array)
        e_r = snr * KT
        n0 = KT * res.knobs.noise_figure
        out = {
            "kind": kind,
            "feasible": res.feasible,
            "nf_db": _to_db(res.knobs.noise_figure),
            "bits": int(res.knobs.bits),
            "backoff_db": _to_db(res.knobs.e_max / (e_r + n0)),
            "sndr_db": _to_db(res.sndr),
            "spectral_efficiency_bps_hz": res.spectral_efficiency,
            "power_total_mw": res.breakdown.total * 1e3,
            "energy_per_bit_pj": res.energy_per_bit * 1e12,
        }
    elif kind in ("min-eb-over-f", "min-eb-over-b"):
        from .optimizer import min_eb_over_F, min_eb_over_b
        snr = _db(float(spec.pop("snr_ideal_db")))
        ratio = float(spec.pop("fc_over_b"))
        if kind == "min-eb-over-f":
            bits = int(spec.pop("bits"))
            f_grid = spec.pop("f_db", None)
            if spec:
                raise ValueError(f"unknown optimize keys: {sorted(spec)}")
            res = min_eb_over_F(snr, ratio, bits, f_grid, fom)
        else:
            nf = _db(float(spec.pop("nf_db")))
            mode = spec.pop("mode", "integer-grid")
            if spec:
                raise ValueError(f"unknown optimize keys: {sorted(spec)}")
            res = min_eb_over_b(snr, ratio, nf, fom, mode=mode)
        out = {
            "kind": kind,
            "feasible": res.feasible,
            "nf_db": _to_db(res.knobs.noise_figure),
            "bits": int(res.knobs.bits),
            "sndr_db": _to_db(res.sndr),
            "spectral_efficiency_bps_hz": res.spectral_efficiency,
            "energy_per_bit_pj": res.energy_per_bit * 1e12,
        }
        if res.bits_continuous is not None:
            out["bits_continuous"] = res.bits_continuous
            out["boundary"] = res.boundary
    else:
        raise ValueError("optimize.kind must be 'min-power', "
                         "'min-eb-over-f', or 'min-eb-over-b'")
    _echo({"command": "optimize", "version": VERSION, "inputs": raw})
    _emit(out)
    return 0 if out.get("feasible", True) else 3


# --- parser ----------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="rfekit",
        description="receiver front-end noise/saturation/quantization "
                    "modeling toolkit")
    parser.add_argument("--version", action="version", version=VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sndr", help="SNDR of one front-end configuration")
    p.add_argument("--snr-ideal-db", type=float, required=True)
    p.add_argument("--nf-db", type=float, required=True)
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--backoff-db", type=float, required=True)
    p.add_argument("--sat", choices=["tanh", "clip"], default="tanh")
    p.add_argument("--quantizer",
                   choices=["uniform", "vector", "asymptotic", "onebit"],
                   default="uniform")
    p.set_defaults(func=cmd_sndr)

    p = sub.add_parser("power", help="front-end power breakdown")
    p.add_argument("--fc-ghz", type=float, required=True)
    p.add_argument("--bw-mhz", type=float, required=True)
    p.add_argument("--nf-db", type=float, required=True)
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--pmax-dbm", type=float, required=True)
    p.add_argument("--sat", choices=["tanh", "clip"], default="tanh")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("linkbudget",
                       help="evaluate a JSON scenario end to end")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_linkbudget)

    p = sub.add_parser(
        "sweep", help="write a preset sweep as CSV",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=_SWEEP_HELP)
    p.add_argument("--preset", required=True,
                   choices=["sdr-map", "min-power", "power-breakdown",
                            "vary-nf", "vary-bits", "bf-compare"])
    p.add_argument("--config", help="JSON file with optional 'sweep' "
                                    "parameter overrides and 'fom' section")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="run an optimizer from a JSON spec")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("onebit", help="one-bit receiver capacity")
    p.add_argument("--snr-db", type=float, required=True)
    p.add_argument("--fc-over-b", type=float,
                   help="with --nf-db, also report energy per bit")
    p.add_argument("--nf-db", type=float)
    p.set_defaults(func=cmd_onebit)

    p = sub.add_parser("beamforming",
                       help="array SNDR and power for one configuration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--architecture", choices=["digital", "analog"],
                   default="digital")
    p.add_argument("--snr-ideal-db", type=float, required=True,
                   help="per-antenna ideal SNR")
    p.add_argument("--nf-db", type=float, required=True)
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--backoff-db", type=float, required=True,
                   help="single-antenna backoff defining e_max")
    p.add_argument("--fc-ghz", type=float, required=True)
    p.add_argument("--bw-mhz", type=float, required=True)
    p.add_argument("--lna-gain-db", type=float, default=10.0)
    p.add_argument("--sat", choices=["tanh", "clip"], default="tanh")
    p.set_defaults(func=cmd_beamforming)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalAccuracyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
