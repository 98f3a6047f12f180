"""Link-budget evaluation: from physical scenario parameters to ideal SNR,
achieved SNDR, bit rate, consumed power, and energy per bit.

The pipeline is pathloss -> received energy over thermal noise (the ideal
SNR at reference noise figure) -> front-end correlation at the configured
knobs -> SNDR -> derated rate eta * B * log2(1 + delta * SNDR) -> power and
energy per bit.  Scenario files are JSON with explicit units in key names
(dBm/GHz/MHz/dB at the boundary, SI inside).
"""
import json
import math
from dataclasses import dataclass

from .beamforming import ArrayConfig
from .core import RfeKnobs, SaturationKind
from .metrics import OperatingPoint, rho_sq_numeric, sndr as sndr_of
from .power import FiguresOfMerit, PowerBreakdown, kt_at, p_rfe

INH_NLOS = "inh-nlos"
INH_LOS = "inh-los"


def pathloss_db(model, fc, distance):
    """Pathloss in dB for the indoor-office models or a fixed override.

    model is "inh-nlos" (17.30 + 38.3 log10 d + 24.9 log10 fc/GHz),
    "inh-los" (32.4 + 17.3 log10 d + 20 log10 fc/GHz), or a number taken as
    the pathloss itself for any geometry.  The empirical models require at
    least 1 m of separation.
    """
    if isinstance(model, (int, float)) and not isinstance(model, bool):
        return float(model)
    if not fc > 0.0:
        raise ValueError("fc must be positive")
    if distance < 1.0:
        raise ValueError("indoor models require distance >= 1 m")
    fc_ghz = fc / 1e9
    if model == INH_NLOS:
        return 17.30 + 38.3 * math.log10(distance) + 24.9 * math.log10(fc_ghz)
    if model == INH_LOS:
        return 32.4 + 17.3 * math.log10(distance) + 20.0 * math.log10(fc_ghz)
    raise ValueError(f"unknown pathloss model: {model!r}")


@dataclass(frozen=True)
class LinkScenario:
    """Physical link description plus the rate-derating conventions.

    tx_power in watts, fc and bandwidth in Hz, distance in meters;
    pathloss_model as in pathloss_db.  rate_derating is the fraction eta of
    capacity credited as throughput and sndr_derating the linear factor
    applied to SNDR inside the log.
    """
    tx_power: float
    fc: float
    bandwidth: float
    distance: float
    pathloss_model: object = INH_NLOS
    temperature: float = 290.0
    rate_derating: float = 0.8
    sndr_derating: float = 0.25

    def __post_init__(self):
        if not (self.tx_power > 0.0 and self.fc > 0.0
                and self.bandwidth > 0.0 and self.distance > 0.0):
            raise ValueError("tx_power, fc, bandwidth, distance must be "
                             "positive")
        if not self.temperature > 0.0:
            raise ValueError("temperature must be positive")
        if not 0.0 < self.rate_derating <= 1.0:
            raise ValueError("rate_derating must lie in (0, 1]")
        if not 0.0 < self.sndr_derating <= 1.0:
            raise ValueError("sndr_derating must lie in (0, 1]")

    def pathloss(self):
        return pathloss_db(self.pathloss_model, self.fc, self.distance)


def snr_ideal_from_link(scenario: LinkScenario):
    """Ideal SNR (linear): received power over kT*B at the scenario
    temperature, i.e. the SNR of a noise-figure-1, distortion-free
    receiver."""
    loss = 10.0 ** (-scenario.pathloss() / 10.0)
    p_rx = scenario.tx_power * loss
    return p_rx / (kt_at(scenario.temperature) * scenario.bandwidth)


@dataclass(frozen=True)
class ScenarioReport:
    """Every intermediate of one scenario evaluation."""
    scenario: LinkScenario
    knobs: RfeKnobs
    pathloss_db: float
    snr_ideal: float
    backoff: float
    rho_sq: float
    sndr: float
    spectral_efficiency: float
    rate: float
    breakdown: PowerBreakdown
    energy_per_bit: float

    def as_dict(self):
        """Boundary-unit view of the report (dB, Mbps, mW, pJ/bit)."""
        power = self.breakdown.as_dict()
        return {
            "pathloss_db": self.pathloss_db,
            "snr_ideal_db": 10.0 * math.log10(self.snr_ideal),
            "backoff_db": 10.0 * math.log10(self.backoff),
            "rho_sq": self.rho_sq,
            "sndr_db": 10.0 * math.log10(self.sndr) if self.sndr > 0.0
                       else -math.inf,
            "spectral_efficiency_bps_hz": self.spectral_efficiency,
            "rate_mbps": self.rate / 1e6,
            "power_nf_mw": power["nf_w"] * 1e3,
            "power_sat_mw": power["sat_w"] * 1e3,
            "power_adc_mw": power["adc_w"] * 1e3,
            "power_total_mw": power["total_w"] * 1e3,
            "energy_per_bit_pj": self.energy_per_bit * 1e12,
        }


def evaluate_scenario(scenario: LinkScenario, knobs: RfeKnobs,
                      fom: FiguresOfMerit = None) -> ScenarioReport:
    """Run the full pipeline for one scenario and knob setting."""
    fom = fom if fom is not None else FiguresOfMerit()
    loss_db = scenario.pathloss()
    snr_ideal = snr_ideal_from_link(scenario)
    kt = kt_at(scenario.temperature)
    op = OperatingPoint.create(snr_ideal, knobs.noise_figure, knobs.e_max,
                               kt=kt)
    rho = rho_sq_numeric(int(knobs.bits), op.backoff, knobs.sat_kind).rho_sq
    sndr_lin = sndr_of(op, rho)
    se = scenario.rate_derating * math.log2(
        1.0 + scenario.sndr_derating * sndr_lin)
    rate = se * scenario.bandwidth
    breakdown = p_rfe(scenario.fc, scenario.bandwidth, knobs, fom)
    eb = breakdown.total / rate if rate > 0.0 else math.inf
    return ScenarioReport(scenario=scenario, knobs=knobs,
                          pathloss_db=loss_db, snr_ideal=snr_ideal,
                          backoff=op.backoff, rho_sq=rho, sndr=sndr_lin,
                          spectral_efficiency=se, rate=rate,
                          breakdown=breakdown, energy_per_bit=eb)


# --- JSON scenario files ---------------------------------------------------

_LINK_KEYS = {"tx_power_dbm", "fc_ghz", "bw_mhz", "distance_m",
              "pathloss_model", "temperature_k"}
_KNOB_KEYS = {"nf_db", "bits", "backoff_db", "sat"}
_DERATING_KEYS = {"rate_eta", "sndr_factor"}
_SECTIONS = {"link", "knobs", "fom", "array", "derating"}


def _check_keys(section, allowed, where):
    extra = set(section) - allowed
    if extra:
        raise ValueError(f"unknown {where} keys: {sorted(extra)}")


def _parse_pathloss(value):
    if isinstance(value, str):
        if value not in (INH_NLOS, INH_LOS):
            raise ValueError(f"unknown pathloss model: {value!r}")
        return value
    if isinstance(value, dict):
        _check_keys(value, {"fixed_db"}, "pathloss_model")
        return float(value["fixed_db"])
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    raise ValueError("pathloss_model must be a model name, a number, or "
                     "{'fixed_db': value}")


def scenario_from_config(config):
    """LinkScenario from the 'link' (+ optional 'derating') sections of a
    parsed config object."""
    if "link" not in config:
        raise ValueError("config requires a 'link' section")
    link = config["link"]
    _check_keys(link, _LINK_KEYS, "link")
    missing = {"tx_power_dbm", "fc_ghz", "bw_mhz", "distance_m"} - set(link)
    if missing:
        raise ValueError(f"link section missing keys: {sorted(missing)}")
    derating = config.get("derating", {})
    _check_keys(derating, _DERATING_KEYS, "derating")
    return LinkScenario(
        tx_power=1e-3 * 10.0 ** (float(link["tx_power_dbm"]) / 10.0),
        fc=float(link["fc_ghz"]) * 1e9,
        bandwidth=float(link["bw_mhz"]) * 1e6,
        distance=float(link["distance_m"]),
        pathloss_model=_parse_pathloss(link.get("pathloss_model", INH_NLOS)),
        temperature=float(link.get("temperature_k", 290.0)),
        rate_derating=float(derating.get("rate_eta", 0.8)),
        sndr_derating=float(derating.get("sndr_factor", 0.25)),
    )


def knobs_from_config(config, scenario: LinkScenario) -> RfeKnobs:
    """RfeKnobs from the 'knobs' section, resolving the backoff (dB) into a
    saturation limit at the scenario's operating point."""
    if "knobs" not in config:
        raise ValueError("config requires a 'knobs' section")
    section = config["knobs"]
    _check_keys(section, _KNOB_KEYS, "knobs")
    missing = {"nf_db", "bits", "backoff_db"} - set(section)
    if missing:
        raise ValueError(f"knobs section missing keys: {sorted(missing)}")
    nf = 10.0 ** (float(section["nf_db"]) / 10.0)
    nu = 10.0 ** (float(section["backoff_db"]) / 10.0)
    kt = kt_at(scenario.temperature)
    e_r = snr_ideal_from_link(scenario) * kt
    n0 = kt * nf
    return RfeKnobs(noise_figure=nf, e_max=nu * (e_r + n0),
                    bits=int(section["bits"]),
                    sat_kind=SaturationKind(section.get("sat", "tanh")))


def parse_config(config):
    """Split a parsed scenario config into its typed parts.

    Returns a dict with keys scenario, knobs, fom, and array (None when the
    section is absent).  Unknown sections or keys are rejected so typos
    fail loudly instead of silently keeping defaults.
    """
    _check_keys(config, _SECTIONS, "config")
    scenario = scenario_from_config(config)
    knobs = knobs_from_config(config, scenario)
    fom = FiguresOfMerit.from_config(config.get("fom", {}))
    array = (ArrayConfig.from_config(config["array"])
             if "array" in config else None)
    return {"scenario": scenario, "knobs": knobs, "fom": fom, "array": array}


def load_config(path):
    """Read and split a JSON scenario file (see parse_config)."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            config = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(config, dict):
        raise ValueError("scenario config must be a JSON object")
    return parse_config(config)
