"""JSON scenario files.

A scenario file is a strict JSON document: unknown keys, non-finite numbers
and wrong types are all rejected with the offending key path.  Parsing goes
through a canonical dict with every default filled in.  That dict is what
reports echo, and parsing it again gives bit-identical inputs.

Example::

    {
      "path": [
        {"length_m": 8300, "model": {"type": "cauchy_air"}},
        {"length_m": 7.688e8, "model": {"type": "composite", "params": {"parts": [
            {"type": "dirac_sea"},
            {"type": "cold_plasma", "params": {"electron_density_m3": 7e6}}]}}},
        {"length_m": 8300, "model": {"type": "cauchy_air"}}
      ],
      "beams": {"lambda_low_nm": 1064, "doubled": true},
      "k_prime_true": 1.0
    }

Every ``dirac_sea`` term takes its coefficient from ``k_prime_true``.
"""

import copy
import json
import math

from .dispersion import CauchyAir, ColdPlasma, Composite, Constant, DiracSea
from .montecarlo import DetectorModel, PulseModel, RangingScenario
from .physconst import CODATA_2018
from .propagation import BeamPair, OpticalPath, PathSegment

__all__ = ["ScenarioError", "normalize", "build", "load", "loads", "dumps",
           "default_scenario_dict"]


class ScenarioError(ValueError):
    pass


_PULSE_DEFAULTS = {
    "sigma_pulse_s": 0.0,
    "mean_photons_per_shot": 1.0,
    "mean_photons_per_shot_high": None,
    "emission_offset_s": 0.0,
}
_DETECTOR_DEFAULTS = {
    "jitter_sigma_s": 60e-12,
    "background_rate_hz": 0.0,
    "gate_halfwidth_s": 10e-9,
}
_MODEL_PARAMS = {
    "dirac_sea": {},
    "cold_plasma": {"electron_density_m3": None},
    "cauchy_air": {"a_coeff": 2.726e-4, "b_coeff_um2": 7.52e-3},
    "constant": {"refractivity": None},
    "composite": {"parts": None},
}
_CONSTANT_KEYS = {
    "c": "c",
    "hbar_J_s": "hbar",
    "electron_rest_energy_J": "electron_rest_energy",
    "alpha": "alpha",
    "elementary_charge_C": "elementary_charge",
    "vacuum_permittivity_F_m": "vacuum_permittivity",
    "electron_mass_kg": "electron_mass",
}
_TOP_KEYS = {"constants", "path", "beams", "pulse", "detector", "shots", "k_prime_true", "seed"}


def default_scenario_dict():
    """Earth-Moon round trip in vacuum, 1064 nm plus its doubled 532 nm, k' = 1."""
    return {
        "path": [{"length_m": 7.688e8, "model": {"type": "dirac_sea"}}],
        "beams": {"lambda_low_nm": 1064.0, "doubled": True},
        "k_prime_true": 1.0,
    }


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ScenarioError(f"{where}: expected an object")
    extra = set(obj) - set(allowed)
    if extra:
        raise ScenarioError(f"{where}: unknown key(s) {sorted(extra)}")


def _number(value, where, positive=False, nonneg=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ScenarioError(f"{where}: must be finite")
    if positive and not value > 0:
        raise ScenarioError(f"{where}: must be > 0")
    if nonneg and not value >= 0:
        raise ScenarioError(f"{where}: must be >= 0")
    return value


def _integer(value, where, lo, hi):
    if isinstance(value, bool) or not isinstance(value, int) or not lo <= value <= hi:
        raise ScenarioError(f"{where}: expected an integer in [{lo}, {hi}]")
    return value


def _normalize_model(m, where):
    _check_keys(m, {"type", "params"}, where)
    kind = m.get("type")
    if kind not in _MODEL_PARAMS:
        raise ScenarioError(f"{where}.type: expected one of {sorted(_MODEL_PARAMS)}, got {kind!r}")
    params = m.get("params", {})
    _check_keys(params, _MODEL_PARAMS[kind], f"{where}.params")
    out = {}
    for key, default in _MODEL_PARAMS[kind].items():
        if key not in params and default is None:
            raise ScenarioError(f"{where}.params: missing {key!r}")
        value = params.get(key, default)
        if key == "parts":
            if not isinstance(value, list) or not value:
                raise ScenarioError(f"{where}.params.parts: expected a non-empty list")
            out[key] = [_normalize_model(p, f"{where}.params.parts[{i}]")
                        for i, p in enumerate(value)]
        else:
            out[key] = _number(value, f"{where}.params.{key}",
                               nonneg=key in ("electron_density_m3", "a_coeff", "b_coeff_um2"))
    return {"type": kind, "params": out}


def normalize(doc):
    """Validate a scenario document and return it with all defaults filled in."""
    _check_keys(doc, _TOP_KEYS, "scenario")
    out = {}

    consts = doc.get("constants", {})
    _check_keys(consts, _CONSTANT_KEYS, "constants")
    out["constants"] = {k: _number(v, f"constants.{k}", positive=True) for k, v in consts.items()}

    path = doc.get("path")
    if not isinstance(path, list) or not path:
        raise ScenarioError("path: expected a non-empty list of segments")
    out["path"] = []
    for i, seg in enumerate(path):
        where = f"path[{i}]"
        _check_keys(seg, {"length_m", "model"}, where)
        if "length_m" not in seg or "model" not in seg:
            raise ScenarioError(f"{where}: needs 'length_m' and 'model'")
        out["path"].append({
            "length_m": _number(seg["length_m"], f"{where}.length_m", positive=True),
            "model": _normalize_model(seg["model"], f"{where}.model"),
        })

    beams = doc.get("beams")
    _check_keys(beams, {"lambda_low_nm", "lambda_high_nm", "doubled"}, "beams")
    if "lambda_low_nm" not in beams:
        raise ScenarioError("beams: missing 'lambda_low_nm'")
    b = {"lambda_low_nm": _number(beams["lambda_low_nm"], "beams.lambda_low_nm", positive=True)}
    doubled = beams.get("doubled", False)
    if not isinstance(doubled, bool):
        raise ScenarioError("beams.doubled: expected true or false")
    if doubled == ("lambda_high_nm" in beams):
        raise ScenarioError("beams: give exactly one of 'lambda_high_nm' or 'doubled': true")
    if doubled:
        b["doubled"] = True
    else:
        b["lambda_high_nm"] = _number(beams["lambda_high_nm"], "beams.lambda_high_nm", positive=True)
        if not b["lambda_high_nm"] < b["lambda_low_nm"]:
            raise ScenarioError("beams: lambda_high_nm must be shorter than lambda_low_nm")
    out["beams"] = b

    pulse = doc.get("pulse", {})
    _check_keys(pulse, _PULSE_DEFAULTS, "pulse")
    out["pulse"] = {}
    for k, default in _PULSE_DEFAULTS.items():
        v = pulse.get(k, default)
        if v is not None:
            v = _number(v, f"pulse.{k}", nonneg=k != "emission_offset_s")
        out["pulse"][k] = v

    det = doc.get("detector", {})
    _check_keys(det, _DETECTOR_DEFAULTS, "detector")
    out["detector"] = {k: _number(det.get(k, d), f"detector.{k}", nonneg=True,
                                  positive=k == "gate_halfwidth_s")
                       for k, d in _DETECTOR_DEFAULTS.items()}

    out["shots"] = _integer(doc.get("shots", 10_000), "shots", 1, 10**12)
    out["k_prime_true"] = _number(doc.get("k_prime_true", 1.0), "k_prime_true")
    out["seed"] = _integer(doc.get("seed", 0), "seed", 0, 2**64 - 1)
    return out


def _build_model(m):
    p = m["params"]
    kind = m["type"]
    if kind == "dirac_sea":
        return DiracSea(1.0)
    if kind == "cold_plasma":
        return ColdPlasma(p["electron_density_m3"])
    if kind == "cauchy_air":
        return CauchyAir(p["a_coeff"], p["b_coeff_um2"])
    if kind == "constant":
        return Constant(p["refractivity"])
    return Composite(tuple(_build_model(q) for q in p["parts"]))


def build(doc):
    """Turn a scenario document into ``(RangingScenario, seed, canonical_dict)``."""
    doc = normalize(doc)
    constants = CODATA_2018.replace(**{_CONSTANT_KEYS[k]: v for k, v in doc["constants"].items()})
    path = OpticalPath(tuple(PathSegment(s["length_m"], _build_model(s["model"]))
                             for s in doc["path"]))
    k_true = doc["k_prime_true"]
    b = doc["beams"]
    try:
        if b.get("doubled"):
            beams = BeamPair.doubled(b["lambda_low_nm"] * 1e-9, constants)
        else:
            beams = BeamPair.from_wavelengths(b["lambda_low_nm"] * 1e-9,
                                              b["lambda_high_nm"] * 1e-9, constants)
        p, d = doc["pulse"], doc["detector"]
        pulse = PulseModel(p["sigma_pulse_s"], p["mean_photons_per_shot"],
                           p["emission_offset_s"], p["mean_photons_per_shot_high"])
        detector = DetectorModel(d["jitter_sigma_s"], d["background_rate_hz"],
                                 d["gate_halfwidth_s"])
        scenario = RangingScenario(path.with_kprime(k_true), beams, pulse, detector,
                                   doc["shots"], k_true, constants)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None
    return scenario, doc["seed"], doc


def loads(text):
    def reject(token):
        raise ScenarioError(f"non-finite number {token} is not allowed")

    try:
        doc = json.loads(text, parse_constant=reject)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return build(doc)


def load(path):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file: {exc}") from None
    return loads(text)


def dumps(doc):
    """Single-line canonical JSON for a normalized scenario."""
    return json.dumps(copy.deepcopy(doc), sort_keys=True, separators=(",", ":"))
