"""JSON run configuration: schema, parsing and canonical serialization."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import jsonschema
import numpy as np

from .evolution import PRESETS, InitialState, MaterialParams, preset, profile_from_dict
from .quadrature import BeamGeometry, QuadratureSettings
from .spectrum import N_MAX

CASE_CHOICES = ("aa", "ab", "ac", "bb", "bc", "cc", "add1", "add2", "add3", "ba", "ca", "cb")

_positive = {"type": "number", "exclusiveMinimum": 0}

_PRESET_REQUIRES = {"sine": ["k"], "pluck": ["x0"], "gaussian": ["center", "width"], "mode": ["n"]}

_profile = {
    "oneOf": [
        {
            "type": "object",
            "required": ["preset"],
            "properties": {
                "preset": {"enum": list(PRESETS)},
                "k": {"type": "number"},
                "x0": {"type": "number"},
                "center": {"type": "number"},
                "width": _positive,
                "n": {"type": "integer", "minimum": 1},
                "amplitude": {"type": "number"},
                "height": {"type": "number"},
            },
            "additionalProperties": False,
            "allOf": [
                {"if": {"properties": {"preset": {"const": name}}}, "then": {"required": req}}
                for name, req in _PRESET_REQUIRES.items()
            ],
        },
        {
            "type": "object",
            "required": ["x", "values"],
            "properties": {
                "x": {"type": "array", "items": {"type": "number"}, "minItems": 2},
                "values": {"type": "array", "items": {"type": "number"}, "minItems": 2},
            },
            "additionalProperties": False,
        },
    ]
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["support"],
    "additionalProperties": False,
    "properties": {
        "support": {"type": "string"},
        "length": _positive,
        "material": {
            "type": "object",
            "additionalProperties": False,
            "properties": {k: _positive for k in ("sigma", "E", "I", "rho", "area")},
        },
        "wave_speed": _positive,
        "n_modes": {"type": "integer", "minimum": 1, "maximum": N_MAX},
        "initial": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"u0": _profile, "v0": _profile},
        },
        "time": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "t0": {"type": "number"},
                "t1": {"type": "number"},
                "frames": {"type": "integer", "minimum": 1},
            },
        },
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"points": {"type": "integer", "minimum": 2}},
        },
        "quadrature": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "panels": {"type": "integer", "minimum": 1},
                "nodes_per_panel": {"type": "integer", "minimum": 2, "maximum": 32},
            },
        },
    },
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    support: str
    length: float = 1.0
    material: MaterialParams | None = None
    wave_speed: float | None = None
    n_modes: int = 10
    initial: InitialState = field(default_factory=InitialState)
    t0: float = 0.0
    t1: float = 1.0
    frames: int = 11
    points: int = 101
    quadrature: QuadratureSettings | None = None

    @property
    def geometry(self) -> BeamGeometry:
        return BeamGeometry(self.length)

    @property
    def sigma(self) -> float:
        if self.material is None:
            raise ConfigError("config field /material: sigma or (E, I, rho, area) is required")
        return self.material.value

    def to_dict(self) -> dict:
        d = {
            "support": self.support,
            "length": self.length,
            "n_modes": self.n_modes,
            "initial": {"u0": self.initial.u0.to_dict(), "v0": self.initial.v0.to_dict()},
            "time": {"t0": self.t0, "t1": self.t1, "frames": self.frames},
            "grid": {"points": self.points},
        }
        if self.material is not None:
            d["material"] = self.material.to_dict()
        if self.wave_speed is not None:
            d["wave_speed"] = self.wave_speed
        if self.quadrature is not None:
            d["quadrature"] = {
                "panels": self.quadrature.panels,
                "nodes_per_panel": self.quadrature.nodes_per_panel,
            }
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _location(err: jsonschema.ValidationError) -> str:
    return "/" + "/".join(str(p) for p in err.absolute_path)


def validate(doc) -> None:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise ConfigError(f"config field {_location(err)}: {err.message}")


def from_dict(doc: dict) -> RunConfig:
    validate(doc)
    if doc["support"].lower() not in CASE_CHOICES:
        raise ConfigError(f"config field /support: unknown case {doc['support']!r}; expected one of {CASE_CHOICES}")
    try:
        init = doc.get("initial", {})
        u0 = profile_from_dict(init["u0"]) if "u0" in init else preset("zero")
        v0 = profile_from_dict(init["v0"]) if "v0" in init else preset("zero")
        time = doc.get("time", {})
        quad = doc.get("quadrature")
        cfg = RunConfig(
            support=doc["support"].lower(),
            length=float(doc.get("length", 1.0)),
            material=MaterialParams.from_dict(doc["material"]) if "material" in doc else None,
            wave_speed=float(doc["wave_speed"]) if "wave_speed" in doc else None,
            n_modes=int(doc.get("n_modes", 10)),
            initial=InitialState(u0, v0),
            t0=float(time.get("t0", 0.0)),
            t1=float(time.get("t1", 1.0)),
            frames=int(time.get("frames", 11)),
            points=int(doc.get("grid", {}).get("points", 101)),
            quadrature=QuadratureSettings(**quad) if quad else None,
        )
        geom = cfg.geometry
        for name, prof in (("u0", u0), ("v0", v0)):
            if getattr(prof, "name", None) == "mode":
                if prof.kwargs["n"] > cfg.n_modes:
                    raise ConfigError(f"config field /initial/{name}/n: mode {prof.kwargs['n']} exceeds n_modes={cfg.n_modes}")
                continue
            try:
                prof.evaluate(np.array([0.0, cfg.length]), geom)
            except ValueError as exc:
                raise ConfigError(f"config field /initial/{name}: {exc}") from None
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"config: {exc}") from None
    return cfg


def parse_config(text: str) -> RunConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON (line {exc.lineno}, column {exc.colno}): {exc.msg}") from None
    return from_dict(doc)


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
