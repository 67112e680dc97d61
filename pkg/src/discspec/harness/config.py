"""Experiment configuration: one JSON document, unknown keys rejected."""

from __future__ import annotations

import copy
import hashlib
import json
from pathlib import Path

import jsonschema

from ..errors import ConfigError

KINDS = ("verify_lemmas", "spectrum", "sweep", "bgk", "symbol")

_num = {"type": "number"}
_pos = {"type": "number", "exclusiveMinimum": 0}
_count = {"type": "integer", "minimum": 1}
_complex = {
    "oneOf": [
        {"type": "number"},
        {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
    ]
}


def _obj(props: dict, required=()) -> dict:
    return {"type": "object", "properties": props, "required": list(required),
            "additionalProperties": False}


SCHEMA = _obj(
    {
        "experiment": {"enum": list(KINDS)},
        "seed": {"type": "integer", "minimum": 0, "maximum": 2 ** 64 - 1},
        "description": {"type": "string"},
        "output": {"type": "string"},
        "profile": _obj({"p": _pos, "tau": _pos, "d": {"type": "integer", "minimum": 1},
                         "alpha": _num, "delta": _num, "nu": _num}),
        "model": _obj({
            "type": {"enum": ["abstract", "schrodinger"]},
            "dim": _count,
            "m_norm": {"type": "number", "minimum": 0},
            "count": _count,
            "grid": _obj({"d": {"type": "integer"}, "n": {"type": "integer"}, "h": _pos},
                         ["d", "n", "h"]),
            "potential": _obj({
                "kind": {"enum": ["gaussian_complex", "pavlov_decay", "custom_table"]},
                "amplitude": _complex,
                "width": _pos,
                "decay_rate": _pos,
                "decay_power": _pos,
                "table": {"type": "array", "items": _complex},
            }, ["kind"]),
        }, ["type"]),
        "grids": _obj({
            "mu": _obj({"n_radii": _count, "n_angles": _count, "r_min": _pos, "r_max": _pos}),
            "disk": _obj({"n_radii": _count, "n_angles": _count, "r_max": _pos}),
            "lambda": _obj({"re": {"type": "array", "items": _num, "minItems": 1},
                            "im": {"type": "array", "items": _pos, "minItems": 1}}),
        }),
        "tolerances": _obj({"slack": {"type": "number", "minimum": 0},
                            "zero_tol": _pos, "refine_tol": _pos}),
        "samples": _count,
        "scales": {"type": "array", "items": _pos, "minItems": 1},
        "refine": {"type": "boolean"},
        "bgk": _obj({"oracles": _count, "zeros_per_oracle": _count, "alpha": {"type": "number", "minimum": 0},
                     "tau": _pos, "points": {"type": "array", "items": _obj(
                         {"xi": _complex, "beta": {"type": "number", "minimum": 0}}, ["xi", "beta"])},
                     "n_radii": _count, "n_angles": _count}),
    },
    ["experiment", "seed"],
)

DEFAULTS = {
    "profile": {"p": 2.0, "tau": 0.5, "d": 2},
    "grids": {
        "mu": {"n_radii": 10, "n_angles": 10, "r_min": 0.05, "r_max": 20.0},
        "disk": {"n_radii": 10, "n_angles": 10, "r_max": 0.95},
        "lambda": {"re": [-4.0, -1.0, 0.5, 2.0, 8.0], "im": [0.1, 1.0, 4.0]},
    },
    "tolerances": {"slack": 1e-9, "zero_tol": 1e-7, "refine_tol": 0.05},
    "samples": 1000,
    "scales": [0.5, 1.0, 2.0, 4.0],
    "refine": True,
}


def _merge(base: dict, extra: dict) -> dict:
    out = copy.deepcopy(base)
    for k, v in extra.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _merge(out[k], v)
        else:
            out[k] = copy.deepcopy(v)
    return out


def as_complex(x) -> complex:
    return complex(x[0], x[1]) if isinstance(x, list) else complex(x)


def _semantic(cfg: dict) -> None:
    prof = cfg["profile"]
    if not 0 < prof["tau"] < 1:
        raise ConfigError("profile.tau must lie in (0, 1)")
    model = cfg.get("model", {})
    kind = cfg["experiment"]
    if kind == "spectrum":
        if model.get("type") != "schrodinger":
            raise ConfigError("spectrum experiments need a schrodinger model")
    if model.get("type") == "schrodinger":
        for key in ("grid", "potential"):
            if key not in model:
                raise ConfigError(f"schrodinger model needs '{key}'")
        g = model["grid"]
        if g["d"] not in (1, 2, 3) or g["n"] < 2:
            raise ConfigError("grid needs d in {1, 2, 3} and n >= 2")
        if g["n"] ** g["d"] > 4096:
            raise ConfigError("grid exceeds 4096 points")
        d, p = g["d"], prof["p"]
        if prof.get("d", d) != d:
            raise ConfigError("profile.d disagrees with grid.d")
        if not (d >= 2 and p >= 2 and p > d / 2):
            raise ConfigError("schrodinger experiments need d >= 2, p >= 2 and p > d/2")
    if model.get("type") == "abstract" and "dim" not in model:
        raise ConfigError("abstract model needs 'dim'")
    if model.get("type") == "abstract" and model["dim"] > 400:
        raise ConfigError("abstract model dimension is capped at 400")
    mu = cfg["grids"]["mu"]
    if not mu["r_min"] < mu["r_max"]:
        raise ConfigError("grids.mu needs r_min < r_max")
    if not cfg["grids"]["disk"]["r_max"] < 1:
        raise ConfigError("grids.disk.r_max must be < 1")
    bgk = cfg.get("bgk", {})
    if "tau" in bgk and not 0 < bgk["tau"] < 1:
        raise ConfigError("bgk.tau must lie in (0, 1)")
    for pt in bgk.get("points", []):
        if abs(abs(as_complex(pt["xi"])) - 1) > 1e-12:
            raise ConfigError("bgk points must lie on the unit circle")


def validate(raw: dict) -> dict:
    """Schema and cross-field checks; returns the config with defaults filled in."""
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    try:
        jsonschema.validate(raw, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise ConfigError(f"{where}: {exc.message}") from None
    cfg = _merge(DEFAULTS, raw)
    _semantic(cfg)
    return cfg


def load(path, seed: int | None = None) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None
    if seed is not None:
        raw["seed"] = seed
    return validate(raw)


def digest(cfg: dict) -> str:
    """SHA-256 of the canonical JSON form."""
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def bundled(name: str) -> Path:
    """Path of a config shipped with the package (``verify``, ``spectrum``, ...)."""
    path = Path(__file__).resolve().parent.parent / "configs" / f"{name}.json"
    if not path.exists():
        raise ConfigError(f"no bundled config named {name!r}")
    return path
