"""Experiment configuration: JSON schema, parsing, and exact round-tripping."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import jsonschema

from ..errors import ConfigError

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "pipct experiment configuration",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "function": {
            "oneOf": [
                {"type": "string"},
                {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "name": {"type": "string"},
                        "pieces": {
                            "type": "array",
                            "minItems": 1,
                            "items": {
                                "type": "object",
                                "required": ["interval", "expr"],
                                "additionalProperties": False,
                                "properties": {
                                    "interval": {
                                        "type": "array",
                                        "minItems": 2,
                                        "maxItems": 2,
                                        "items": {"type": "number"},
                                    },
                                    "expr": {"type": "string"},
                                },
                            },
                        },
                        "csv": {"type": "string"},
                    },
                },
            ]
        },
        "interval": {
            "type": "array",
            "minItems": 2,
            "maxItems": 2,
            "items": {"type": "number"},
        },
        "region": {
            "type": "array",
            "minItems": 2,
            "maxItems": 2,
            "items": {"type": "number"},
        },
        "N": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "integer", "minimum": 1},
        },
        "n": {"type": "integer", "minimum": 1},
        "np": {"type": "integer", "minimum": 1},
        "nq": {"type": "integer", "minimum": 1},
        "m": {"type": "integer", "minimum": 1},
        "eps": {"type": "number", "exclusiveMinimum": 0},
        "tau": {"type": "number", "exclusiveMinimum": 0},
        "max_rounds": {"type": "integer", "minimum": 1},
        "circle_samples": {"type": "integer", "minimum": 64},
        "samples_per_cell": {"type": "integer", "minimum": 16},
        "profile_points_per_cell": {"type": "integer", "minimum": 2},
        "match_total_samples": {"type": "boolean"},
        "vicinity_half_width": {"type": "number", "exclusiveMinimum": 0},
        "repeats": {"type": "integer", "minimum": 1},
        "residue_tol": {"type": "number", "exclusiveMinimum": 0},
        "pair_tol": {"type": "number", "exclusiveMinimum": 0},
        "out": {"type": "string"},
        "plot": {"type": "boolean"},
    },
}


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment's inputs.  Unset fields fall back to per-runner defaults."""

    function: dict | None = None
    interval: tuple[float, float] | None = None
    region: tuple[float, float] | None = None
    N: tuple[int, ...] | None = None
    n: int | None = None
    np: int | None = None
    nq: int | None = None
    m: int | None = None
    eps: float | None = None
    tau: float | None = None
    max_rounds: int | None = None
    circle_samples: int | None = None
    samples_per_cell: int | None = None
    profile_points_per_cell: int | None = None
    match_total_samples: bool | None = None
    vicinity_half_width: float | None = None
    repeats: int | None = None
    residue_tol: float | None = None
    pair_tol: float | None = None
    out: str | None = None
    plot: bool | None = None

    def to_dict(self) -> dict:
        doc = {}
        for key, value in asdict(self).items():
            if value is None:
                continue
            if isinstance(value, tuple):
                value = list(value)
            doc[key] = value
        return doc

    def emit(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        try:
            jsonschema.validate(doc, CONFIG_SCHEMA)
        except jsonschema.ValidationError as exc:
            raise ConfigError(f"invalid configuration: {exc.message}") from exc
        kwargs = dict(doc)
        if isinstance(kwargs.get("function"), str):
            kwargs["function"] = {"name": kwargs["function"]}
        for key in ("interval", "region"):
            if key in kwargs:
                lo, hi = kwargs[key]
                if not lo < hi:
                    raise ConfigError(f"{key} must satisfy a < b")
                kwargs[key] = (float(lo), float(hi))
        if "N" in kwargs:
            kwargs["N"] = tuple(int(v) for v in kwargs["N"])
        return cls(**kwargs)

    @classmethod
    def parse(cls, text: str) -> "ExperimentConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"configuration is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("configuration must be a JSON object")
        return cls.from_dict(doc)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())

    def override(self, **kwargs) -> "ExperimentConfig":
        """New config with the given non-None fields replaced."""
        data = {k: v for k, v in asdict(self).items()}
        for key, value in kwargs.items():
            if value is not None:
                data[key] = value
        cleaned = {}
        for key, value in data.items():
            if isinstance(value, list):
                value = tuple(value)
            cleaned[key] = value
        return ExperimentConfig(**cleaned)
