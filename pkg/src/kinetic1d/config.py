"""INI case files.

Sections only group keys for readability; every key maps to a field of
:class:`CaseConfig`. The ``kind`` key selects a template whose values are the
defaults for everything the file does not set::

    [case]
    kind = diffusion

    [grid]
    n = 80

    [scheme]
    order = 4

    [wave]
    a = 100
"""

from __future__ import annotations

import configparser
from dataclasses import fields
from pathlib import Path

from .cases import CaseConfig, template
from .errors import ConfigError

_FIELD_TYPES = {f.name: f.type for f in fields(CaseConfig)}


def _base_type(annotation: str):
    # Annotations are strings under postponed evaluation; "int | None" -> int.
    name = annotation.split("|")[0].strip()
    return {"int": int, "float": float, "str": str, "tuple": tuple}.get(name, str)


def convert(key: str, raw: str):
    """Parse the textual value of a case key."""
    if key not in _FIELD_TYPES:
        raise ConfigError(f"unknown key {key!r}")
    raw = raw.strip()
    ann = str(_FIELD_TYPES[key])
    if "None" in ann and raw.lower() in ("", "none"):
        return None
    kind = _base_type(ann)
    try:
        if kind is tuple:
            return tuple(float(v) for v in raw.replace(";", ",").split(",") if v.strip())
        if kind is int:
            value = float(raw)
            if value != int(value):
                raise ValueError(raw)
            return int(value)
        if kind is float:
            return float(raw)
    except ValueError:
        raise ConfigError(f"invalid value {raw!r} for {key}") from None
    return raw


def parse_overrides(pairs) -> dict:
    """Turn ``key=value`` (or ``section.key=value``) strings into typed values."""
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"override {pair!r} is not of the form key=value")
        key, raw = pair.split("=", 1)
        key = key.strip().split(".")[-1]
        out[key] = convert(key, raw)
    return out


def read_values(text: str) -> dict:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed case file: {exc}") from None
    values = {}
    for section in parser.sections():
        for key, raw in parser.items(section):
            if key in values:
                raise ConfigError(f"key {key!r} given twice")
            values[key] = convert(key, raw)
    return values


def case_from_values(values: dict, overrides: dict | None = None) -> CaseConfig:
    values = dict(values)
    values.update(overrides or {})
    kind = values.pop("kind", None)
    if kind is None:
        raise ConfigError("the case file must set kind")
    return template(kind, **values)


def load_case(path, overrides: dict | None = None) -> CaseConfig:
    """Read a case file and apply ``overrides`` on top."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return case_from_values(read_values(text), overrides)


def dump_case(case: CaseConfig) -> str:
    """INI text that :func:`load_case` maps back to ``case``."""
    lines = ["[case]"]
    for f in fields(case):
        v = getattr(case, f.name)
        if v is None:
            continue
        if isinstance(v, tuple):
            v = ", ".join(repr(float(t)) for t in v)
        elif isinstance(v, float):
            v = repr(v)
        lines.append(f"{f.name} = {v}")
    return "\n".join(lines) + "\n"
