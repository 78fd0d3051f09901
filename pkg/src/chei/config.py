"""Flat key-value configuration dialect.

One ``key = value`` pair per line; blank lines and ``#`` comments are
ignored; keys may be dotted (``ic.kind``).  Values are typed per key.
Serialization is canonical (fixed key order, shortest round-trip floats), so
parse -> serialize -> parse is a fixed point.
"""
from __future__ import annotations

from .errors import ConfigError


def _parse_float(raw: str) -> float:
    return float(raw)


def _parse_int(raw: str) -> int:
    try:
        return int(raw, 10)
    except ValueError:
        raise ValueError(f"expected an integer, got {raw!r}") from None


def _parse_bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low == "true":
        return True
    if low == "false":
        return False
    raise ValueError(f"expected true or false, got {raw!r}")


def _parse_float_list(raw: str) -> tuple:
    raw = raw.strip()
    if not raw:
        return ()
    return tuple(float(part) for part in raw.split(","))


def _render_float(v) -> str:
    return repr(float(v))


def _render_float_list(v) -> str:
    return ", ".join(repr(float(x)) for x in v)


_FLOAT = (_parse_float, _render_float)
_INT = (_parse_int, str)
_BOOL = (_parse_bool, lambda v: "true" if v else "false")
_STR = (str.strip, str)
_FLOATS = (_parse_float_list, _render_float_list)

# master key table; also fixes the canonical serialization order
KEY_SPECS = {
    "nu": _FLOAT,
    "tau": _FLOAT,
    "S": _FLOAT,
    "N": _INT,
    "samples": _INT,
    "dealias": _BOOL,
    "integrator": _STR,
    "steps": _INT,
    "T": _FLOAT,
    "trace_stride": _INT,
    "snapshot_times": _FLOATS,
    "ic.kind": _STR,
    "ic.seed": _INT,
    "ic.amplitude": _FLOAT,
    "ic.sharpness": _FLOAT,
    "ic.path": _STR,
    "beta": _FLOAT,
    "out_dir": _STR,
    "note": _STR,
    "S_values": _FLOATS,
    "tau0": _FLOAT,
    "halvings": _INT,
}

RUN_KEYS = frozenset(KEY_SPECS) - {"S_values", "tau0", "halvings"}
SWEEP_KEYS = RUN_KEYS | {"S_values"}
CONVERGE_KEYS = frozenset({"nu", "S", "N", "samples", "dealias",
                           "tau0", "halvings", "T", "out_dir", "note"})
IC_KEYS = frozenset({"nu", "N", "samples", "ic.kind", "ic.seed",
                     "ic.amplitude", "ic.sharpness", "ic.path", "out_dir"})


def parse_config_text(text: str) -> dict:
    """Raw key -> string-value mapping, preserving file order."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value.strip()
    return raw


def typed_config(raw: dict, allowed: frozenset) -> dict:
    """Validate key names against `allowed` and coerce values per KEY_SPECS."""
    typed = {}
    for key, value in raw.items():
        if key not in allowed:
            raise ConfigError(f"unknown config key: {key}")
        parser, _ = KEY_SPECS[key]
        try:
            typed[key] = parser(value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {exc}") from None
    return typed


def serialize_config(typed: dict) -> str:
    """Canonical text form; unknown keys are rejected."""
    lines = []
    for key in KEY_SPECS:
        if key in typed:
            _, render = KEY_SPECS[key]
            lines.append(f"{key} = {render(typed[key])}")
    extras = set(typed) - set(KEY_SPECS)
    if extras:
        raise ConfigError(f"unknown config key: {sorted(extras)[0]}")
    return "\n".join(lines) + "\n"


def load_config_file(path, allowed: frozenset) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return typed_config(parse_config_text(text), allowed)
