"""Reading configurations and writing CSV/JSON results."""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .ideal import IdealConfig, from_generators


class ConfigError(ValueError):
    """The configuration file is malformed."""


def fraction_str(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_fraction(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {text!r}") from exc


def config_from_json(data: Any) -> IdealConfig:
    """Build an :class:`IdealConfig` from the decoded JSON document.

    Expected shape::

        {"num_vars": 3,
         "ideals": [{"name": "Y1", "gens": [[0, 1, 0], "x2^2"]}],
         "betas": ["1/2"]}
    """
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    try:
        num_vars = int(data["num_vars"])
        entries = data["ideals"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"missing or invalid field: {exc}") from exc
    if not isinstance(entries, list) or not entries:
        raise ConfigError("'ideals' must be a nonempty list")
    names, ideals = [], []
    for k, entry in enumerate(entries):
        if not isinstance(entry, dict) or "gens" not in entry:
            raise ConfigError(f"ideal #{k} needs a 'gens' list")
        try:
            ideals.append(from_generators(num_vars, entry["gens"]))
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"ideal #{k}: {exc}") from exc
        names.append(str(entry.get("name", f"I{k + 1}")))
    betas = data.get("betas")
    if betas is not None:
        betas = tuple(parse_fraction(b) for b in betas)
    try:
        return IdealConfig(num_vars, tuple(ideals), tuple(names), betas)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> IdealConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return config_from_json(data)


def config_to_json(cfg: IdealConfig) -> dict:
    out = {
        "num_vars": cfg.num_vars,
        "ideals": [{"name": name, "gens": [list(g) for g in ideal.mingens]}
                   for name, ideal in zip(cfg.names, cfg.ideals)],
    }
    if cfg.betas is not None:
        out["betas"] = [fraction_str(b) for b in cfg.betas]
    return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return fraction_str(v)
    if isinstance(v, float) and v in (float("inf"), float("-inf")):
        return "inf" if v > 0 else "-inf"
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n")


def write_csv(path: Path, rows: Iterable[dict], columns: list[str], manifest: str | None = None) -> None:
    with path.open("w", newline="") as fh:
        if manifest:
            fh.write(f"# manifest: {manifest}\n")
        writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (fraction_str(v) if isinstance(v, Fraction) else v)
                             for k, v in row.items() if k in columns})
