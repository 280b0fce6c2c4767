import logging
import os
from pathlib import Path

import yaml

from rankcode.errors import FormatError

logger = logging.getLogger(__name__)

SEED_ENV_VAR = "RANKCODE_SEED"

SIMULATION_KEYS = {
    "code": str,
    "N": int,
    "rho": int,
    "t": int,
    "links": int,
    "seed": int,
    "trials": int,
    "adversarial": bool,
    "jobs": int,
}


def load_simulation_config(path) -> dict:
    """Read a YAML mapping of simulation parameters."""
    path = Path(path)
    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise FormatError(f"{path}: invalid YAML: {e}") from e
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected a mapping, got {type(data).__name__}")

    unknown = sorted(set(data) - set(SIMULATION_KEYS))
    if unknown:
        raise FormatError(f"{path}: unknown keys {', '.join(unknown)}")
    for key, value in data.items():
        expected = SIMULATION_KEYS[key]
        if expected is int and isinstance(value, bool) or not isinstance(value, expected):
            raise FormatError(f"{path}: {key} must be {expected.__name__}, got {value!r}")
    logger.debug(f"loaded simulation config {path}: {data}")
    return data


def merge_config(args, config: dict, defaults: dict) -> dict:
    """Explicit flags (non-None attributes of args) win over file values."""
    merged = dict(defaults)
    merged.update(config)
    for key in SIMULATION_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def resolve_seed(flag: int | None, config: dict | None = None) -> int:
    """--seed, then the config file, then $RANKCODE_SEED, then 0."""
    if flag is not None:
        return flag
    if config and config.get("seed") is not None:
        return config["seed"]
    env = os.environ.get(SEED_ENV_VAR)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise FormatError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from None
