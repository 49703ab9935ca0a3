import json
import re

import numpy as np


def parse_param(raw):
    """Split `key=value`; the value becomes an int, else a float."""
    if "=" not in raw:
        raise ValueError(f"expected key=value, got {raw!r}")
    key, value = raw.split("=", 1)
    key, value = key.strip(), value.strip()
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", key):
        raise ValueError(f"bad parameter name {key!r}")
    try:
        return key, int(value)
    except ValueError:
        pass
    try:
        return key, float(value)
    except ValueError:
        raise ValueError(f"parameter {key} needs a number, got {value!r}")


def parse_params(raws):
    out = {}
    for raw in raws:
        key, value = parse_param(raw)
        out[key] = value
    return out


def _default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return str(obj)


def dump_json(data, pretty=False):
    """Deterministic JSON: sorted keys, fixed separators."""
    if pretty:
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False, default=_default)
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=_default)
