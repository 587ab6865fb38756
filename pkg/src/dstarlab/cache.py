"""Optional on-disk cache for solved series systems.

JSON files, one per solved object, keyed by a schema version plus everything
that determines the numbers: kind, pattern, truncation order, coefficient-ring
signature, and formula variant.  Rationals are stored as "num/den" strings so
files are exact and diff-able.  The cache directory comes from an explicit
argument or the DSTARLAB_CACHE environment variable; with neither, all
operations are no-ops.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

SCHEMA = 1

# process-wide tally so batch drivers can log cache effectiveness
stats = {"hits": 0, "misses": 0}


def cache_dir(explicit: str | os.PathLike | None = None) -> Path | None:
    if explicit is not None:
        return Path(explicit)
    env = os.environ.get("DSTARLAB_CACHE")
    if env:
        return Path(env)
    return None


def cache_key(kind: str, order: int, ring_sig: str, variant: str = "std", pattern=None) -> str:
    pat = "" if pattern is None else f"_{pattern[0]}x{pattern[1]}"
    return f"{kind}{pat}_N{order}_{ring_sig}_{variant}_v{SCHEMA}"


def store(directory: Path | None, key: str, payload: dict) -> bool:
    if directory is None:
        return False
    directory.mkdir(parents=True, exist_ok=True)
    tmp = directory / (key + ".tmp")
    tmp.write_text(json.dumps({"schema": SCHEMA, "key": key, **payload}, sort_keys=True))
    tmp.replace(directory / (key + ".json"))
    return True


def fetch(directory: Path | None, key: str) -> dict | None:
    if directory is None:
        return None
    path = directory / (key + ".json")
    if not path.is_file():
        stats["misses"] += 1
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        stats["misses"] += 1
        return None
    if data.get("schema") != SCHEMA or data.get("key") != key:
        stats["misses"] += 1
        return None
    stats["hits"] += 1
    return data


def dump_series(f) -> dict:
    from .rings import ring_signature

    return {
        "ring": ring_signature(f.ring),
        "order": f.order,
        "coeffs": [f.ring.dump(a) for a in f.c],
    }


def load_series(ring, blob: dict):
    from .pseries import Series
    from .rings import ring_signature

    if blob["ring"] != ring_signature(ring):
        raise ValueError("cached series was built over a different ring")
    return Series(ring, [ring.load(v) for v in blob["coeffs"]], blob["order"])


__all__ = [
    "SCHEMA",
    "stats",
    "cache_dir",
    "cache_key",
    "store",
    "fetch",
    "dump_series",
    "load_series",
]
