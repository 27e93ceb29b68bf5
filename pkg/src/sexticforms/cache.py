"""Versioned on-disk cache for Fourier expansions and the generator table.

One file per named form: a header (name, completeness bound, format version,
the normalization scalar when one applies), then exact coefficient lines

    p4 q4 u2 re im

sorted by (total degree, key, u2).  Parsing then re-serializing a cache file
is byte-identical; a version mismatch is treated as absent (recompute), a
malformed line is an error carrying its line number.
"""

from __future__ import annotations

import os
from pathlib import Path

from .exact import format_rational
from .series import FourierSeries

FORMAT_VERSION = 1

ENV_VAR = "SEXTICFORMS_CACHE"


class CacheError(ValueError):
    pass


def cache_dir(override=None):
    if override:
        return Path(override)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "sexticforms"


def _form_path(directory, name, n4):
    return Path(directory) / f"{name}.n4_{n4}.v{FORMAT_VERSION}.txt"


def serialize_series(name, series, extra=None):
    lines = [f"# sexticforms cache v{FORMAT_VERSION}",
             f"form {name}",
             f"n4 {series.trunc}"]
    for key, value in (extra or {}).items():
        lines.append(f"{key} {value}")
    lines.append("begin")
    lines.extend(series.dump_lines())
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_series(text):
    """(name, FourierSeries, extra) from cache text; CacheError on damage."""
    lines = text.splitlines()
    if not lines or lines[0] != f"# sexticforms cache v{FORMAT_VERSION}":
        raise CacheError("unsupported cache version or missing header")
    name = None
    n4 = None
    extra = {}
    i = 1
    while i < len(lines) and lines[i] != "begin":
        parts = lines[i].split(None, 1)
        if len(parts) != 2:
            raise CacheError(f"malformed header line {i + 1}: {lines[i]!r}")
        key, value = parts
        if key == "form":
            name = value
        elif key == "n4":
            n4 = int(value)
        else:
            extra[key] = value
        i += 1
    if name is None or n4 is None or i >= len(lines):
        raise CacheError("incomplete cache header")
    body = []
    for j in range(i + 1, len(lines)):
        if lines[j] == "end":
            break
        body.append(lines[j])
    else:
        raise CacheError("missing end marker")
    try:
        series = FourierSeries.parse_lines(body, n4)
    except ValueError as exc:
        # shift reported line numbers to absolute position in the file
        raise CacheError(f"{exc} (after header of {i + 1} lines)") from exc
    return name, series, extra


def store_series(name, series, directory=None, extra=None):
    d = cache_dir(directory)
    d.mkdir(parents=True, exist_ok=True)
    path = _form_path(d, name, series.trunc)
    path.write_text(serialize_series(name, series, extra))
    return path


def load_series(name, n4, directory=None):
    """Cached series with completeness >= n4, or None.

    Exact match on the completeness bound is preferred; any cached file for
    the name with a larger bound is accepted.
    """
    d = cache_dir(directory)
    if not d.is_dir():
        return None
    best = None
    for path in d.glob(f"{name}.n4_*.v{FORMAT_VERSION}.txt"):
        try:
            stored_n4 = int(path.name.split(".n4_")[1].split(".v")[0])
        except (IndexError, ValueError):
            continue
        if stored_n4 >= n4 and (best is None or stored_n4 < best[0]):
            best = (stored_n4, path)
    if best is None:
        return None
    name2, series, extra = parse_series(best[1].read_text())
    if name2 != name:
        raise CacheError(f"cache file {best[1]} holds {name2!r}, not {name!r}")
    return series, extra


def roundtrip_ok(name, n4, directory=None):
    """Parse-then-serialize is byte-identical for the stored file."""
    d = cache_dir(directory)
    path = _form_path(d, name, n4)
    if not path.is_file():
        return False
    text = path.read_text()
    name2, series, extra = parse_series(text)
    return serialize_series(name2, series, extra) == text


__all__ = [
    "FORMAT_VERSION", "ENV_VAR", "CacheError", "cache_dir",
    "serialize_series", "parse_series", "store_series", "load_series",
    "roundtrip_ok",
]
