"""State files, star-record files and trajectory files.

Every float is written with 17 significant digits so a parse/serialize
cycle reproduces the same bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from typing import Any, Sequence

import numpy as np

from .dynamics import TrajectoryRecord
from .majorana import Star, StarSet, ZeroStateError
from .mixedspin import FullRepresentation, MixedSpinState

FILE_NORM_ATOL = 1e-8
CSV_HEADER = ("t", "varphi", "delta", "set", "star_index", "theta", "phi")


class FileFormatError(ValueError):
    """Input file does not parse or does not match its schema."""


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    text = format(x, ".17g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def dumps(obj: Any, indent: int = 2) -> str:
    return _dump(obj, 0, indent) + "\n"


def _dump(obj: Any, level: int, indent: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(v, level + 1, indent)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_dump(v, level, indent) for v in obj) + "]"
        items = [pad + _dump(v, level + 1, indent) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"malformed JSON: {exc}") from exc


def _complex_list(raw: Any, name: str, size: int) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != size:
        raise FileFormatError(f"{name} must be a list of {size} [re, im] pairs")
    out = np.empty(size, dtype=complex)
    for k, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise FileFormatError(f"{name}[{k}] must be an [re, im] pair of numbers")
        out[k] = complex(pair[0], pair[1])
    if not np.all(np.isfinite(out)):
        raise FileFormatError(f"{name} contains non-finite values")
    return out


def parse_state(text: str) -> tuple[MixedSpinState, dict]:
    """Parse a state file; returns the normalized state and its metadata.

    Zero states raise :class:`ZeroStateError`; norms off by more than
    ``FILE_NORM_ATOL`` are renormalized with a warning.
    """
    data = _load_json(text)
    if not isinstance(data, dict):
        raise FileFormatError("state file must be a JSON object")
    two_s = data.get("two_s")
    if not isinstance(two_s, int) or isinstance(two_s, bool) or two_s < 1:
        raise FileFormatError("two_s must be an integer >= 1")
    d_down = _complex_list(data.get("d_down"), "d_down", two_s + 1)
    d_up = _complex_list(data.get("d_up"), "d_up", two_s + 1)
    metadata = data.get("metadata", {})
    if not isinstance(metadata, dict):
        raise FileFormatError("metadata must be an object")
    state = MixedSpinState(two_s, d_down, d_up)
    norm = state.norm
    if norm == 0.0:
        raise ZeroStateError("zero state")
    if abs(norm - 1) > FILE_NORM_ATOL:
        warnings.warn(f"state norm is {norm:.12g}; renormalizing", stacklevel=2)
    return state.normalized(), metadata


def state_to_dict(state: MixedSpinState, metadata: dict | None = None) -> dict:
    out: dict[str, Any] = {
        "two_s": state.twice_s,
        "d_down": [[z.real, z.imag] for z in state.d_down],
        "d_up": [[z.real, z.imag] for z in state.d_up],
    }
    if metadata:
        out["metadata"] = dict(metadata)
    return out


def _meta(two_s: int, metadata: dict | None) -> dict:
    metadata = metadata or {}
    return {
        "two_s": two_s,
        "t": metadata.get("t"),
        "varphi": metadata.get("varphi"),
        "delta": metadata.get("delta"),
    }


def star_records(rep: FullRepresentation) -> list[dict]:
    rows = []
    for label, stars in (("upper", rep.upper_stars), ("lower", rep.lower_stars)):
        if stars is None:
            continue
        for star in stars:
            rows.append(_star_row(label, star))
    rows.append(_star_row("pseudo", rep.pseudo_star))
    return rows


def _star_row(label: str, star: Star) -> dict:
    return {"set": label, "theta": star.theta, "phi": star.phi, "multiplicity": star.multiplicity}


def star_file(rep: FullRepresentation, metadata: dict | None = None) -> dict:
    return {"metadata": _meta(rep.twice_s, metadata), "stars": star_records(rep)}


def parse_star_file(text: str) -> dict:
    data = _load_json(text)
    if not isinstance(data, dict) or not isinstance(data.get("stars"), list):
        raise FileFormatError("star file needs a 'stars' list")
    meta = data.get("metadata")
    if not isinstance(meta, dict) or not isinstance(meta.get("two_s"), int):
        raise FileFormatError("star file needs metadata with integer two_s")
    rows = []
    for k, row in enumerate(data["stars"]):
        try:
            label = row["set"]
            theta = float(row["theta"])
            phi = float(row["phi"])
            mult = int(row["multiplicity"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FileFormatError(f"stars[{k}] is malformed: {exc}") from exc
        if label not in ("upper", "lower", "pseudo"):
            raise FileFormatError(f"stars[{k}] has unknown set {label!r}")
        rows.append({"set": label, "theta": theta, "phi": phi, "multiplicity": mult})
    return {"metadata": _meta(meta["two_s"], meta), "stars": rows}


def star_sets_from_file(data: dict) -> dict[str, StarSet]:
    """Group star-file rows back into star sets keyed by set label."""
    grouped: dict[str, list[Star]] = {}
    for row in data["stars"]:
        grouped.setdefault(row["set"], []).append(Star(row["theta"], row["phi"], row["multiplicity"]))
    return {
        label: StarSet(tuple(stars), sum(s.multiplicity for s in stars)) for label, stars in grouped.items()
    }


def record_row(rec: TrajectoryRecord) -> dict:
    return {
        "t": rec.t,
        "varphi": rec.varphi,
        "delta": rec.delta,
        "set": rec.set_label,
        "star_index": rec.star_index,
        "theta": rec.theta,
        "phi": rec.phi,
    }


def trajectory_json(records: Sequence[TrajectoryRecord], metadata: dict) -> str:
    return dumps({"metadata": metadata, "records": [record_row(r) for r in records]})


def trajectory_csv(records: Sequence[TrajectoryRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(
            [
                format_float(r.t),
                format_float(r.varphi),
                format_float(r.delta),
                r.set_label,
                r.star_index,
                format_float(r.theta),
                format_float(r.phi),
            ]
        )
    return buf.getvalue()


def parse_trajectory(text: str) -> list[TrajectoryRecord]:
    """Read trajectory records from either the JSON or the CSV sweep format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        data = _load_json(text)
        rows = data.get("records") if isinstance(data, dict) else None
        if not isinstance(rows, list):
            raise FileFormatError("trajectory JSON needs a 'records' list")
    else:
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise FileFormatError(f"CSV header must be {','.join(CSV_HEADER)}")
        rows = list(reader)
    out = []
    for k, row in enumerate(rows):
        try:
            out.append(
                TrajectoryRecord(
                    float(row["t"]),
                    float(row["varphi"]),
                    float(row["delta"]),
                    str(row["set"]),
                    int(row["star_index"]),
                    float(row["theta"]),
                    float(row["phi"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise FileFormatError(f"record {k} is malformed: {exc}") from exc
    return out
