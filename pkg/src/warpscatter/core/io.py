"""Result serialization: JSON formatting, CSV dumps with provenance headers."""

import csv
import hashlib
import json
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np

from warpscatter import __version__


def _to_jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return [_to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Mapping):
        return {str(k): _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    if hasattr(value, "model_dump"):
        return _to_jsonable(value.model_dump())
    return value


def format_result(data: Any) -> str:
    """Format result as JSON string; complex numbers become [re, im] pairs."""
    return json.dumps(_to_jsonable(data), indent=2, default=str)


def config_hash(*parts: Any) -> str:
    """sha256 over the canonical JSON of the given parts."""
    canonical = json.dumps(_to_jsonable(list(parts)), sort_keys=True, default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def provenance(cfg_hash: str, **extra: Any) -> dict[str, Any]:
    return {"tool": "warpscatter", "version": __version__, "config_hash": cfg_hash, **extra}


def write_json(path: Path, data: Any, prov: Optional[Mapping[str, Any]] = None) -> Path:
    payload = dict(data) if isinstance(data, Mapping) else {"result": data}
    if prov is not None:
        payload = {"provenance": dict(prov), **payload}
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_result(payload) + "\n", encoding="utf-8")
    return path


def write_csv(
    path: Path,
    columns: Mapping[str, Iterable[Any]],
    header: Optional[Mapping[str, Any]] = None,
) -> Path:
    """
    Write equal-length columns to CSV.

    `header` entries become `# key: value` comment lines ahead of the column
    names, so any CSV reader with comment support can load the file.
    """
    names: Sequence[str] = list(columns)
    data = [np.asarray(list(columns[name])) for name in names]
    lengths = {len(col) for col in data}
    if len(lengths) > 1:
        raise ValueError(f"CSV columns differ in length: {sorted(lengths)}")
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        for key, value in (header or {}).items():
            fh.write(f"# {key}: {_to_jsonable(value)}\n")
        writer = csv.writer(fh)
        writer.writerow(names)
        for row in zip(*data):
            writer.writerow([repr(float(v)) for v in row])
    return path


def solution_columns(r, u, du) -> dict[str, np.ndarray]:
    """Standard radial dump columns: r, Re u, Im u, Re u', Im u'."""
    u = np.asarray(u, dtype=complex)
    du = np.asarray(du, dtype=complex)
    return {
        "r": np.asarray(r, dtype=float),
        "re_u": u.real,
        "im_u": u.imag,
        "re_du": du.real,
        "im_du": du.imag,
    }
