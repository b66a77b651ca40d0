"""JSON manifold configuration loader."""

import json
import logging
from pathlib import Path
from typing import Any, Union

from pydantic import ValidationError

from warpscatter.core.errors import SpecError

from .constants import ERROR_CONFIG_INVALID, ERROR_CONFIG_READ
from .models import ManifoldSpec

logger = logging.getLogger(__name__)


def _profile_block(raw: dict[str, Any]) -> dict[str, Any]:
    profile = dict(raw)
    params = profile.pop("params", None) or {}
    table = profile.pop("table", None)
    profile.update(params)
    if table is not None:
        profile["table_r"] = tuple(float(row[0]) for row in table)
        profile["table_rho"] = tuple(float(row[1]) for row in table)
    return profile


def _cross_section_block(raw: dict[str, Any]) -> dict[str, Any]:
    cs = dict(raw)
    if "vol" in cs:
        cs["custom_vol"] = cs.pop("vol")
    if "table" in cs:
        cs["eigenvalues"] = tuple(cs.pop("table"))
    return cs


def spec_from_dict(data: dict[str, Any]) -> ManifoldSpec:
    """
    Build a ManifoldSpec from the configuration mapping.

    Recognised keys: `dimension`, `topology`, `profile` ({kind, params} or
    {kind: "tabulated", table: [[r, rho], ...]}), `ends` (array of
    {classification, constants}), `cross_section`.

    Raises:
        SpecError: If the mapping does not describe a valid manifold.
    """
    try:
        ends = []
        for j, end in enumerate(data.get("ends") or ()):
            end = dict(end)
            end.setdefault("end_id", j)
            if "profile" in end and end["profile"] is not None:
                end["profile"] = _profile_block(end["profile"])
            ends.append(end)
        payload: dict[str, Any] = {
            "n": data.get("dimension", data.get("n")),
            "topology": data.get("topology", "half_line"),
            "profile": _profile_block(data["profile"]),
            "ends": tuple(ends),
        }
        if data.get("cross_section") is not None:
            payload["cross_section"] = _cross_section_block(data["cross_section"])
        return ManifoldSpec.model_validate(payload)
    except (KeyError, TypeError, ValidationError) as e:
        raise SpecError(ERROR_CONFIG_INVALID.format(error=e)) from e


def load_manifold(path: Union[str, Path]) -> ManifoldSpec:
    """Read and validate a JSON manifold configuration file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise SpecError(ERROR_CONFIG_READ.format(path=path, error=e)) from e
    spec = spec_from_dict(data)
    logger.info("loaded %s manifold, n=%d, profile=%s", spec.topology, spec.n, spec.profile.kind)
    return spec
