"""Plot-ready column files and the run manifest."""

import hashlib
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence

from warpscatter.core.io import write_csv, write_json

from .constants import MANIFEST
from .models import CommandResult


def emit_plot_data(result: CommandResult, out: Path, header: Optional[Mapping[str, Any]] = None) -> list[Path]:
    """
    Write every series of a result as `<command>_<series>.csv`.

    Each file holds the series' columns in order (usually two or three),
    preceded by the `#` header lines, so any plotting tool can read it.
    """
    return [write_csv(out / f"{result.command}_{name}.csv", columns, header) for name, columns in result.series.items()]


def write_manifest(
    out: Path,
    command: str,
    exit_code: int,
    artifacts: Sequence[Path],
    prov: Mapping[str, Any],
) -> Path:
    """List the run's artifacts with their digests; the only file carrying a timestamp."""
    entries = [
        {"file": p.name, "bytes": p.stat().st_size, "sha256": hashlib.sha256(p.read_bytes()).hexdigest()}
        for p in artifacts
    ]
    payload = {
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "command": command,
        "exit_code": exit_code,
        "provenance": dict(prov),
        "artifacts": entries,
    }
    return write_json(out / MANIFEST, payload)
