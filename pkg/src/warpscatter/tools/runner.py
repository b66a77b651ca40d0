"""Dispatch of one RunConfig to its runner, with serialized output."""

import logging
import os
from pathlib import Path
from typing import Callable, Optional

from warpscatter.core.errors import EXIT_OK, SpecError, WarpScatterError
from warpscatter.core.io import config_hash, provenance, write_json

from .artifacts import emit_plot_data, write_manifest
from .constants import ERROR_OUT_NOT_WRITABLE, MSG_DONE
from .evolution import run_blago_check, run_wave
from .forward import run_jost, run_resolvent, run_smatrix, run_spectrum
from .models import CommandResult, RunConfig, RunOutcome
from .normal_form import run_normalize_metric
from .recovery import run_invert_distance, run_invert_volume, run_oracle_geodesic

logger = logging.getLogger(__name__)

Runner = Callable[[RunConfig], CommandResult]

RUNNERS: dict[str, Runner] = {
    "spectrum": run_spectrum,
    "jost": run_jost,
    "smatrix": run_smatrix,
    "resolvent": run_resolvent,
    "normalize-metric": run_normalize_metric,
    "wave": run_wave,
    "blago-check": run_blago_check,
    "invert-volume": run_invert_volume,
    "invert-distance": run_invert_distance,
    "oracle-geodesic": run_oracle_geodesic,
}


def prepare_output(out: Path) -> Path:
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise SpecError(ERROR_OUT_NOT_WRITABLE.format(path=out, error=e)) from e
    if not os.access(out, os.W_OK):
        raise SpecError(ERROR_OUT_NOT_WRITABLE.format(path=out, error="permission denied"))
    return out


def _config_text(config: RunConfig) -> Optional[str]:
    if config.config is None or not config.config.is_file():
        return None
    return config.config.read_text(encoding="utf-8")


def run(config: RunConfig) -> RunOutcome:
    """
    Run one command and write its artifacts into the output directory.

    Artifacts are `<command>.json` (payload with provenance), one CSV per
    plot series and `manifest.json`. A WarpScatterError is caught, written as
    `<command>_error.json` and turned into the exit code of its family.
    """
    try:
        out = prepare_output(config.out)
    except SpecError as e:
        logger.error(e.message)
        return RunOutcome(exit_code=e.exit_code, error=e.to_dict())

    cfg_hash = config_hash(config.hashed(), _config_text(config))
    prov = provenance(cfg_hash, command=config.command)
    logger.info("%s: config hash %s", config.command, cfg_hash[:12])

    try:
        result = RUNNERS[config.command](config)
    except WarpScatterError as e:
        logger.error("%s failed: %s", config.command, e.message)
        error = write_json(out / f"{config.command}_error.json", e.to_dict(), prov)
        manifest = write_manifest(out, config.command, e.exit_code, [error], prov)
        return RunOutcome(exit_code=e.exit_code, artifacts=(error, manifest), error=e.to_dict())

    body = {
        "command": result.command,
        "passed": result.passed,
        "summary": list(result.summary),
        "result": result.payload,
    }
    artifacts = [write_json(out / f"{config.command}.json", body, prov)]
    artifacts += emit_plot_data(result, out, prov)
    manifest = write_manifest(out, config.command, EXIT_OK, artifacts, prov)
    logger.info(MSG_DONE.format(command=config.command, count=len(artifacts) + 1, out=out))
    return RunOutcome(exit_code=EXIT_OK, artifacts=(*artifacts, manifest), summary=result.summary)
