"""Runners for the stationary pipeline: thresholds, Jost solutions, S-matrix and resolvent."""

import logging

import numpy as np

from warpscatter.core.config import get_config
from warpscatter.cusp import cusp_solve
from warpscatter.manifold import classify_ends, essential_spectrum_bottom, log_profile
from warpscatter.modes import eigen_list
from warpscatter.radial import ModeProblem, jost_solve, weighted_wronskian, wkb_data
from warpscatter.scattering import (
    end_kind,
    mode_bases,
    parseval_check,
    resolvent_apply,
    s_matrix_payload,
    s_matrix_sweep,
)
from warpscatter.wave import mode_eigenvalue

from .inputs import load_spec, radial_samples, random_source
from .models import CommandResult, RunConfig

logger = logging.getLogger(__name__)


def _spread(w: np.ndarray) -> float:
    scale = np.max(np.abs(w))
    return float(np.max(np.abs(w - w[0])) / scale) if scale > 0 else 0.0


def _key_name(key: tuple[int, int, int]) -> str:
    end, index, slot = key
    return f"e{end}l{index}s{slot}"


def run_spectrum(config: RunConfig) -> CommandResult:
    """E0 per end, the bottom of the essential spectrum and the channel list up to Λ_max."""
    spec = load_spec(config)
    fits = classify_ends(spec)
    bottom = essential_spectrum_bottom(spec)
    modes = eigen_list(spec.cross_section, config.lambda_max)
    distinct = modes.distinct()
    payload = {
        "dimension": spec.n,
        "topology": spec.topology,
        "ends": [fit.model_dump() for fit in fits],
        "essential_spectrum_bottom": bottom,
        "lambda_max": config.lambda_max,
        "channels": [
            {"l": c.index, "slot": c.slot, "eigenvalue": c.eigenvalue, "label": c.label} for c in modes.channels
        ],
    }
    summary = [f"end {fit.end_id}: {fit.classification}, E0 = {fit.E0:.6g}" for fit in fits]
    summary.append(f"essential spectrum bottom: {bottom:.6g}")
    series = {
        "modes": {
            "l": np.array([d[0] for d in distinct]),
            "eigenvalue": np.array([d[1] for d in distinct]),
            "multiplicity": np.array([d[2] for d in distinct]),
        }
    }
    return CommandResult(command="spectrum", payload=payload, series=series, summary=tuple(summary))


def run_jost(config: RunConfig) -> CommandResult:
    """
    Jost (or cusp) solutions of mode ℓ on one end at every λ.

    Open channels report the normalization error |Ψ ρ^{(n-1)/2} e^{-iφ} - 1|
    against the phase integral; every channel reports the spread of the
    weighted Wronskian of its solution pair.
    """
    spec = load_spec(config)
    solver = get_config()
    r_max = config.r_max or solver.r_max
    fit = classify_ends(spec, solver)[config.end]
    profile = spec.end_profile(config.end)
    E = mode_eigenvalue(spec.cross_section, config.ell)

    entries, series = [], {}
    for lam in config.lambdas:
        kind = end_kind(fit, E, lam)
        entry = {"lambda": lam, "kind": kind, "E0": fit.E0, "eigenvalue": E}
        if kind == "cusp":
            pair = cusp_solve(profile, E, lam, spec.n, r_max=r_max, config=solver)
            entry.update(weighted_wronskian=pair.weighted_wronskian, wronskian_spread=pair.wronskian_spread)
            series[f"cusp_lambda{lam:.6g}"] = {
                "r": pair.growing.r,
                "log_abs_growing": pair.growing.log_abs,
                "log_abs_decaying": pair.decaying.log_abs,
            }
        else:
            mp = ModeProblem(n=spec.n, profile=profile, E=E, lam=lam)
            plus = jost_solve(mp, "+", r_max=r_max, config=solver)
            minus = jost_solve(mp, "-", r_max=r_max, config=solver)
            w = weighted_wronskian(mp, plus.solution, minus.solution)
            entry.update(weighted_wronskian=complex(w[0]), wronskian_spread=_spread(w), k=mp.k)
            if plus.open_channel:
                wkb = wkb_data(mp, r_far=r_max, config=solver)
                r = plus.r[plus.r >= wkb.grid[0]]
                half_log_g = 0.5 * (spec.n - 1) * log_profile(profile, r).log_rho
                values = plus.solution.values[plus.r >= wkb.grid[0]]
                error = np.abs(values * np.exp(half_log_g - 1j * wkb.phi(r)) - 1.0)
                entry["normalization_error"] = float(error[-1])
                series[f"normalization_lambda{lam:.6g}"] = {"r": r, "error": error}
        logger.info("jost λ=%.6g end %d: %s, Wronskian spread %.2e", lam, config.end, kind, entry["wronskian_spread"])
        entries.append(entry)

    worst = max(e["wronskian_spread"] for e in entries)
    return CommandResult(
        command="jost",
        payload={"end": config.end, "l": config.ell, "r_max": r_max, "solutions": entries},
        series=series,
        summary=(f"largest weighted Wronskian spread {worst:.3e}",),
        passed=worst <= config.tol,
    )


def run_smatrix(config: RunConfig) -> CommandResult:
    """S(λ) over the λ grid with unitarity residuals, scattering phase and |S_jk(λ)| curves."""
    spec = load_spec(config)
    sweep = s_matrix_sweep(spec, config.lambdas, config.lambda_max, generalized=config.generalized)
    unitarity = sweep.unitarity()
    worst = float(np.max(unitarity))

    series = {
        "unitarity": {"lambda": sweep.lam, "residual": unitarity},
        "phase": {"lambda": sweep.lam, "phase": sweep.phases()},
    }
    keys = []
    for S in sweep.matrices:
        for c in S.space.channels:
            if c.kind == "physical" and c.key not in keys:
                keys.append(c.key)
    for out in keys:
        for into in keys:
            values = sweep.curve(out, into)
            series[f"s_abs_{_key_name(out)}_{_key_name(into)}"] = {"lambda": sweep.lam, "abs": np.abs(values)}

    return CommandResult(
        command="smatrix",
        payload={"matrices": [s_matrix_payload(S) for S in sweep.matrices], "max_unitarity_residual": worst},
        series=series,
        summary=(f"unitarity residual {worst:.3e} (tolerance {config.tol:g})",),
        passed=worst <= config.tol,
    )


def run_resolvent(config: RunConfig) -> CommandResult:
    """
    R(λ + i0) f for a seeded random source, and the Parseval identity against a second one.

    The Parseval residual is relative to the larger of its two sides.
    """
    spec = load_spec(config)
    solver = get_config()
    r = radial_samples(spec, config.r_max)
    spectrum = eigen_list(spec.cross_section, config.lambda_max)
    rows = len(spectrum.channels)
    rng = np.random.default_rng(config.seed)
    f = random_source(rng, r, rows)
    g = random_source(rng, r, rows)

    entries, relative = [], []
    series: dict[str, dict[str, np.ndarray]] = {}
    for i, lam in enumerate(config.lambdas):
        bases = mode_bases(spec, lam, spectrum, r, config=solver)
        field = resolvent_apply(spec, lam, "+", f, r, config.lambda_max, bases=bases, config=solver)
        report = parseval_check(spec, lam, f, g, r, config.lambda_max, config=solver)
        scale = max(abs(report.fourier_side), abs(report.resolvent_side))
        relative.append(report.difference / scale if scale > 0 else 0.0)
        entries.append(
            {
                "lambda": lam,
                "wronskian_spread": field.wronskian_spread,
                "far_field": field.far_field,
                "parseval": report.model_dump(),
                "parseval_relative": relative[-1],
            }
        )
        if i == 0:
            for row, (index, slot) in enumerate(field.channels):
                u = field.values[row]
                series[f"field_l{index}s{slot}"] = {"r": r, "re_u": u.real, "im_u": u.imag}
    series["parseval"] = {"lambda": np.asarray(config.lambdas), "relative": np.asarray(relative)}

    worst = max(relative)
    return CommandResult(
        command="resolvent",
        payload={"seed": config.seed, "channels": rows, "samples": r.size, "results": entries},
        series=series,
        summary=(f"Parseval relative residual {worst:.3e} (tolerance {config.tol:g})",),
        passed=worst <= config.tol,
    )
