import logging

import click
import numpy as np
import pandas as pd

from aclab.commands.base import announce, finish, load_run_config, model_options, output_file
from common.utils.output import write_csv, write_json
from dynamics.gates import gate_error_curve
from utils.enums import Tuning

logger = logging.getLogger(__name__)


def summarize_curves(curves):
    """Fit lines, slope ratios and the largest pointwise structural/dynamical gap."""
    summary = {"fits": {tuning.value: curve.fit for tuning, curve in curves.items()}}
    bare, dynamical, structural = (curves.get(t) for t in (Tuning.BARE, Tuning.DYNAMICAL, Tuning.STRUCTURAL))
    if bare and dynamical and dynamical.fit.slope:
        summary["slope_ratio_bare_dynamical"] = bare.fit.slope / dynamical.fit.slope
    if bare and structural and bare.fit.slope:
        summary["slope_ratio_structural_bare"] = structural.fit.slope / bare.fit.slope
    if structural and dynamical:
        summary["max_gap_structural_dynamical"] = float(np.max(np.abs(structural.errors - dynamical.errors)))
    return summary


@click.command("gate-error")
@model_options
@click.option("--tuning", "tunings", multiple=True, type=click.Choice([t.value for t in Tuning]),
              help="Tuning to sweep; repeat for several (default: all).")
@click.option("--grid", type=float, multiple=True, help="Sweep values of eta (SS) or Omega_R (CZ); repeat.")
@click.option("--closed-form", is_flag=True, help="Tune SS dynamically by the closed form.")
def gate_error(**params):
    """Gate error against perturbation strength for each tuning, with linear fits."""
    started = announce("gate-error")
    config = load_run_config(params)
    curves = {}
    for tuning in config.tunings:
        curves[tuning] = gate_error_curve(
            config.model, tuning, grid=config.grid, pulse=config.resolved_pulse, closed_form=config.closed_form
        )
        fit = curves[tuning].fit
        click.echo(f"{tuning.value:>10}: slope {fit.slope:.4g}, intercept {fit.intercept:.3g}, R^2 {fit.r_squared:.4f}")
    summary = summarize_curves(curves)
    if "slope_ratio_bare_dynamical" in summary:
        click.echo(click.style(f"bare/dynamical slope ratio {summary['slope_ratio_bare_dynamical']:.3g}", fg="green"))
    frame = pd.concat([curve.to_frame() for curve in curves.values()], ignore_index=True)
    paths = [
        write_csv(frame, output_file(config, "gate_error", "_curves.csv")),
        write_json({"model": config.model, **summary}, output_file(config, "gate_error", "_fit.json")),
    ]
    finish("gate-error", started, paths)
