import logging

import click

from aclab.commands.base import announce, finish, load_run_config, model_options, output_file
from common.utils.output import write_json
from effective.closed_forms import shift_closed_forms
from effective.locate import locate_resonances_numeric, locate_resonances_resolvent
from utils.enums import ModelKind

logger = logging.getLogger(__name__)


@click.command("find-resonance")
@model_options
@click.option("--order", type=int, help="Also locate both resonances with the series truncated at this order.")
def find_resonance(**params):
    """xi_0, xi_S and xi_D by closed forms and by numerics, side by side."""
    started = announce("find-resonance")
    config = load_run_config(params)
    spec = config.model
    reports = {}
    if spec.kind is ModelKind.SS_GATE:
        na, nb = spec.transition
        reports["closed_form"] = shift_closed_forms(na, nb - na, spec.eta, spec.omega)
    else:
        logger.info(f"No closed forms for {spec.kind.value}; numeric methods only")
    reports["numeric"] = locate_resonances_numeric(spec, config.window, config.points, pulse=config.resolved_pulse)
    if config.order is not None:
        reports["series"] = locate_resonances_resolvent(spec, config.window, order=config.order)
    for name, report in reports.items():
        click.echo(
            f"{name:>12}: xi_S={report.xi_S:.10g}  xi_D={report.xi_D:.10g}  "
            f"Delta_S={report.Delta_S:.6g}  Delta_D={report.Delta_D:.6g}"
        )
    numeric = reports["numeric"]
    if numeric.dynamical_shift_negligible:
        click.echo(click.style("Dynamical shift negligible (|Delta_D| <= 0.1 |Delta_S|)", fg="green"))
    summary = {"model": spec, **reports}
    if "closed_form" in reports and reports["closed_form"].Delta_D:
        summary["delta_d_ratio"] = numeric.Delta_D / reports["closed_form"].Delta_D
    path = write_json(summary, output_file(config, "find_resonance", "_report.json"))
    finish("find-resonance", started, [path])
