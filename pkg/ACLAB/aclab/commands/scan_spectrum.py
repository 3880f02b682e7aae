import logging

import click

from aclab.commands.base import announce, finish, load_run_config, model_options, output_file
from common.utils.output import write_csv, write_json
from effective.locate import find_dynamical_root
from effective.models import ShiftReport
from hamiltonians.builders import model_family
from spectra.scans import character_profile, find_structural_resonance, scan_levels
from utils.enums import ShiftMethod

logger = logging.getLogger(__name__)


@click.command("scan-spectrum")
@model_options
def scan_spectrum(**params):
    """Dressed levels across the scan window, with the structural resonance."""
    started = announce("scan-spectrum")
    config = load_run_config(params)
    family = model_family(config.model)
    window = config.window or family.window
    track = scan_levels(family, window, config.points)
    structural = find_structural_resonance(track)
    profile = character_profile(track)
    report = ShiftReport(
        xi_0=family.xi_0,
        xi_S=structural.xi_S,
        xi_D=find_dynamical_root(family, window),
        method=ShiftMethod.NUMERIC_SCAN,
        tolerance=structural.tolerance,
        xi_name=track.xi_name,
        E_0=family.E_0,
        min_gap=structural.min_gap,
        xi_char=profile.xi_char,
    )
    click.echo(click.style(
        f"xi_S = {report.xi_S:.10g}, minimal gap {report.min_gap:.6g}, Delta_S = {report.Delta_S:.6g}",
        fg="green",
    ))
    paths = [
        write_csv(track.to_frame(), output_file(config, "scan_spectrum", "_levels.csv")),
        write_json(
            {"model": config.model, "track": track, "structural": structural, "report": report},
            output_file(config, "scan_spectrum", "_summary.json"),
        ),
    ]
    finish("scan-spectrum", started, paths)
