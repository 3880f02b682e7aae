import click

from aclab.commands.base import announce, finish, load_run_config, model_options, output_file
from common.utils.output import write_csv, write_json
from dynamics.resonance import find_dynamical_resonance, scan_flip_probability


@click.command("flip-prob")
@model_options
def flip_prob(**params):
    """Flip probability |a> -> |b> after the pulse, scanned over xi."""
    started = announce("flip-prob")
    config = load_run_config(params)
    pulse = config.resolved_pulse
    scan = scan_flip_probability(config.model, config.window, pulse, config.points)
    resonance = find_dynamical_resonance(config.model, config.window, pulse, config.points)
    click.echo(click.style(f"P_max = {resonance.p_max:.10g} at xi_D = {resonance.xi_D:.10g}", fg="green"))
    paths = [
        write_csv(scan.to_frame(), output_file(config, "flip_prob", "_scan.csv")),
        write_json(
            {"model": config.model, "pulse": pulse, "resonance": resonance, "max_leakage": scan.max_leakage},
            output_file(config, "flip_prob", "_summary.json"),
        ),
    ]
    finish("flip-prob", started, paths)
