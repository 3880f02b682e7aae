import click

from aclab.commands.base import announce, finish, load_run_config, model_options, output_file
from common.exceptions import ConfigError
from common.utils.output import write_json
from dynamics.gates import gate_error_curve, speed_bound as evaluate_speed_bound
from utils.enums import ModelKind, Tuning


@click.command("speed-bound")
@model_options
@click.option("--epsilon-t", type=float, help="Admissible gate error.")
@click.option("--grid", type=float, multiple=True, help="eta values of the error sweep; repeat.")
def speed_bound(**params):
    """Pi-pulse duration and the fastest rates the error threshold admits."""
    started = announce("speed-bound")
    config = load_run_config(params)
    spec = config.model
    if spec.kind is not ModelKind.SS_GATE:
        raise ConfigError("the speed bound is evaluated for the SS gate", key="kind")
    fits = {
        tuning: gate_error_curve(spec, tuning, grid=config.grid, pulse=config.resolved_pulse).fit
        for tuning in (Tuning.BARE, Tuning.DYNAMICAL)
    }
    bound = evaluate_speed_bound(config.epsilon_t, spec.eta, n=min(spec.transition), fits=fits, rabi=spec.rabi)
    click.echo(f"1/T_{bound.n} = {bound.rate:.6g} omega_T (T = {bound.pulse_time:.6g} / omega_T)")
    if bound.improvement is not None:
        click.echo(click.style(f"dynamical tuning admits a {bound.improvement:.3g}x faster gate", fg="green"))
    path = write_json({"model": spec, "fits": fits, "bound": bound}, output_file(config, "speed_bound", "_report.json"))
    finish("speed-bound", started, [path])
