import functools
import logging

import arrow
import click

from aclab import settings
from aclab.serializer import RunConfigSerializer
from common.serializer import read_json_config
from common.utils.output import output_path

logger = logging.getLogger(__name__)

MODEL_FLAGS = ("kind", "eta", "rabi", "detuning", "n_fock", "transition", "omega", "xi", "coupling", "g")


def model_options(command):
    """Flags shared by every subcommand; each mirrors a RunConfig field."""
    options = [
        click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                     help="JSON run config; its values override flags."),
        click.option("--kind", type=click.Choice(["generic_two_level_oscillator", "ss_gate", "cz_gate"])),
        click.option("--eta", type=float, help="Lamb-Dicke parameter."),
        click.option("--rabi", type=float, help="Rabi frequency in units of omega_T."),
        click.option("--detuning", type=float, help="Laser detuning in units of omega_T."),
        click.option("--n-fock", type=int, help="Vibrational truncation."),
        click.option("--transition", type=int, nargs=2, default=None, help="Resonant pair NA NB."),
        click.option("--omega", type=float, help="Oscillator frequency (generic model)."),
        click.option("--xi", type=float, help="Two-level splitting (generic model)."),
        click.option("--coupling", type=click.Choice(["none", "jaynes_cummings", "rabi", "dispersive"])),
        click.option("--g", type=float, help="Coupling strength (generic model)."),
        click.option("--window", type=float, nargs=2, default=None, help="Scan window LOW HIGH."),
        click.option("--points", type=int, help="Grid points of the scan."),
        click.option("--pulse-rule", type=click.Choice(["effective_pi", "ld_pi", "sideband_pi", "explicit_time"])),
        click.option("--pulse-time", type=float, help="Duration for explicit_time pulses."),
        click.option("--output-dir", type=click.Path(file_okay=False), help="Directory for CSV and JSON output."),
        click.option("--prefix", help="File name prefix."),
    ]
    return functools.reduce(lambda wrapped, option: option(wrapped), reversed(options), command)


def load_run_config(params):
    """Merge flags and the optional --config file into a validated RunConfig."""
    params = dict(params)
    config_path = params.pop("config_path", None)
    model = {name: params.pop(name) for name in MODEL_FLAGS if name in params}
    data = {name: value for name, value in params.items() if value not in (None, ())}
    data["model"] = {name: value for name, value in model.items() if value not in (None, ())}
    text = None
    if config_path:
        from_file, text = read_json_config(config_path)
        if not isinstance(from_file, dict):
            from_file = {"model": from_file}
        file_model = from_file.get("model", {})
        data.update({key: value for key, value in from_file.items() if key != "model"})
        if isinstance(file_model, dict):
            data["model"] = {**data["model"], **file_model}
        else:
            data["model"] = file_model
    serializer = RunConfigSerializer(data=data, source_text=text)
    serializer.is_valid(raise_exception=True)
    return serializer.save()


def output_file(config, command, suffix):
    return output_path(f"{config.file_prefix(command)}{suffix}", config.output_dir or settings.OUTPUT_DIR)


def announce(command):
    now = arrow.utcnow()
    click.echo(click.style(f"[{now.isoformat()}] Starting {command}", fg="yellow"))
    logger.info(f"[{now.isoformat()}] Starting {command}")
    return now


def finish(command, started, paths):
    now = arrow.utcnow()
    for path in paths:
        click.echo(f"  - wrote {path}")
    elapsed = (now - started).total_seconds()
    click.echo(click.style(f"[{now.isoformat()}] {command} finished in {elapsed:.1f}s", fg="green"))
    logger.info(f"[{now.isoformat()}] {command} finished in {elapsed:.1f}s")
