import logging
import logging.config

import click

from aclab import settings
from aclab.commands.find_resonance import find_resonance
from aclab.commands.flip_prob import flip_prob
from aclab.commands.gate_error import gate_error
from aclab.commands.scan_spectrum import scan_spectrum
from aclab.commands.speed_bound import speed_bound
from common.exceptions import ConfigError, NumericalError

logger = logging.getLogger(__name__)

EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_ERROR = 3


class LabGroup(click.Group):
    """Maps library errors onto exit codes: 2 for config, 3 for numerical failures."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ConfigError as exc:
            logger.error(f"Configuration error: {exc}")
            click.echo(click.style(f"Configuration error: {exc}", fg="red"), err=True)
            ctx.exit(EXIT_CONFIG_ERROR)
        except NumericalError as exc:
            logger.error(f"Numerical failure: {exc}")
            click.echo(click.style(f"Numerical failure: {exc}", fg="red"), err=True)
            ctx.exit(EXIT_NUMERICAL_ERROR)


@click.group(cls=LabGroup)
@click.version_option("1.0.0", prog_name=settings.APPLICATION_NAME)
def main():
    """Avoided-crossing resonance lab: spectra, shifts, flip probabilities and gate errors."""
    logging.config.dictConfig(settings.LOGGING)


main.add_command(scan_spectrum)
main.add_command(find_resonance)
main.add_command(flip_prob)
main.add_command(gate_error)
main.add_command(speed_bound)
