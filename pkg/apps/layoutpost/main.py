"""
Layout detection post-processing toolkit - command-line entry point
Text-cell refinement, box fusion, mAP evaluation, ensemble tuning, synthetic layouts
"""
import click

from config import configure_logging, settings
from commands import evaluate_command, fuse_command, refine_command, synth_command, tune_command


@click.group()
@click.option("--log-level", default=settings.LOG_LEVEL, show_default=True,
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
def cli(log_level):
    """Post-process layout detections: refine, fuse, evaluate, tune, synth"""
    configure_logging(log_level)


cli.add_command(refine_command)
cli.add_command(fuse_command)
cli.add_command(evaluate_command)
cli.add_command(tune_command)
cli.add_command(synth_command)


def main():
    """Run the command-line interface"""
    cli()


if __name__ == "__main__":
    main()
