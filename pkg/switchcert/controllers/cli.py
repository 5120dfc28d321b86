# FILE: switchcert/controllers/cli.py

"""
Command line surface. Every subcommand calls `experiment_entrypoint` and
maps the response to an exit code: 0 pass, 1 verdict failure or runtime
error, 2 configuration error.
"""

import json
import logging
from typing import Any, Dict

import click

from switchcert.config.logging_config import setup_logging
from switchcert.config.models import GeneralSettings
from switchcert.experiment_entrypoint import experiment_entrypoint
from switchcert.utils.error_handler import CONFIGURATION_ERROR

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIGURATION = 2


def exit_code(response: Dict[str, Any]) -> int:
    """Exit status for an operation response."""
    if not response["status"]:
        return EXIT_CONFIGURATION if response.get("error_type") == CONFIGURATION_ERROR else EXIT_FAIL
    result = response.get("result") or {}
    if isinstance(result, dict) and result.get("pass") is False:
        return EXIT_FAIL
    return EXIT_PASS


def _finish(ctx: click.Context, operation: str, **params: Any) -> None:
    response = experiment_entrypoint(operation, **params)
    code = exit_code(response)
    if response["status"]:
        click.echo(response["message"])
        result = response.get("result") or {}
        for path in result.get("artifacts", []):
            click.echo(f"  wrote {path}")
    else:
        click.echo(f"error: {response['message']}", err=True)
    if ctx.obj.get("json"):
        click.echo(json.dumps(response, indent=2, sort_keys=True, default=str))
    ctx.exit(code)


config_option = click.option("--config", "config_path", required=True,
                             type=click.Path(dir_okay=False), help="Experiment JSON file.")
out_option = click.option("--out", "output_dir", default=None, help="Output directory.")
seed_option = click.option("--seed", type=int, default=None, help="Override simulation.seed.")
step_option = click.option("--step", type=float, default=None, help="Override simulation.h.")
trials_option = click.option("--trials", type=int, default=None, help="Override simulation.trials.")
threads_option = click.option("--threads", type=int, default=None,
                              help="Worker threads (default: SWITCHCERT_THREADS).")


@click.group()
@click.option("--json", "as_json", is_flag=True, help="Also print the full response as JSON.")
@click.option("--quiet", is_flag=True, help="Log warnings and errors only.")
@click.pass_context
def cli(ctx: click.Context, as_json: bool, quiet: bool) -> None:
    """Simulate and certify delayed stochastic systems with Cox switching."""
    settings = GeneralSettings()
    setup_logging(
        root_level=logging.DEBUG,
        file_level=settings.level("FILE_LOG_LEVEL"),
        console_level=logging.WARNING if quiet else settings.level("CONSOLE_LOG_LEVEL"),
        log_directory=settings.LOG_DIR,
    )
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json


@cli.command()
@config_option
@out_option
@seed_option
@step_option
@click.pass_context
def simulate(ctx, config_path, output_dir, seed, step):
    """Integrate one trajectory and write it as CSV."""
    _finish(ctx, "simulate", config_path=config_path, output_dir=output_dir, seed=seed, step=step)


@cli.command()
@config_option
@out_option
@seed_option
@step_option
@trials_option
@threads_option
@click.pass_context
def mc(ctx, config_path, output_dir, seed, step, trials, threads):
    """Run the Monte Carlo ensemble."""
    _finish(ctx, "mc", config_path=config_path, output_dir=output_dir, seed=seed, step=step,
            trials=trials, threads=threads)


@cli.command("verify-thm4")
@config_option
@out_option
@click.option("--dump-pi", is_flag=True, help="Write every assembled Pi^k as a text matrix.")
@click.pass_context
def verify_thm4(ctx, config_path, output_dir, dump_pi):
    """Check the Theorem-4 certificate (exit 0 iff every Pi^k <= 0)."""
    _finish(ctx, "verify-thm4", config_path=config_path, output_dir=output_dir, dump_pi=dump_pi)


@cli.command("verify-thm5")
@config_option
@out_option
@click.pass_context
def verify_thm5(ctx, config_path, output_dir):
    """Check the Theorem-5 certificate."""
    _finish(ctx, "verify-thm5", config_path=config_path, output_dir=output_dir)


@cli.command()
@config_option
@out_option
@click.pass_context
def halanay(ctx, config_path, output_dir):
    """Integrate the Halanay comparison equation and check its bound."""
    _finish(ctx, "halanay", config_path=config_path, output_dir=output_dir)


@cli.command()
@config_option
@out_option
@click.pass_context
def validate(ctx, config_path, output_dir):
    """Validate the delay, the nu weight and the model hypotheses."""
    _finish(ctx, "validate", config_path=config_path, output_dir=output_dir)


@cli.command()
@click.option("--case", type=click.Choice(["constant", "affine"]), required=True)
@out_option
@click.option("--fast", is_flag=True, help="Integrate with h = 0.01 instead of 0.001.")
@seed_option
@trials_option
@threads_option
@click.pass_context
def reproduce(ctx, case, output_dir, fast, seed, trials, threads):
    """Reproduce the bundled two-mode network example."""
    _finish(ctx, "reproduce", case=case, output_dir=output_dir, fast=fast, seed=seed,
            trials=trials, threads=threads)


def main() -> None:
    cli(obj={})
