import logging
import os
import sys
from typing import List

import click

from pyqiemi.charger import Charger
from pyqiemi.charger.charger_profile import POWER_TIERS
from pyqiemi.circuit import transmitted_power
from pyqiemi.config import DEMOS_DIR, ProfileLibrary
from pyqiemi.eavesdropper import format_report, recover_ask, recover_fsk
from pyqiemi.exceptions import ConfigurationError, ScenarioAssertionFailed, TraceFormatError
from pyqiemi.receiver import damage_matrix
from pyqiemi.scenario import ScenarioConfig, first_tripped, run_scenario, sweep
from pyqiemi.scenario.scenario_config import DEFAULT_OUTPUTS
from pyqiemi.scenario.scenario_report import format_value
from pyqiemi.signal import read_trace

logger = logging.getLogger(__name__)

CONFIGURATION_ERROR = 2
ASSERTION_FAILED = 3
FSK_OVERSAMPLING = 4


@click.group()
@click.option("-l", "--loglevel", default="WARNING", show_default=True,
              help="The loglevel to be used ([DEBUG|INFO|WARNING|ERROR|CRITICAL])")
@click.option("-p", "--profiles", type=click.Path(dir_okay=False), default=None,
              help="Profile file merged over the packaged profiles. Default: $PYQIEMI_PROFILES")
@click.pass_context
def cli(ctx, loglevel, profiles):
    """
    Simulate Qi wireless charging under adapter-side interference.

    Every command is deterministic given its seed. Reports are written as text and CSV.
    """
    logging.basicConfig(level=loglevel.upper())
    ctx.ensure_object(dict)
    ctx.obj["profiles"] = profiles


def _library(ctx) -> ProfileLibrary:
    return ProfileLibrary.load(ctx.obj.get("profiles"))


def _fail_configuration(e: Exception):
    logger.error(str(e))
    sys.exit(CONFIGURATION_ERROR)


def _run(ctx, cfg: ScenarioConfig) -> None:
    try:
        report = run_scenario(cfg, _library(ctx))
    except ConfigurationError as e:
        _fail_configuration(e)
    for key, value in report.summary_rows():
        click.echo(f"{key}={value}")
    try:
        report.raise_for_status()
    except ScenarioAssertionFailed as e:
        logger.error(str(e))
        sys.exit(ASSERTION_FAILED)


def _load(path: str) -> ScenarioConfig:
    try:
        return ScenarioConfig.load(path)
    except ConfigurationError as e:
        _fail_configuration(e)


@cli.command()
@click.argument("config", type=click.Path(dir_okay=False))
@click.option("-o", "--out", type=click.Path(file_okay=False), default=None,
              help="Output directory. Default: the configuration's outputs")
@click.option("-s", "--seed", type=int, default=None, help="Seed. Default: the configuration's seed")
@click.pass_context
def run(ctx, config, out, seed):
    """Run the scenario described by CONFIG."""
    cfg = _load(config)
    if seed is not None:
        cfg = cfg.with_seed(seed)
    if out is not None:
        cfg = cfg.with_outputs(out)
    _run(ctx, cfg)


@cli.command(name="sweep")
@click.argument("config", type=click.Path(dir_okay=False))
@click.option("--param", "parameter", required=True, help="m_i, f_i, charger, jam_depth or forge_depth")
@click.option("--values", required=True, help="Comma-separated values, e.g. 0,0.1,0.2")
@click.option("-o", "--out", type=click.Path(file_okay=False), default=None,
              help="Output directory. Default: the configuration's outputs")
@click.pass_context
def sweep_command(ctx, config, parameter, values, out):
    """Run CONFIG once per value of one parameter and write sweep.csv."""
    cfg = _load(config)
    if out is not None:
        cfg = cfg.with_outputs(out)
    try:
        rows = sweep(cfg, parameter, parse_values(values), _library(ctx))
    except ConfigurationError as e:
        _fail_configuration(e)
    click.echo(f"{len(rows)} runs written to {os.path.join(cfg.outputs, 'sweep.csv')}")
    tripped = first_tripped(rows, parameter)
    if tripped is not None:
        click.echo(f"stability proxy first tripped at {parameter}={tripped}")


def parse_values(values: str) -> List:
    parsed = []
    for value in (part.strip() for part in values.split(",")):
        if not value:
            continue
        try:
            parsed.append(float(value))
        except ValueError:
            parsed.append(value)
    return parsed


@cli.command()
@click.argument("trace", type=click.Path(dir_okay=False))
@click.option("--mode", type=click.Choice(["auto", "ask", "fsk"]), default="auto", show_default=True,
              help="ask for receiver packets, fsk for charger responses, auto picks by sample rate")
@click.option("--f-p", "f_p", type=float, default=140e3, show_default=True,
              help="Operating frequency of the charger in Hz, for FSK")
def decode(trace, mode, f_p):
    """Recover Qi messages from an adapter-side TRACE (CSV)."""
    try:
        adapter = read_trace(trace)
    except (TraceFormatError, OSError) as e:
        _fail_configuration(e)
    if mode == "auto":
        mode = "fsk" if adapter.sample_rate >= FSK_OVERSAMPLING * f_p else "ask"
    messages = recover_fsk(adapter, f_p) if mode == "fsk" else recover_ask(adapter)
    logger.info(f"Recovered {len(messages)} messages from {trace} in {mode} mode")
    click.echo(format_report(messages), nl=False)


@cli.command()
@click.argument("name")
@click.option("-o", "--out", type=click.Path(file_okay=False), default=None,
              help="Output directory. Default: ./pyqiemi-out/<name>")
@click.option("-s", "--seed", type=int, default=None, help="Seed. Default: the demo's seed")
@click.pass_context
def demo(ctx, name, out, seed):
    """Run the built-in configuration of scenario NAME."""
    path = os.path.join(DEMOS_DIR, f"{name}.yaml")
    if not os.path.isfile(path):
        available = sorted(os.path.splitext(demo_file)[0] for demo_file in os.listdir(DEMOS_DIR))
        _fail_configuration(ConfigurationError(f"No demo named {name}, expected one of {available}"))
    cfg = _load(path).with_outputs(out or os.path.join(DEFAULT_OUTPUTS, name))
    if seed is not None:
        cfg = cfg.with_seed(seed)
    _run(ctx, cfg)


@cli.command()
@click.option("-d", "--duration", type=float, default=300.0, show_default=True, help="Exposure in seconds")
@click.pass_context
def damage(ctx, duration):
    """Which packaged objects each charger tier destroys at full duty."""
    try:
        library = _library(ctx)
        tiers = {}
        for rated in POWER_TIERS:
            profile = library.charger(f"charger_{rated}w")
            charger = Charger(profile, library.system(profile.system))
            tiers[f"{rated}W"] = transmitted_power(charger.params.with_duty(1.0))
        objects = [library.foreign_object(name) for name in library.names("object")]
    except ConfigurationError as e:
        _fail_configuration(e)
    matrix = damage_matrix(objects, tiers, duration)
    click.echo(",".join(["object"] + [f"{tier}({format_value(power)} W)" for tier, power in tiers.items()]))
    for obj in objects:
        cells = ["damaged" if matrix[tier][obj.name].damaged else "intact" for tier in tiers]
        click.echo(",".join([obj.name] + cells))


if __name__ == "__main__":
    cli()
