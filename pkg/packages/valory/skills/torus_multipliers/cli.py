# -*- coding: utf-8 -*-
# ------------------------------------------------------------------------------
#
#   Copyright 2024 Valory AG
#
#   Licensed under the Apache License, Version 2.0 (the "License");
#   you may not use this file except in compliance with the License.
#   You may obtain a copy of the License at
#
#       http://www.apache.org/licenses/LICENSE-2.0
#
#   Unless required by applicable law or agreed to in writing, software
#   distributed under the License is distributed on an "AS IS" BASIS,
#   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#   See the License for the specific language governing permissions and
#   limitations under the License.
#
# ------------------------------------------------------------------------------
"""Command line front end of the torus multipliers engine."""

import json
import logging
from typing import Any, Callable, Dict, Optional

import click
from aea.exceptions import AEAEnforceError
from aea.helpers.logging import setup_logger

from packages.valory.skills.torus_multipliers import PUBLIC_ID
from packages.valory.skills.torus_multipliers.models import (
    EngineConfig,
    load_default_config,
)
from packages.valory.skills.torus_multipliers.utils import serialization
from packages.valory.skills.torus_multipliers.utils.errors import (
    ExitCode,
    ScenarioError,
    TorusMultipliersError,
)
from packages.valory.skills.torus_multipliers.utils.example import (
    EXAMPLE_SCENARIO,
    run_example_checks,
)
from packages.valory.skills.torus_multipliers.utils.lattice import UnitGroup, multiplier_ring
from packages.valory.skills.torus_multipliers.utils.linalg import matrix_order_mod
from packages.valory.skills.torus_multipliers.utils.scenario import (
    Scenario,
    load_scenario,
)
from packages.valory.skills.torus_multipliers.utils.semiconjugacy import (
    full_pipeline,
    lift_symmetry,
    push_flow,
    push_symmetry_power,
    subgroup_index,
    verify_semiconjugacy,
)
from packages.valory.skills.torus_multipliers.utils.torus_flow import (
    TorusFlowSpec,
    enumerate_symmetries_bounded,
    frequency_lattice,
    frequency_ratio,
    has_nontrivial_multiplier,
    multiplier_group,
    symmetry_from_matrix,
    unit_index_in_maximal,
)
from packages.valory.skills.torus_multipliers.utils.verify_sim import (
    check_semiconjugacy_orbits,
    check_symmetry_orbits,
)


_logger = setup_logger(f"aea.packages.{PUBLIC_ID.author}.skills.{PUBLIC_ID.name}")

Report = Dict[str, Any]


def _config(**overrides: Any) -> EngineConfig:
    """Get the default configuration with command line overrides."""
    try:
        return load_default_config().override(**overrides)
    except AEAEnforceError as e:
        raise click.UsageError(str(e)) from e


def _emit(report: Report, as_json: bool) -> None:
    """Print a report."""
    if as_json:
        click.echo(serialization.dumps(report))
        return
    for key in sorted(report):
        click.echo(f"{key}: {json.dumps(report[key], sort_keys=True)}")


def _run(build: Callable[[], Report], as_json: bool) -> Report:
    """Build and print a report, mapping engine errors to exit codes."""
    try:
        report = build()
    except TorusMultipliersError as e:
        click.echo(f"Error: {e}", err=True)
        raise click.exceptions.Exit(e.exit_code.value) from e
    except AEAEnforceError as e:
        click.echo(f"Internal error: {e}", err=True)
        raise click.exceptions.Exit(ExitCode.MATH_ERROR.value) from e
    _emit(report, as_json)
    return report


def _flow(scenario: Scenario, side: str) -> TorusFlowSpec:
    """Build the source or target flow of a scenario."""
    field = scenario.build_field()
    flow = scenario.build_flow(field) if side == "source" else scenario.build_target(field)
    if flow.n < 2:
        raise ScenarioError("flows on the circle are never quasiperiodic; degree must be >= 2")
    return flow


def _candidates(scenario: Scenario, flow: TorusFlowSpec, side: str) -> Optional[list]:
    """Get the unit candidates of a side, if any."""
    if scenario.candidates is None:
        return None
    return Scenario.elements(flow.field, getattr(scenario.candidates, side))


scenario_option = click.option(
    "--scenario",
    "scenario_path",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Path to the scenario file.",
)
json_option = click.option("--json", "as_json", is_flag=True, help="Emit canonical JSON.")
sampling_options = [
    click.option("--seed", type=int, default=None, help="Sampling seed."),
    click.option("--samples", type=int, default=None, help="Number of orbit samples."),
    click.option("--tol", type=float, default=None, help="Orbit residual tolerance."),
]


def with_sampling(func: Callable) -> Callable:
    """Attach the sampling options."""
    for option in reversed(sampling_options):
        func = option(func)
    return func


@click.group(name="torus-multipliers")
@click.option("--verbose", "-v", is_flag=True, help="Log algorithm progress.")
def cli(verbose: bool) -> None:
    """Exact multiplier groups of algebraic torus flows."""
    _logger.setLevel(logging.DEBUG if verbose else logging.INFO)


def multipliers_report(
    scenario: Scenario, config: EngineConfig, side: str = "source"
) -> Report:
    """Get the multiplier ring and multiplier group of a flow of the scenario."""
    flow = _flow(scenario, side)
    candidates = _candidates(scenario, flow, "flow" if side == "source" else "target")
    group = multiplier_group(flow, candidates, config.continued_fraction_cap)
    status, witness = has_nontrivial_multiplier(flow, candidates)
    ratio, minimal = frequency_ratio(flow, 1, 0)
    return {
        "field": serialization.field(flow.field),
        "flow": serialization.flow(flow),
        "frequency_lattice": serialization.lattice(frequency_lattice(flow)),
        "multiplier_ring": serialization.order(multiplier_ring(frequency_lattice(flow))),
        "multipliers": serialization.unit_group(group),
        "nontrivial_multiplier": status.value,
        "witness": None if witness is None else serialization.element(witness),
        "frequency_ratio": {
            "ratio": serialization.element(ratio),
            "minimal_polynomial": [serialization.rational(c) for c in minimal],
        },
        "unit_index_in_maximal": unit_index_in_maximal(flow)
        if flow.field.degree == 2
        else None,
    }


def push_report(scenario: Scenario, config: EngineConfig) -> Report:
    """Get the full pipeline report of the scenario map."""
    flow = _flow(scenario, "source")
    report = full_pipeline(
        flow,
        scenario.build_map(),
        _candidates(scenario, flow, "flow"),
        _candidates(scenario, flow, "target"),
        config.continued_fraction_cap,
    )
    return serialization.pipeline_report(report)


def lift_sym_report(  # pylint: disable=unused-argument
    scenario: Scenario, config: EngineConfig
) -> Report:
    """Get the lift of the target symmetry."""
    flow = _flow(scenario, "source")
    semiconjugacy = scenario.build_map()
    target = push_flow(semiconjugacy, flow).target_flow
    q = symmetry_from_matrix(target, *scenario.affine("target_symmetry"))
    r = lift_symmetry(semiconjugacy, flow, q)
    return {
        "target_symmetry": serialization.symmetry(q),
        "lifted": serialization.symmetry(r),
        "identity_holds": q.matrix @ semiconjugacy.matrix == semiconjugacy.matrix @ r.matrix,
    }


def push_sym_report(  # pylint: disable=unused-argument
    scenario: Scenario, config: EngineConfig
) -> Report:
    """Get the minimal descending power of the source symmetry."""
    flow = _flow(scenario, "source")
    semiconjugacy = scenario.build_map()
    r = symmetry_from_matrix(flow, *scenario.affine("symmetry"))
    power = push_symmetry_power(semiconjugacy, flow, r)
    v = semiconjugacy.matrix
    return {
        "source_symmetry": serialization.symmetry(r),
        "pushed": serialization.power_push(power),
        "search_bound": matrix_order_mod(r.matrix, semiconjugacy.covering_degree),
        "identity_holds": v @ r.matrix**power.k == power.symmetry.matrix @ v,
    }


def index_report(  # pylint: disable=unused-argument
    scenario: Scenario, config: EngineConfig
) -> Report:
    """Get the index of the scenario's unit subgroup."""
    if scenario.subgroup is None:
        raise ScenarioError("the scenario has no 'subgroup' section")
    flow = _flow(scenario, "source")
    order = multiplier_ring(frequency_lattice(flow))
    group = UnitGroup(order, tuple(Scenario.elements(flow.field, scenario.subgroup.group)), False)
    subgroup = UnitGroup(
        order, tuple(Scenario.elements(flow.field, scenario.subgroup.subgroup)), False
    )
    return {
        "index": subgroup_index(group, subgroup),
        "rank": group.rank,
        "completeness": "exact" if group.rank <= 1 else "requires_user_generators",
    }


def verify_report(scenario: Scenario, config: EngineConfig) -> Report:
    """Check the scenario map exactly and along sampled orbits."""
    flow = _flow(scenario, "source")
    target = _flow(scenario, "target")
    semiconjugacy = scenario.build_map()
    times = (-config.max_time, config.max_time)
    orbits = check_semiconjugacy_orbits(
        semiconjugacy,
        flow,
        target,
        config.samples,
        times,
        config.tolerance,
        config.seed,
        bits=config.precision_bits,
    )
    report = {
        "exact": verify_semiconjugacy(semiconjugacy, flow, target),
        "orbits": serialization.orbit_check(orbits),
    }
    if scenario.symmetry is not None:
        symmetry = symmetry_from_matrix(flow, *scenario.affine("symmetry"))
        check = check_symmetry_orbits(
            symmetry,
            flow,
            config.samples,
            times,
            config.tolerance,
            config.seed,
            bits=config.precision_bits,
        )
        report["symmetry_orbits"] = serialization.orbit_check(check)
    return report


def enumerate_report(scenario: Scenario, config: EngineConfig) -> Report:
    """List the symmetries with entries bounded by the configured bound."""
    flow = _flow(scenario, "source")
    symmetries = enumerate_symmetries_bounded(flow, config.enumeration_bound, config.max_workers)
    return {
        "bound": config.enumeration_bound,
        "symmetries": [serialization.symmetry(s) for s in symmetries],
    }


REPORTS: Dict[str, Callable[[Scenario, EngineConfig], Report]] = {
    "multipliers": multipliers_report,
    "push": push_report,
    "lift-sym": lift_sym_report,
    "push-sym": push_sym_report,
    "index": index_report,
    "verify": verify_report,
    "enumerate": enumerate_report,
}


def _verdicts_disagree(report: Report) -> bool:
    """Check whether a verify report has an exact and a numerical verdict that differ."""
    return report["exact"] != report["orbits"]["passed"]


@cli.command(name="multipliers")
@scenario_option
@json_option
@click.option(
    "--flow",
    "side",
    type=click.Choice(["source", "target"]),
    default="source",
    help="Which flow of the scenario to analyse.",
)
def multipliers(scenario_path: str, as_json: bool, side: str) -> None:
    """Compute the multiplier ring and multiplier group of a flow."""
    config = _config()
    _run(lambda: multipliers_report(load_scenario(scenario_path), config, side), as_json)


@cli.command(name="push")
@scenario_option
@json_option
def push(scenario_path: str, as_json: bool) -> None:
    """Push a flow along a semiconjugacy and compare the multiplier groups."""
    config = _config()
    _run(lambda: push_report(load_scenario(scenario_path), config), as_json)


@cli.command(name="lift-sym")
@scenario_option
@json_option
def lift_sym(scenario_path: str, as_json: bool) -> None:
    """Lift the target symmetry of a scenario to the source flow."""
    config = _config()
    _run(lambda: lift_sym_report(load_scenario(scenario_path), config), as_json)


@cli.command(name="push-sym")
@scenario_option
@json_option
def push_sym(scenario_path: str, as_json: bool) -> None:
    """Push the minimal descending power of the source symmetry to the target flow."""
    config = _config()
    _run(lambda: push_sym_report(load_scenario(scenario_path), config), as_json)


@cli.command(name="index")
@scenario_option
@json_option
def index(scenario_path: str, as_json: bool) -> None:
    """Compute the index of the scenario's unit subgroup."""
    config = _config()
    _run(lambda: index_report(load_scenario(scenario_path), config), as_json)


@cli.command(name="verify")
@scenario_option
@json_option
@with_sampling
def verify(
    scenario_path: str,
    as_json: bool,
    seed: Optional[int],
    samples: Optional[int],
    tol: Optional[float],
) -> None:
    """Check a semiconjugacy exactly and along sampled orbits."""
    config = _config(seed=seed, samples=samples, tolerance=tol)
    report = _run(lambda: verify_report(load_scenario(scenario_path), config), as_json)
    if _verdicts_disagree(report):
        click.echo("Exact and numerical verdicts disagree", err=True)
        raise click.exceptions.Exit(ExitCode.ACCEPTANCE_MISMATCH.value)


@cli.command(name="enumerate")
@scenario_option
@json_option
@click.option("--bound", type=int, default=None, help="Entry bound of the enumeration.")
@click.option("--workers", type=int, default=None, help="Number of worker processes.")
def enumerate_command(
    scenario_path: str, as_json: bool, bound: Optional[int], workers: Optional[int]
) -> None:
    """List every symmetry matrix with bounded entries."""
    config = _config(enumeration_bound=bound, max_workers=workers)
    _run(lambda: enumerate_report(load_scenario(scenario_path), config), as_json)


@cli.command(name="run")
@scenario_option
@json_option
@with_sampling
def run_scenario(
    scenario_path: str,
    as_json: bool,
    seed: Optional[int],
    samples: Optional[int],
    tol: Optional[float],
) -> None:
    """Run the computations listed in the scenario, in order, as one report."""
    config = _config(seed=seed, samples=samples, tolerance=tol)

    def build() -> Report:
        scenario = load_scenario(scenario_path)
        if not scenario.run:
            raise ScenarioError("the scenario lists no computations to run")
        report = {}
        for name in scenario.run:
            _logger.debug(f"Running {name}")
            report[name] = REPORTS[name](scenario, config)
        return report

    report = _run(build, as_json)
    if "verify" in report and _verdicts_disagree(report["verify"]):
        click.echo("Exact and numerical verdicts disagree", err=True)
        raise click.exceptions.Exit(ExitCode.ACCEPTANCE_MISMATCH.value)


@cli.command(name="demo")
@json_option
@with_sampling
@click.option("--simulate", is_flag=True, help="Include the orbit residual checks.")
@click.option(
    "--scenario",
    "scenario_path",
    type=click.Path(exists=True, dir_okay=False),
    default=str(EXAMPLE_SCENARIO),
    help="Path to the example scenario.",
)
def demo(
    as_json: bool,
    seed: Optional[int],
    samples: Optional[int],
    tol: Optional[float],
    simulate: bool,
    scenario_path: str,
) -> None:
    """Recompute the worked example and compare against the expected values."""
    config = _config(seed=seed, samples=samples, tolerance=tol)
    try:
        checks = run_example_checks(
            simulate,
            config.samples,
            config.tolerance,
            config.seed,
            scenario_path,
            config.precision_bits,
        )
    except TorusMultipliersError as e:
        click.echo(f"Error: {e}", err=True)
        raise click.exceptions.Exit(e.exit_code.value) from e

    if as_json:
        click.echo(
            serialization.dumps(
                {
                    "checks": [
                        {
                            "name": c.name,
                            "expected": c.expected,
                            "actual": c.actual,
                            "passed": c.passed,
                        }
                        for c in checks
                    ],
                    "passed": all(c.passed for c in checks),
                }
            )
        )
    else:
        width = max(len(c.name) for c in checks)
        for c in checks:
            status = "ok" if c.passed else "MISMATCH"
            click.echo(f"{c.name:<{width}}  {status:<8}  expected {c.expected}  got {c.actual}")
    if not all(c.passed for c in checks):
        raise click.exceptions.Exit(ExitCode.ACCEPTANCE_MISMATCH.value)


if __name__ == "__main__":
    cli()  # pylint: disable=no-value-for-parameter
