"""
Command-line entry point for the admission-control toolkit.

Every subcommand reads an optional run config (JSON or YAML), applies the
command-line overrides, writes its artifacts under the output directory and
prints a JSON summary on stdout. Failures print ``{"error": ..., "errors":
[...]}`` on stderr and exit with the error's code (1 numerical, 2 config,
3 golden mismatch).
"""
import functools
import json
import logging
from dataclasses import replace

import click

import utils
from bounds import bracket_check, compute_bounds
from errors import ConfigError, ToolkitError
from estimator import evaluate_estimator, predict, train
from evaluator import StopRule, evaluate_policy
from generators import build_dataset
from model import State
from parsers import ConfigParser
from reproduction import estimator_test_points, run_reproduction, training_sweep
from serializers import (
    NetworkSerializer,
    PolicySerializer,
    SolveReportSerializer,
    action_table_to_csv,
    dataset_from_csv,
    dataset_to_csv,
    grid_to_csv,
)
from simulator import simulate
from solver import BoundaryRule, SolverSettings

logger = logging.getLogger(__name__)


def common_options(func):
    """--config, --out, --seed, --full-precision and --verbose for every subcommand."""
    @click.option('--config', 'config_path', type=click.Path(dir_okay=False),
                  help='Run config (JSON or YAML).')
    @click.option('--out', type=click.Path(file_okay=False), help='Output directory.')
    @click.option('--seed', type=click.IntRange(0, 2 ** 64 - 1), help='Seed for simulation and training.')
    @click.option('--full-precision', is_flag=True, help='Write CSV values with full float precision.')
    @click.option('--verbose', '-v', is_flag=True, help='Debug logging on stderr.')
    @functools.wraps(func)
    def wrapper(config_path, out, seed, full_precision, verbose, **kwargs):
        utils.configure_logging(verbose)
        ctx = click.get_current_context()
        try:
            config = ConfigParser().load(config_path).with_overrides(
                out=out, seed=seed, full_precision=full_precision)
            return func(config, **kwargs)
        except ToolkitError as e:
            logger.error("%s failed: %s", ctx.info_name, e)
            click.echo(json.dumps(e.to_dict()), err=True)
            ctx.exit(e.exit_code)
    return wrapper


def emit(data):
    click.echo(utils.dump_json(data), nl=False)


def load_policy(path, config):
    """Policy from a policy.json, or the optimal policy of the config when no path is given."""
    if path is None:
        return config.solver.run(config.model).policy
    try:
        content = utils.read_file_content(path)
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError([f"Cannot read policy {path}: {e}"])
    return PolicySerializer().from_json(content)


def solver_settings(config, cap=None, boundary=None):
    settings = config.solver
    if cap is None and boundary is None:
        return settings
    if cap is not None and cap != 'auto':
        try:
            cap = int(cap)
        except ValueError:
            raise ConfigError([f"--cap must be 'auto' or an integer, got {cap!r}"])
    return SolverSettings(cap=settings.cap if cap is None else cap,
                          tol=settings.tol, max_iter=settings.max_iter,
                          boundary=boundary or settings.boundary)


@click.group()
def cli():
    """Admission control for a preemptive-priority VM pool."""


@cli.command('solve')
@common_options
@click.option('--cap', help="Truncation cap for n2, or 'auto'.")
@click.option('--boundary', type=click.Choice([b.value for b in BoundaryRule]))
def cmd_solve(config, cap, boundary):
    """Optimal value grid, action table and thresholds."""
    settings = solver_settings(config, cap, boundary)
    report = settings.run(config.model)
    bounds = compute_bounds(config.model)
    out = config.output.dir
    precision = config.output.precision
    utils.write_text(out, 'grid.csv', grid_to_csv(report.grid, precision))
    utils.write_text(out, 'actions.csv', action_table_to_csv(report.policy, report.cap))
    utils.write_text(out, 'policy.json', PolicySerializer().to_json(report.policy))
    report_doc = SolveReportSerializer(bounds, config.model.to_dict()).serialize(report)
    utils.write_text(out, 'report.json', utils.dump_json(report_doc))
    emit({'thresholds': report.policy.thresholds, 'iterations': report.iterations,
          'cap': report.cap, 'out': out})


@cli.command('bounds')
@common_options
@click.option('--policy', 'policy_path', type=click.Path(dir_okay=False),
              help='policy.json to bracket against the bounds.')
def cmd_bounds(config, policy_path):
    """Analytical threshold bounds; with --policy, also the bracket check."""
    if policy_path is None:
        emit(compute_bounds(config.model).to_dict())
        return
    policy = load_policy(policy_path, config)
    emit(bracket_check(config.model, policy).to_dict())


@cli.command('evaluate')
@common_options
@click.option('--policy', 'policy_path', type=click.Path(dir_okay=False),
              help='policy.json to evaluate (default: the optimal policy).')
@click.option('--tolerance', type=float, help='Stop on sup-norm change instead of the discount count.')
def cmd_evaluate(config, policy_path, tolerance):
    """Expected discounted reward grid of a fixed threshold policy."""
    policy = load_policy(policy_path, config)
    stop = StopRule.tolerance(tolerance, config.solver.max_iter) if tolerance else StopRule.discount()
    grid = evaluate_policy(config.model, policy, cap=config.solver.cap, stop=stop,
                           boundary=config.solver.boundary)
    path = utils.write_text(config.output.dir, 'evaluated_grid.csv',
                            grid_to_csv(grid, config.output.precision))
    emit({'thresholds': policy.thresholds, 'value_at_origin': grid.at(0, 0),
          'cap': grid.cap, 'grid': path})


@cli.command('simulate')
@common_options
@click.option('--policy', 'policy_path', type=click.Path(dir_okay=False),
              help='policy.json to simulate (default: the optimal policy).')
@click.option('--state', nargs=2, type=int, help='Initial state n1 n2.')
@click.option('--replications', type=click.IntRange(1))
@click.option('--workers', type=click.IntRange(1))
def cmd_simulate(config, policy_path, state, replications, workers):
    """Monte Carlo estimate of a policy's discounted reward."""
    sim = config.sim
    if state:
        sim = replace(sim, initial=State(*state))
    if replications:
        sim = replace(sim, replications=replications)
    if workers:
        sim = replace(sim, workers=workers)
    policy = load_policy(policy_path, config)
    result = simulate(config.model, policy, sim)
    data = result.to_dict()
    data['initial'] = list(sim.initial.as_tuple())
    data['thresholds'] = policy.thresholds
    utils.write_text(config.output.dir, 'simulation.json', utils.dump_json(data))
    emit(data)


@cli.command('dataset')
@common_options
@click.option('--workers', type=click.IntRange(1), default=1, show_default=True)
def cmd_dataset(config, workers):
    """Solve every point of the sweep and write dataset.csv."""
    sweep = config.sweep or training_sweep(config.model)
    dataset = build_dataset(sweep, config.solver, workers=workers)
    path = utils.write_text(config.output.dir, 'dataset.csv', dataset_to_csv(dataset))
    emit({'rows': len(dataset), 'labels': dataset.label_count, 'dataset': path})


@cli.command('train')
@common_options
@click.option('--dataset', 'dataset_path', required=True, type=click.Path(dir_okay=False))
def cmd_train(config, dataset_path):
    """Fit the threshold network and write network.json."""
    try:
        dataset = dataset_from_csv(utils.read_file_content(dataset_path))
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError([f"Cannot read dataset {dataset_path}: {e}"])
    mlp, report = train(dataset, config.train)
    utils.write_text(config.output.dir, 'network.json', NetworkSerializer().to_json(mlp))
    utils.write_text(config.output.dir, 'train_report.json', utils.dump_json(report.to_dict()))
    emit(report.to_dict())


@cli.command('predict')
@common_options
@click.option('--network', 'network_path', required=True, type=click.Path(dir_okay=False))
@click.option('--features', nargs=5, type=float,
              help='R lambda1 lambda2 mu1 mu2 (default: the config model).')
@click.option('--compare', is_flag=True, help='Also solve the reference comparison points.')
def cmd_predict(config, network_path, features, compare):
    """Predicted thresholds for one parameter set."""
    try:
        mlp = NetworkSerializer().from_json(utils.read_file_content(network_path))
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError([f"Cannot read network {network_path}: {e}"])
    if not features:
        m = config.model
        features = (m.reward_R, m.lambda1, m.lambda2, m.mu1, m.mu2)
    data = {'features': list(features), 'thresholds': predict(mlp, features)}
    if compare:
        table = evaluate_estimator(mlp, estimator_test_points(config.model), config.model, config.solver)
        data['comparison'] = table.to_dict()
    emit(data)


@cli.command('reproduce-paper')
@common_options
@click.option('--with-estimator', is_flag=True, help='Also train and compare the threshold network.')
@click.option('--workers', type=click.IntRange(1), default=1, show_default=True)
def cmd_reproduce_paper(config, with_estimator, workers):
    """Check solver, evaluator and bounds against the reference tables."""
    params = config.model if config.source else None
    report = run_reproduction(params=params, settings=config.solver,
                              with_estimator=with_estimator, workers=workers)
    utils.write_text(config.output.dir, 'reproduction.json', utils.dump_json(report.to_dict()))
    for setting in report.settings:
        if not setting.compared:
            click.echo(grid_to_csv(setting.solve.grid, config.output.precision), nl=False)
    emit(report.to_dict())
    report.raise_for_mismatch()


if __name__ == '__main__':
    cli()
