"""
Command handlers and the argument parser behind main.py

Every handler takes the parsed namespace and returns the text to emit; main()
writes it to --out or stdout and maps errors to exit codes.
"""

from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence
import argparse
import json
import logging
import sys

import numpy as np

from cli.instance_file import load_instance
from config import get_config
from dynamics.lattice import LatticePoint
from dynamics.scalar import format_scalar, to_scalar
from dynamics.step import sample_trajectory
from errors import CapExceeded, ParseError, SpipError, WindowOverflow
from experiments import (
    default_suite, grover_cost, replicate_suite, run_suite, suite_to_csv, suite_trends,
    surface_to_csv, sweep_surface,
)
from inversion import invert_dfs, invert_mitm, invert_random, solutions_to_jsonl
from pathspace import census_to_json, count_paths_to, enumerate_paths
from reductions import (
    decide_reachability, embed_dag, parse_dag, random_dag, random_transition_system,
    reachability_oracle, report_to_json,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAP = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _resolve_seed(args, seeds=None, key='noise') -> int:
    if args.seed is not None:
        return args.seed
    if seeds and key in seeds:
        return seeds[key]
    seed = int(np.random.SeedSequence().entropy % 2 ** 63)
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def _parse_code(text: str) -> List[int]:
    try:
        return [int(s) for s in text.split(',') if s.strip()]
    except ValueError as e:
        raise ParseError(f"bad code list ({e})", '--code')


def _parse_deltas(text: str):
    deltas = []
    for index, pair in enumerate(text.split(';')):
        parts = pair.split(',')
        if len(parts) != 2:
            raise ParseError(f"expected 'd1,d2', got {pair!r}", f"--deltas[{index}]")
        try:
            deltas.append((to_scalar(parts[0]), to_scalar(parts[1])))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational ({e})", f"--deltas[{index}]")
    return deltas


def _parse_point(text: str) -> LatticePoint:
    try:
        x, y = (int(c) for c in text.split(','))
    except ValueError:
        raise ParseError(f"expected 'x,y', got {text!r}", '--target')
    return LatticePoint(x, y)


def _parse_range(text: str, kind, option: str) -> list:
    """'a', 'a:b' or 'a:b:step', inclusive of b"""
    try:
        parts = [kind(p) for p in text.split(':')]
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad range {text!r} ({e})", option)
    if len(parts) == 1:
        return parts
    if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] <= 0):
        raise ParseError(f"expected 'start:stop[:step]' with step > 0, got {text!r}", option)
    start, stop = parts[0], parts[1]
    step = parts[2] if len(parts) == 3 else kind(1) if kind is int else Fraction(1, 10)
    values = []
    while start <= stop:
        values.append(start)
        start += step
    return values


def _trajectory_json(trial, trajectory) -> str:
    return json.dumps({
        'trial': trial,
        'code': list(trajectory.code),
        'states': [[p.x, p.y] for p in trajectory.states],
        'noises': [[format_scalar(d[0]), format_scalar(d[1])] for d in trajectory.noises],
    })


def _instance(args):
    loaded = load_instance(args.instance)
    inst = loaded.instance
    if getattr(args, 'target', None):
        inst = inst.with_target(_parse_point(args.target))
    return inst, loaded.seeds


def cmd_simulate(args) -> str:
    inst, seeds = _instance(args)
    code = _parse_code(args.code) if args.code else None
    if args.deltas:
        if code is None:
            raise ParseError("--deltas needs --code", '--deltas')
        trajectory = sample_trajectory(inst.ts, code, inst.x0, inst.noise, deltas=_parse_deltas(args.deltas))
        return _trajectory_json(0, trajectory) + '\n'
    if code is not None:
        inst.ts.validate_code(code)
    rng = np.random.default_rng(_resolve_seed(args, seeds))
    lines = []
    for trial in range(args.trials):
        trial_code = code if code is not None else [int(s) for s in rng.integers(1, inst.m, endpoint=True, size=inst.n)]
        lines.append(_trajectory_json(trial, sample_trajectory(inst.ts, trial_code, inst.x0, inst.noise, rng)))
    return '\n'.join(lines) + '\n'


def cmd_enumerate(args) -> str:
    inst, _ = _instance(args)
    census = enumerate_paths(inst, cap=args.cap, threads=args.threads)
    return census_to_json(census) + '\n'


def cmd_count(args) -> str:
    inst, _ = _instance(args)
    return f"{count_paths_to(inst, cap=args.cap)}\n"


def cmd_invert(args) -> str:
    inst, seeds = _instance(args)
    if args.method == 'mitm':
        result = invert_mitm(inst, cap=args.cap)
    elif args.method == 'random':
        result = invert_random(inst, args.trials, _resolve_seed(args, seeds))
    else:
        result = invert_dfs(inst, max_solutions=args.max_solutions, cap=args.cap, threads=args.threads)
    logger.info(f"{result.method}: {len(result.solutions)} solutions, {result.nodes_expanded} nodes, "
                f"exhausted={result.exhausted}")
    return solutions_to_jsonl(result)


def cmd_stats(args) -> str:
    seed = _resolve_seed(args)
    cfgs = default_suite(trials=args.trials, map_seed=seed, noise_seed=seed)
    if args.replicates > 1:
        rows = replicate_suite(cfgs, args.replicates, threads=args.threads)
        trends = suite_trends(rows)
        logger.info(f"Spearman entropy~steps={trends.entropy_vs_steps:.3f}, "
                    f"freedom~transforms={trends.freedom_vs_transforms:.3f}, "
                    f"entropy~distance={trends.entropy_vs_distance:.3f}")
    else:
        rows = run_suite(cfgs, threads=args.threads)
    return suite_to_csv(rows)


def cmd_sweep(args) -> str:
    n_values = _parse_range(args.n_range, int, '--n-range')
    eps_values = _parse_range(args.eps_range, to_scalar, '--eps-range')
    return surface_to_csv(sweep_surface(n_values, eps_values, args.m))


def cmd_grover(args) -> str:
    cost = grover_cost(args.m, args.k, args.n)
    return json.dumps({'log2_space': cost.log2_space, 'log2_grover': cost.log2_grover}) + '\n'


def _verdict(report) -> str:
    return f"{'PASS' if report.passed else 'FAIL'} total={report.total_spip}"


def cmd_reduce(args) -> str:
    seed = args.seed if args.seed is not None else 0
    if args.dag:
        dag = parse_dag(Path(args.dag).read_text())
        encoding = embed_dag(dag, seed=seed, cap=args.cap, threads=args.threads)
        if args.report:
            Path(args.report).write_text(report_to_json(encoding.report) + '\n')
        return _verdict(encoding.report) + '\n'
    if args.vertices < 3:
        raise UsageError(f"--vertices must be at least 3, got {args.vertices}")
    rng = np.random.default_rng(seed)
    lines = []
    for index in range(args.random_dags):
        dag = random_dag(int(rng.integers(3, args.vertices, endpoint=True)), args.edge_probability, rng)
        encoding = embed_dag(dag, seed=seed + index, cap=args.cap, threads=args.threads)
        lines.append(f"dag {index}: V={dag.vertex_count} E={len(dag.edges)} {_verdict(encoding.report)}")
    return '\n'.join(lines) + '\n'


def cmd_reach(args) -> str:
    if args.states < 2:
        raise UsageError(f"--states must be at least 2, got {args.states}")
    seed = args.seed if args.seed is not None else 0
    rng = np.random.default_rng(seed)
    lines = []
    for index in range(args.systems):
        system = random_transition_system(args.states, args.transition_probability, args.horizon, rng)
        answer = decide_reachability(system, seed=seed + index, cap=args.cap)
        expected = reachability_oracle(system)
        status = 'AGREE' if answer.reachable == expected else 'DISAGREE'
        lines.append(f"system {index}: reachable={answer.reachable} oracle={expected} {status}")
    return '\n'.join(lines) + '\n'


def build_arg_parser() -> argparse.ArgumentParser:
    config = get_config()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=config.THREADS, help="Worker threads")
    common.add_argument("--out", type=str, default=None, help="Write output here instead of stdout")

    p = _Parser(prog='main.py', description="Symbolic path inversion workbench")
    sub = p.add_subparsers(dest='command', required=True, parser_class=_Parser)

    def command(name, help):
        return sub.add_parser(name, help=help, parents=[common],
                              formatter_class=argparse.ArgumentDefaultsHelpFormatter)

    def with_instance(parser, target=False):
        parser.add_argument("--instance", required=True, help="Instance JSON file")
        parser.add_argument("--cap", type=int, default=config.ENUMERATION_CAP, help="Search cap")
        if target:
            parser.add_argument("--target", type=str, default=None, help="Override target as 'x,y'")

    s = command('simulate', "Sample or replay trajectories")
    with_instance(s)
    s.add_argument("--code", type=str, default=None, help="Fixed code, e.g. 1,2,1")
    s.add_argument("--deltas", type=str, default=None, help="Noise to replay, e.g. 3/10,-2/5;-1/5,1/5")
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(handler=cmd_simulate)

    s = command('enumerate', "Exhaustive path-space census")
    with_instance(s)
    s.set_defaults(handler=cmd_enumerate)

    s = command('count', "Exact number of paths ending at the target")
    with_instance(s, target=True)
    s.set_defaults(handler=cmd_count)

    s = command('invert', "Recover (code, path) pairs from x0 to the target")
    with_instance(s, target=True)
    s.add_argument("--method", choices=['dfs', 'mitm', 'random'], default='dfs')
    s.add_argument("--max-solutions", type=int, default=None)
    s.add_argument("--trials", type=int, default=config.TRIALS, help="Random method samples")
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(handler=cmd_invert)

    s = command('stats', "Run the default simulation suite, CSV out")
    s.add_argument("--trials", type=int, default=config.TRIALS)
    s.add_argument("--replicates", type=int, default=1)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(handler=cmd_stats)

    s = command('sweep', "log2 path-space surface over (n, epsilon)")
    s.add_argument("--n-range", type=str, default="1:128:1", help="start:stop[:step]")
    s.add_argument("--eps-range", type=str, default="1/10:1:1/10", help="start:stop[:step]")
    s.add_argument("-m", type=int, default=10)
    s.set_defaults(handler=cmd_sweep)

    s = command('grover', "Classical vs Grover search cost in bits")
    s.add_argument("-m", type=int, required=True)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(handler=cmd_grover)

    s = command('reduce', "Embed DAGs and certify path counts (every map applies at every state, "
                             "so work grows like E^L; dense DAGs can hit --cap)")
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--dag", type=str, help="DAG edge-list file")
    group.add_argument("--random-dags", type=int, help="Number of seeded random DAGs")
    s.add_argument("--vertices", type=int, default=8, help="Largest random DAG")
    s.add_argument("--edge-probability", type=float, default=0.3,
                   help="At V=8, values above about 0.5 usually exceed the default cap")
    s.add_argument("--report", type=str, default=None, help="JSON report path for --dag")
    s.add_argument("--cap", type=int, default=config.ENUMERATION_CAP)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(handler=cmd_reduce)

    s = command('reach', "Reachability encoding vs BFS on random systems")
    s.add_argument("--systems", type=int, default=20)
    s.add_argument("--states", type=int, default=5)
    s.add_argument("--horizon", type=int, default=4)
    s.add_argument("--transition-probability", type=float, default=0.3)
    s.add_argument("--cap", type=int, default=config.ENUMERATION_CAP)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(handler=cmd_reach)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    config = get_config()
    logging.basicConfig(level=getattr(logging, config.LOG_LEVEL.upper(), logging.INFO),
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s', stream=sys.stderr)
    try:
        args = build_arg_parser().parse_args(argv)
        output = args.handler(args)
        if args.out:
            Path(args.out).write_text(output)
        else:
            sys.stdout.write(output)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (CapExceeded, WindowOverflow) as e:
        logger.error(f"Error: {e}")
        return EXIT_CAP
    except (SpipError, OSError) as e:
        logger.error(f"Error: {e}")
        return EXIT_INPUT
    return EXIT_OK
