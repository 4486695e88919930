# vim: ts=4 sw=4 et ai:
# -*- coding: utf8 -*-
"""Command line entry point.

    vistawise run [--config FILE] [overrides]
    vistawise bench-retrieval [--cases DIR] [--output-dir DIR]
    vistawise compare-tokens CONFIG_A [CONFIG_B]
    vistawise validate-graph [GRAPH]
    vistawise replay REPLAY [--manifest FILE | --expect HASH]
"""

import argparse
import json
import logging
import pathlib
import sys

from typing import List,Optional

from vistawise.shared import ExitCodes
from vistawise.exceptions import VistaException,VistaGraphError,VistaConfigError
from vistawise.graph import load_graph,DEFAULT_GRAPH
from vistawise.perception import RangeConfig
from vistawise.retrieval import Verbosity
from vistawise.sim import load_scenario,replay,DEFAULT_SCENARIO
from .config import RunConfig,load_config
from .runner import run,read_replay,MANIFEST
from .bench import bench_retrieval,format_table,BENCH_DIR
from .tokens import compare_tokens

logger = logging.getLogger('vistawise.harness.cli')

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

def _config(args) -> RunConfig:
    config = load_config(args.config) if args.config else RunConfig()
    return config.override(task=args.task, seed=args.seed, max_steps=args.max_steps,
                           policy=args.policy, endpoint=args.endpoint,
                           textualization=args.textualization,
                           output_dir=args.output_dir, recall_steps=args.recall_steps)

def cmd_run(args) -> int:
    report = run(_config(args))
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    return report.exit_code

def cmd_bench(args) -> int:
    rows = bench_retrieval(args.cases, args.output_dir)
    print(format_table(rows))
    return ExitCodes.SUCCESS

def cmd_compare(args) -> int:
    config_a = load_config(args.config_a)
    if args.config_b:
        config_b = load_config(args.config_b)
    else:
        config_a = config_a.override(textualization=Verbosity.NAMES.value)
        config_b = config_a.override(textualization=Verbosity.FULL.value)
    result = compare_tokens(config_a, config_b)
    print(json.dumps(result.to_dict(), indent=2, sort_keys=True))
    return ExitCodes.SUCCESS

def cmd_validate(args) -> int:
    try:
        graph = load_graph(args.graph)
    except VistaGraphError as err:
        print(f"{args.graph}: {err}")
        return ExitCodes.CONFIG_ERROR

    findings = graph.validate()
    for finding in findings:
        print(f"{finding.kind}: {finding.detail}")
    if findings:
        return ExitCodes.CONFIG_ERROR
    print(f"{args.graph}: {len(graph.nodes)} nodes, {len(graph.edges)} edges, no findings")
    return ExitCodes.SUCCESS

def cmd_replay(args) -> int:
    path = pathlib.Path(args.replay)
    expect = args.expect
    seed = args.seed
    range_cfg = None
    manifest_path = pathlib.Path(args.manifest) if args.manifest else path.parent / MANIFEST
    if args.manifest or manifest_path.is_file():
        try:
            manifest = json.loads(manifest_path.read_text(encoding='utf8'))
            expect = expect or manifest['final_hash']
            seed = manifest['seed'] if seed is None else seed
            range_cfg = RangeConfig.from_dict(manifest.get('range', {}))
        except (OSError, ValueError, KeyError, TypeError, AttributeError) as err:
            raise VistaConfigError(f"can not read manifest {manifest_path}: {err}")

    try:
        records = read_replay(path)
    except (OSError, ValueError) as err:
        raise VistaConfigError(f"can not read replay log {path}: {err}")

    digest = replay(load_scenario(args.scenario), seed or 0, records, range_cfg)
    print(digest)
    if expect is not None and digest != expect:
        logger.error(f"Replay hash {digest} does not match {expect}")
        return ExitCodes.TASK_FAILURE
    return ExitCodes.SUCCESS

def parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog='vistawise',
                                  description='Knowledge-graph agent pipeline for a blockworld crafting game')
    top.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    verbs = top.add_subparsers(dest='verb', required=True)

    sub = verbs.add_parser('run', help='run one episode')
    sub.add_argument('--config', help='run config JSON')
    sub.add_argument('--task')
    sub.add_argument('--seed', type=int)
    sub.add_argument('--max-steps', type=int)
    sub.add_argument('--policy', choices=('scripted', 'remote'))
    sub.add_argument('--endpoint', help='endpoint config JSON for the remote policy')
    sub.add_argument('--textualization', choices=[v.value for v in Verbosity])
    sub.add_argument('--recall-steps', type=int)
    sub.add_argument('--output-dir')
    sub.set_defaults(func=cmd_run)

    sub = verbs.add_parser('bench-retrieval', help='score the retrieval strategies')
    sub.add_argument('--cases', default=str(BENCH_DIR))
    sub.add_argument('--output-dir')
    sub.set_defaults(func=cmd_bench)

    sub = verbs.add_parser('compare-tokens', help='compare prompt tokens of two runs')
    sub.add_argument('config_a')
    sub.add_argument('config_b', nargs='?',
                     help='defaults to config_a with full textualization')
    sub.set_defaults(func=cmd_compare)

    sub = verbs.add_parser('validate-graph', help='check a graph document')
    sub.add_argument('graph', nargs='?', default=str(DEFAULT_GRAPH))
    sub.set_defaults(func=cmd_validate)

    sub = verbs.add_parser('replay', help='replay an event log and print the world hash')
    sub.add_argument('replay')
    sub.add_argument('--scenario', default=str(DEFAULT_SCENARIO))
    sub.add_argument('--seed', type=int)
    sub.add_argument('--manifest', help='run manifest holding the seed and expected hash')
    sub.add_argument('--expect', help='expected world hash')
    sub.set_defaults(func=cmd_replay)
    return top

def main(argv: Optional[List[str]] = None) -> int:
    args = parser().parse_args(argv)

    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root = logging.getLogger('vistawise')
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if args.verbose else logging.INFO)

    try:
        return args.func(args)
    except VistaException as err:
        logger.error(str(err))
        return err.exit_code if err.exit_code is not None else ExitCodes.TASK_FAILURE
    finally:
        root.removeHandler(handler)

if __name__ == '__main__':
    sys.exit(main())
