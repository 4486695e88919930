# vim: ts=4 sw=4 et ai:
# -*- coding: utf8 -*-
"""This module runs episodes: it wires a config into an agent, a simulated
world and a decision provider, steps until the task milestones are reached
or the step budget runs out, and writes the run artifacts."""

import hashlib
import io
import json
import logging
import pathlib

from dataclasses import dataclass,field
from typing import Dict,List,Optional

from pathvalidate import validate_filename

from vistawise.shared import MILESTONES,ExitCodes
from vistawise.exceptions import VistaConfigError,VistaTransportError
from vistawise.graph import load_graph
from vistawise.retrieval import load_tasks
from vistawise.memory import MemoryStack
from vistawise.skills import default_library
from vistawise.policy import DecisionProvider,ScriptedPolicy,RemotePolicy,load_endpoint
from vistawise.sim import Simulator,SimulatedBackend,load_scenario
from vistawise.agent import Agent,AgentState
from .config import RunConfig

logger = logging.getLogger('vistawise.harness.runner')

ARTIFACTS = ('report.json', 'steps.jsonl', 'memory.jsonl', 'replay.jsonl')
MANIFEST = 'manifest.json'
# Fields that vary between otherwise identical runs.
TIMING_FIELDS = ('wall_time', 'duration')

@dataclass
class EpisodeReport:
    task: str
    seed: int
    policy: str
    textualization: str
    steps: List[dict] = field(default_factory=list)
    # goal -> timestep it was first reached
    timeline: Dict[str, int] = field(default_factory=dict)
    success: Dict[str, bool] = field(default_factory=dict)
    succeeded: bool = False
    prompt_tokens: int = 0
    metrics: dict = field(default_factory=dict)
    final_hash: str = ''
    error: Optional[str] = None
    exit_code: int = ExitCodes.SUCCESS
    wall_time: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        data = {'task': self.task, 'seed': self.seed, 'policy': self.policy,
                'textualization': self.textualization,
                'steps': len(self.steps), 'timeline': dict(self.timeline),
                'success': dict(self.success), 'succeeded': self.succeeded,
                'prompt_tokens': self.prompt_tokens, 'metrics': dict(self.metrics),
                'final_hash': self.final_hash, 'error': self.error,
                'exit_code': self.exit_code, 'wall_time': self.wall_time}
        if not timing:
            for key in TIMING_FIELDS:
                data.pop(key, None)
                data['metrics'].pop(key, None)
        return data

def make_policy(config: RunConfig) -> DecisionProvider:
    if config.policy == 'remote':
        return RemotePolicy(load_endpoint(config.endpoint))
    return ScriptedPolicy()

def run(config: RunConfig, policy: DecisionProvider = None) -> EpisodeReport:
    """Run one episode.

    Args:
        config (RunConfig): the run configuration
        policy (DecisionProvider, optional): overrides the configured policy

    Raises:
        VistaConfigError: the config or a file it references is invalid.
            Raised before any step is taken.

    Returns:
        EpisodeReport: the report. A policy transport failure ends the
            episode early and is recorded in it, not raised.
    """

    config.check()
    graph = load_graph(config.graph_file)
    tasks = load_tasks(config.tasks_file)
    if config.task not in tasks:
        raise VistaConfigError(f"unknown task {config.task}, known: {', '.join(sorted(tasks))}")
    task = tasks[config.task]
    scenario = load_scenario(config.scenario_file)
    policy = policy or make_policy(config)

    sim = Simulator(scenario, config.seed, range_cfg=config.range_config)
    backend = SimulatedBackend(sim)
    state = AgentState(graph, task, MemoryStack(), default_library(),
                       recall_steps=config.recall_steps, verbosity=config.verbosity,
                       range_cfg=config.range_config)
    agent = Agent(state, policy, backend)
    report = EpisodeReport(task.id, config.seed, policy.name, config.textualization)

    logger.info(f"Starting {task.id} with seed {config.seed} and the {policy.name} policy")
    agent.metrics.start()
    try:
        for _ in range(config.max_steps):
            records = backend.capture(state.timestep + 1)
            _, step = agent.step(records)

            reached = sim.milestones()
            step.milestones = sorted(reached)
            for goal, _item in MILESTONES:
                if goal in reached and goal not in report.timeline:
                    report.timeline[goal] = step.timestep
                    logger.info(f"Milestone {goal} reached at step {step.timestep}")
            report.steps.append(step.to_dict())

            if all(goal in reached for goal in task.milestones):
                break
    except VistaTransportError as err:
        logger.error(f"Policy transport failed: {err}")
        report.error = str(err)
        report.exit_code = err.exit_code
    finally:
        policy.close()

    agent.metrics.stop()
    agent.metrics.compute()

    reached = sim.milestones()
    report.success = {goal: goal in reached for goal, _item in MILESTONES}
    report.succeeded = report.error is None and all(goal in reached for goal in task.milestones)
    if report.error is None and not report.succeeded:
        report.exit_code = ExitCodes.TASK_FAILURE
    report.prompt_tokens = agent.metrics.prompt_tokens
    report.metrics = agent.metrics.to_dict()
    report.final_hash = sim.hash()
    report.wall_time = agent.metrics.duration

    logger.info(f"Episode {task.id} ended after {len(report.steps)} steps, "
                f"{len(report.timeline)} milestones, {report.prompt_tokens} prompt tokens")
    logger.info(f"Average tokens per step: {agent.metrics.tokens_per_step:.1f}")

    if config.output_dir is not None:
        write_artifacts(pathlib.Path(config.output_dir), report, agent, backend, config.range)
    return report

def _jsonl(records) -> str:
    return ''.join(json.dumps(r, sort_keys=True) + '\n' for r in records)

def write_artifacts(outdir: pathlib.Path, report: EpisodeReport, agent: Agent,
                    backend: SimulatedBackend, range_thresholds: dict = None) -> Dict[str, str]:
    """Write the run artifacts and a manifest of their SHA-256 digests. The
    manifest also keeps the seed and range thresholds a replay needs.

    Returns:
        dict: artifact name to digest
    """

    replay = io.StringIO()
    backend.write_replay(replay)

    texts = {
        'report.json': json.dumps(report.to_dict(), indent=2, sort_keys=True) + '\n',
        'steps.jsonl': _jsonl(report.steps),
        'memory.jsonl': agent.state.memory.to_jsonl(),
        'replay.jsonl': replay.getvalue(),
    }

    outdir.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for name in ARTIFACTS:
        validate_filename(name)
        data = texts[name].encode('utf8')
        (outdir / name).write_bytes(data)
        manifest[name] = hashlib.sha256(data).hexdigest()

    manifest_data = {'task': report.task, 'seed': report.seed, 'final_hash': report.final_hash,
                     'range': range_thresholds or {}, 'artifacts': manifest}
    (outdir / MANIFEST).write_text(json.dumps(manifest_data, indent=2, sort_keys=True) + '\n',
                                   encoding='utf8')
    logger.info(f"Wrote {len(manifest)} artifacts to {outdir}")
    return manifest

def read_replay(path: pathlib.Path) -> List[dict]:
    with open(path, 'r', encoding='utf8') as fileobj:
        return [json.loads(line) for line in fileobj if line.strip()]
