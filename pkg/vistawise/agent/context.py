"""This module implements the per-timestep agent loop. An Agent wraps an
AgentState, a decision provider and an input-event backend; each call to
step() consumes one batch of detections and executes exactly one action."""

import hashlib
import logging

from dataclasses import dataclass,field
from typing import List,Optional,Tuple

from vistawise.shared import (REPROMPT_RETRIES,FALLBACK_SKILL,FALLBACK_ARGS,
                              OUTPUT_RULE,estimate_tokens)
from vistawise.exceptions import (VistaActionError,VistaBackendError,
                                  VistaSkillError,VistaFallbackExhausted)
from vistawise.perception import DetectionRecord,partition_observations
from vistawise.retrieval import retrieve
from vistawise.memory import DecisionRecord
from vistawise.skills import (ActionDecision,Backend,execute,
                              format_action,parse_action)
from vistawise.policy import DecisionProvider,PolicyRequest
from .state import AgentState
from .prompt import synthesize_prompt
from .metrics import EpisodeMetrics

logger = logging.getLogger('vistawise.agent.context')

TRIVIAL_NOTE = 'task trivially satisfied'
FALLBACK = ActionDecision(FALLBACK_SKILL, FALLBACK_ARGS)

@dataclass
class StepReport:
    timestep: int
    pooled_nodes: int
    prompt_tokens: int
    prompt_sha256: str
    action: Optional[str]
    attempts: int = 0
    fallback: bool = False
    note: Optional[str] = None
    execution: Optional[dict] = None
    milestones: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'timestep': self.timestep, 'pooled_nodes': self.pooled_nodes,
                'prompt_tokens': self.prompt_tokens, 'prompt_sha256': self.prompt_sha256,
                'action': self.action, 'attempts': self.attempts,
                'fallback': self.fallback, 'note': self.note,
                'execution': self.execution, 'milestones': sorted(self.milestones)}

def reprompt(prompt: str, err: VistaActionError) -> str:
    return (f"{prompt}\n\nYour previous output could not be used ({err.reason}: {err}). "
            f"{OUTPUT_RULE}")

class Agent:
    """The agent loop. Policy transport errors propagate to the caller; a
    parse failure is retried, then replaced by a small fallback turn."""

    def __init__(self, state: AgentState, policy: DecisionProvider, backend: Backend,
                 retries: int = REPROMPT_RETRIES) -> None:
        self.state = state
        self.policy = policy
        self.backend = backend
        self.retries = retries
        self.metrics = EpisodeMetrics()
        self.last_prompt = None

    def __str__(self):
        return f"{self.state.task.id} at step {self.state.timestep} with {self.policy.name}"

    def step(self, detections: List[DetectionRecord]) -> Tuple[Optional[ActionDecision], StepReport]:
        """Run one timestep: partition, embed, retrieve, synthesize, decide,
        parse, execute, remember.

        Args:
            detections (list): detection records of this timestep

        Raises:
            VistaTransportError: the policy could not be reached
            VistaFallbackExhausted: the fallback action could not run either

        Returns:
            tuple: the executed action (None for a trivial task) and the
                step report
        """

        state = self.state
        t = state.timestep + 1

        frame = partition_observations(detections, graph=state.graph, timestep=t,
                                       cfg=state.range_cfg)
        state.graph = state.graph.embed_visual_attributes(frame)

        if state.trivial:
            logger.info(f"Step {t}: {TRIVIAL_NOTE}")
            state.memory.push(DecisionRecord(t, 'none', TRIVIAL_NOTE))
            state.timestep = t
            self.metrics.steps += 1
            return None, StepReport(t, 1, 0, '', None, note=TRIVIAL_NOTE)

        draft = synthesize_prompt(state, frame)
        pooled = retrieve(state.graph, state.task, draft.text)
        prompt = synthesize_prompt(state, frame, pooled).text
        self.last_prompt = prompt
        logger.debug(f"Step {t}: pooled {len(pooled.nodes)} nodes")

        action, attempts, tokens, error = self.decide(prompt, t)
        report = StepReport(t, len(pooled.nodes), tokens,
                            hashlib.sha256(prompt.encode('utf8')).hexdigest(),
                            None, attempts=attempts)

        if action is not None:
            try:
                execution = execute(action, self.backend, state.library)
            except VistaBackendError as err:
                logger.warning(f"Step {t}: {err}")
                action, error = None, err

        if action is None:
            self.metrics.fallbacks += 1
            report.fallback = True
            reason = getattr(error, 'reason', None) or 'backend rejected'
            report.note = f"fallback after {attempts} unusable outputs, {reason}"
            logger.warning(f"Step {t}: {report.note}")
            action = FALLBACK
            try:
                execution = execute(action, self.backend, state.library)
            except (VistaBackendError, VistaSkillError, KeyError) as err:
                raise VistaFallbackExhausted(f"fallback {format_action(FALLBACK)} failed: {err}")

        report.action = format_action(action)
        report.execution = execution.to_dict()
        state.memory.push(DecisionRecord(t, report.action, report.note))
        state.timestep = t
        self.metrics.steps += 1

        logger.info(f"Step {t}: {report.action}")
        return action, report

    def decide(self, prompt: str, t: int):
        """Ask the policy, reprompting on unparseable output.

        Returns:
            tuple: (action or None, attempts, tokens sent, last parse error)
        """

        text = prompt
        tokens = 0
        error = None
        attempts = 0

        for attempt in range(self.retries + 1):
            attempts += 1
            tokens += estimate_tokens(text)
            self.metrics.policy_calls += 1
            if attempt:
                self.metrics.reprompts += 1

            response = self.policy.decide(PolicyRequest(text, metadata={'task': self.state.task.id,
                                                                        'timestep': t}))
            try:
                action = parse_action(response.text, self.state.library)
            except VistaActionError as err:
                logger.warning(f"Step {t}: unusable policy output ({err.reason}): {err}")
                error = err
                text = reprompt(prompt, err)
                continue

            self.metrics.prompt_tokens += tokens
            return action, attempts, tokens, None

        self.metrics.prompt_tokens += tokens
        return None, attempts, tokens, error

def step(state: AgentState, detections: List[DetectionRecord], policy: DecisionProvider,
         env: Backend) -> Tuple[AgentState, Optional[ActionDecision], StepReport]:
    agent = Agent(state, policy, env)
    action, report = agent.step(detections)
    return agent.state, action, report
