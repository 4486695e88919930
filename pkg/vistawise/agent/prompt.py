"""Prompt synthesis.

Sections appear in a fixed order: task, knowledge, inventory, environment,
skills, memory, cot, output_rule. Inventory, environment and memory each
fit on one line so the scripted policy can read them back."""

import logging

from collections import OrderedDict
from dataclasses import dataclass
from typing import Dict,Optional

from vistawise.shared import (INVENTORY_HEADER,ENVIRONMENT_HEADER,MEMORY_HEADER,
                              EMPTY_SECTION,OUTPUT_RULE)
from vistawise.perception import ObservationFrame
from vistawise.retrieval import PooledSubgraph,textualize,env_line,inv_line
from .state import AgentState

logger = logging.getLogger('vistawise.agent.prompt')

SECTIONS = ('task', 'knowledge', 'inventory', 'environment', 'skills',
            'memory', 'cot', 'output_rule')

KNOWLEDGE_HEADER = ('Here is some knowledge related to the current status that '
                    'may help clarify item-behavior dependencies: ')
SKILLS_HEADER = 'Available actions are defined as functions with the following formats and descriptions:'
COT_HEADER = 'Please address these questions to determine the next optimal action: '
DECIDE = 'Based on this reasoning, decide the best next action and calculate the required parameter values. '
NOT_VISIBLE = 'target not currently visible'

@dataclass(frozen=True)
class SynthesizedPrompt:
    text: str
    sections: Dict[str, str]

def _listing(lines) -> str:
    lines = list(lines)
    return '; '.join(lines) if lines else EMPTY_SECTION

def range_sentence(state: AgentState, frame: ObservationFrame) -> str:
    """The range clause for the first focus entity in view."""

    env = frame.env_map
    for name in state.task.focus:
        if name in env:
            return (f"If applicable, the distance between the player and the {name} "
                    f"is {env[name].range.phrase} the interactable range.")
    return (f"If applicable, the distance between the player and the "
            f"{state.task.focus[0]} is unknown, {NOT_VISIBLE}.")

def synthesize_prompt(state: AgentState, frame: ObservationFrame,
                      pooled: Optional[PooledSubgraph] =None) -> SynthesizedPrompt:
    """Fill the prompt template for one timestep.

    Args:
        state (AgentState): agent state, its graph already attributed
        frame (ObservationFrame): current observation
        pooled (PooledSubgraph, optional): retrieved knowledge. None leaves
            the knowledge slot empty, which is how the draft used for
            entity matching is built.

    Returns:
        SynthesizedPrompt: the text and its sections
    """

    task = (f"In Minecraft, player is focusing on {state.task.description}, requiring "
            f"strategic action choices based on the environment and inventory status. "
            f"The crosshair position is at ({frame.crosshair[0]}, {frame.crosshair[1]}) "
            f"in the screen. {range_sentence(state, frame)}")

    knowledge = EMPTY_SECTION
    if pooled is not None:
        knowledge = textualize(pooled, state.graph, state.verbosity) or EMPTY_SECTION

    memory = state.memory.recall(state.recall_steps)
    cot = ' '.join(state.task.cot_questions) or EMPTY_SECTION

    sections = OrderedDict()
    sections['task'] = task
    sections['knowledge'] = f"{KNOWLEDGE_HEADER}\n{knowledge}"
    sections['inventory'] = INVENTORY_HEADER + _listing(inv_line(n, i) for n, i in frame.inv) + '.'
    sections['environment'] = ENVIRONMENT_HEADER + _listing(env_line(n, i) for n, i in frame.env) + '.'
    sections['skills'] = f"{SKILLS_HEADER}\n{state.library.text()}"
    sections['memory'] = MEMORY_HEADER + _listing(str(r) for r in memory) + '.'
    sections['cot'] = COT_HEADER + cot
    sections['output_rule'] = DECIDE + OUTPUT_RULE

    return SynthesizedPrompt('\n\n'.join(sections.values()), dict(sections))
