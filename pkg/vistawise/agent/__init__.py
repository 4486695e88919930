"""The agent: prompt synthesis and the per-timestep decision loop."""

from .state import AgentState
from .prompt import SynthesizedPrompt,synthesize_prompt,range_sentence,SECTIONS
from .context import Agent,StepReport,step,FALLBACK,TRIVIAL_NOTE
from .metrics import EpisodeMetrics
