import logging

from dataclasses import dataclass,field

from vistawise.shared import RECALL_STEPS
from vistawise.graph import CrossModalGraph
from vistawise.retrieval import TaskSpec,Verbosity
from vistawise.memory import MemoryStack
from vistawise.skills import SkillLibrary,default_library
from vistawise.perception import RangeConfig

logger = logging.getLogger('vistawise.agent.state')

@dataclass
class AgentState:
    """Everything one agent carries between timesteps. timestep counts the
    steps taken so far; graph holds the attributes of the latest frame."""

    graph: CrossModalGraph
    task: TaskSpec
    memory: MemoryStack = field(default_factory=MemoryStack)
    library: SkillLibrary = field(default_factory=default_library)
    timestep: int = 0
    recall_steps: int = RECALL_STEPS
    verbosity: Verbosity = Verbosity.NAMES
    range_cfg: RangeConfig = field(default_factory=RangeConfig)

    def __post_init__(self):
        self.task.check(self.graph)
        self.verbosity = Verbosity(self.verbosity)

    @property
    def trivial(self) -> bool:
        """True when the task targets the player itself."""

        return self.task.target == self.graph.player_node
