import json
import logging
import pathlib

from dataclasses import dataclass,field
from typing import Dict,Tuple,Union

from vistawise.shared import DATA_DIR,MILESTONES,canonical_name
from vistawise.exceptions import VistaConfigError,VistaRetrievalError

logger = logging.getLogger('vistawise.retrieval.task')

DEFAULT_TASKS = DATA_DIR / 'tasks.json'

_GOALS = frozenset(goal for goal, _ in MILESTONES)

@dataclass(frozen=True)
class TaskSpec:
    """A task: its target entity, the prose that instructs the policy, and
    the milestones that end an episode. focus lists the entities whose
    range phrase the prompt reports, first attributed one wins."""

    id: str
    target: str
    description: str
    cot_questions: Tuple[str, ...] = ()
    focus: Tuple[str, ...] = ()
    milestones: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'target', canonical_name(self.target))
        object.__setattr__(self, 'cot_questions', tuple(self.cot_questions))
        object.__setattr__(self, 'focus', tuple(canonical_name(f) for f in self.focus) or (self.target,))
        object.__setattr__(self, 'milestones', tuple(self.milestones))

        if not self.description.strip():
            raise VistaConfigError(f"task {self.id} has an empty description")
        unknown = [m for m in self.milestones if m not in _GOALS]
        if unknown:
            raise VistaConfigError(f"task {self.id} names unknown milestones {unknown}")

    def check(self, graph: 'CrossModalGraph') -> None:
        """Raise VistaRetrievalError when the target is not a graph node."""

        if not graph.has_node(self.target):
            raise VistaRetrievalError(f"task {self.id}: unknown target '{self.target}'")

    @classmethod
    def from_dict(cls, data: dict) -> 'TaskSpec':
        try:
            return cls(id=str(data['id']),
                       target=str(data['target']),
                       description=str(data['description']),
                       cot_questions=tuple(data.get('cot_questions', ())),
                       focus=tuple(data.get('focus', ())),
                       milestones=tuple(data.get('milestones', ())))
        except KeyError as err:
            raise VistaConfigError(f"task definition is missing field {err}")

    def to_dict(self) -> dict:
        return {'id': self.id, 'target': self.target, 'description': self.description,
                'cot_questions': list(self.cot_questions), 'focus': list(self.focus),
                'milestones': list(self.milestones)}

def load_tasks(path: Union[str, pathlib.Path] = DEFAULT_TASKS) -> Dict[str, TaskSpec]:
    """Read a task file, a JSON list of task definitions, keyed by id."""

    path = pathlib.Path(path)
    try:
        data = json.loads(path.read_text(encoding='utf8'))
    except (OSError, ValueError) as err:
        raise VistaConfigError(f"can not read task file {path}: {err}")

    tasks = {}
    for entry in data:
        task = TaskSpec.from_dict(entry)
        if task.id in tasks:
            raise VistaConfigError(f"duplicate task id {task.id} in {path}")
        tasks[task.id] = task

    logger.debug(f"loaded tasks {sorted(tasks)} from {path}")
    return tasks
