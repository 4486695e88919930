"""Input-event backends and skill execution.

A backend receives the events of one action in order and acknowledges each
one. Only simulated and recording backends ship; driving a real desktop
would be another Backend subclass."""

import json
import logging

from dataclasses import dataclass,field
from typing import IO,List,Optional

from vistawise.shared import vistaassert
from vistawise.exceptions import VistaBackendError
from .types import ActionDecision,InputEvent,EventKind,balanced
from .library import SkillLibrary,default_library

logger = logging.getLogger('vistawise.skills.backend')

class Backend:
    """The base class of the input-event sinks."""

    def begin(self, action: ActionDecision) -> None:
        pass

    def deliver(self, event: InputEvent) -> bool:
        """Consume one event, returning False to reject it."""

        raise NotImplementedError

    def end(self) -> List[str]:
        """Finish the action and return the effects it had, if known."""

        return []

class RecordingBackend(Backend):
    """Keeps every delivered event and optionally writes each one as a JSON
    line to a file object."""

    def __init__(self, fileobj: Optional[IO[str]] = None) -> None:
        self.fileobj = fileobj
        self.events: List[InputEvent] = []
        self.__skill = None

    def begin(self, action: ActionDecision) -> None:
        self.__skill = action.skill

    def deliver(self, event: InputEvent) -> bool:
        self.events.append(event)
        if self.fileobj is not None:
            record = event.to_dict()
            record['skill'] = self.__skill
            self.fileobj.write(json.dumps(record, sort_keys=True) + '\n')
        return True

@dataclass
class ExecutionReport:
    skill: str
    events: int
    duration_ms: int
    effects: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'skill': self.skill, 'events': self.events,
                'duration_ms': self.duration_ms, 'effects': list(self.effects)}

def execute(action: ActionDecision, backend: Backend, library: SkillLibrary = None) -> ExecutionReport:
    """Expand an action and deliver its events to the backend in order.

    Raises:
        VistaBackendError: the backend rejected an event
    """

    if library is None:
        library = default_library()
    events = library.expand(action)
    vistaassert(balanced(events), f"{action.skill} expands to unbalanced press/release events")

    backend.begin(action)
    for event in events:
        logger.debug(f"delivering {event}")
        if not backend.deliver(event):
            raise VistaBackendError(f"backend rejected {event} while executing {action.skill}")
    effects = backend.end()

    duration = sum(e.payload for e in events if e.kind is EventKind.WAIT)
    return ExecutionReport(action.skill, len(events), duration, effects)
