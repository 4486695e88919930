"""Value types of the skill layer: parameter and skill specs, parsed
actions, and the low-level input events skills expand to."""

import logging

from dataclasses import dataclass
from enum import Enum
from typing import Tuple,Union

from vistawise.shared import SCREEN_W

logger = logging.getLogger('vistawise.skills.types')

class ParamType(str, Enum):
    INTEGER = 'integer'
    PIXEL_COORD = 'pixel_coord'
    DURATION_MS = 'duration_ms'
    HOTBAR_KEY = 'hotbar_key'
    SIGNED_OFFSET = 'signed_offset'

    @property
    def bounds(self) -> Tuple[int, int]:
        """Inclusive range of accepted values."""

        return _BOUNDS[self]

_BOUNDS = {
    ParamType.INTEGER: (0, 64),
    ParamType.PIXEL_COORD: (0, SCREEN_W - 1),
    ParamType.DURATION_MS: (0, 60000),
    ParamType.HOTBAR_KEY: (1, 9),
    ParamType.SIGNED_OFFSET: (-SCREEN_W, SCREEN_W),
}

@dataclass(frozen=True)
class ParamSpec:
    name: str
    ptype: ParamType
    description: str = ''

@dataclass(frozen=True)
class SkillSpec:
    name: str
    params: Tuple[ParamSpec, ...]
    description: str

    @property
    def arity(self) -> int:
        return len(self.params)

    def signature(self) -> str:
        args = ', '.join(f"{p.name}: {p.ptype.value}" for p in self.params)
        return f"{self.name}({args})"

@dataclass(frozen=True)
class ActionDecision:
    skill: str
    args: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'args', tuple(self.args))

class EventKind(str, Enum):
    KEY_PRESS = 'key_press'
    KEY_RELEASE = 'key_release'
    MOUSE_MOVE = 'mouse_move'
    BUTTON_PRESS = 'mouse_button_press'
    BUTTON_RELEASE = 'mouse_button_release'
    WAIT = 'wait'

@dataclass(frozen=True)
class InputEvent:
    """One low-level input. The payload is a key name for key events, a
    (dx, dy) pair for mouse moves, a button name for button events and a
    duration in milliseconds for waits."""

    kind: EventKind
    payload: Union[str, int, Tuple[int, int]]

    def to_dict(self) -> dict:
        payload = list(self.payload) if isinstance(self.payload, tuple) else self.payload
        return {'kind': self.kind.value, 'payload': payload}

    @classmethod
    def from_dict(cls, data: dict) -> 'InputEvent':
        payload = data['payload']
        if isinstance(payload, list):
            payload = tuple(payload)
        return cls(EventKind(data['kind']), payload)

    def __str__(self):
        return f"{self.kind.value}({self.payload})"

def key_press(key: str) -> InputEvent:
    return InputEvent(EventKind.KEY_PRESS, key)

def key_release(key: str) -> InputEvent:
    return InputEvent(EventKind.KEY_RELEASE, key)

def tap(key: str) -> list:
    return [key_press(key), key_release(key)]

def mouse_move(dx: int, dy: int) -> InputEvent:
    return InputEvent(EventKind.MOUSE_MOVE, (int(dx), int(dy)))

def button_press(button: str) -> InputEvent:
    return InputEvent(EventKind.BUTTON_PRESS, button)

def button_release(button: str) -> InputEvent:
    return InputEvent(EventKind.BUTTON_RELEASE, button)

def click(button: str) -> list:
    return [button_press(button), button_release(button)]

def wait(ms: int) -> InputEvent:
    return InputEvent(EventKind.WAIT, int(ms))

def balanced(events) -> bool:
    """True when every key and button pressed in the stream is released
    after it, and nothing is released without being pressed."""

    held = set()
    for event in events:
        if event.kind in (EventKind.KEY_PRESS, EventKind.BUTTON_PRESS):
            token = (event.kind is EventKind.KEY_PRESS, event.payload)
            if token in held:
                return False
            held.add(token)
        elif event.kind in (EventKind.KEY_RELEASE, EventKind.BUTTON_RELEASE):
            token = (event.kind is EventKind.KEY_RELEASE, event.payload)
            if token not in held:
                return False
            held.remove(token)
    return not held
