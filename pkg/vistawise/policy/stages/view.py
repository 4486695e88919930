"""Read the structured sections of a synthesized prompt back into values the
scripted stages can test."""

import logging
import re

from dataclasses import dataclass,field
from typing import Dict,List,Optional,Tuple

from vistawise.shared import (CROSSHAIR,INVENTORY_HEADER,ENVIRONMENT_HEADER,
                              MEMORY_HEADER,EMPTY_SECTION)
from vistawise.exceptions import VistaResponseError

logger = logging.getLogger('vistawise.policy.stages.view')

_INV = re.compile(r'^(.+?): inv at \((\d+),(\d+)\)(?:, count (\d+))?(?:, hotbar (\d))?$')
_ENV = re.compile(r'^(.+?): env at \((\d+),(\d+)\) size \((\d+),(\d+)\), (within|near|beyond) interaction range$')
_MEMORY = re.compile(r'^step \d+: (.*)$')
_CROSSHAIR = re.compile(r'crosshair position is at \((\d+), (\d+)\)')

@dataclass(frozen=True)
class InvEntry:
    x: int
    y: int
    count: int = 1
    hotbar: Optional[int] = None

@dataclass(frozen=True)
class EnvEntry:
    x: int
    y: int
    w: int
    h: int
    range: str

@dataclass
class PromptView:
    inv: Dict[str, InvEntry] = field(default_factory=dict)
    env: Dict[str, EnvEntry] = field(default_factory=dict)
    # Most recent first.
    recent: List[str] = field(default_factory=list)
    crosshair: Tuple[int, int] = CROSSHAIR

    def count(self, item: str) -> int:
        entry = self.inv.get(item)
        return entry.count if entry else 0

    def has(self, item: str) -> bool:
        return self.count(item) > 0

def _section(prompt: str, header: str) -> List[str]:
    for line in prompt.splitlines():
        if line.startswith(header):
            body = line[len(header):].rstrip()
            if body.endswith('.'):
                body = body[:-1]
            if body == EMPTY_SECTION:
                return []
            return [part for part in body.split('; ') if part]
    raise VistaResponseError(f"prompt has no '{header.strip()}' section")

def parse_prompt(prompt: str) -> PromptView:
    """Parse the inventory, environment and memory sections.

    Raises:
        VistaResponseError: a section is missing or an entry is unreadable
    """

    view = PromptView()

    for entry in _section(prompt, INVENTORY_HEADER):
        match = _INV.match(entry)
        if match is None:
            raise VistaResponseError(f"unreadable inventory entry '{entry}'")
        name, x, y, count, hotbar = match.groups()
        view.inv[name] = InvEntry(int(x), int(y), int(count) if count else 1,
                                  int(hotbar) if hotbar else None)

    for entry in _section(prompt, ENVIRONMENT_HEADER):
        match = _ENV.match(entry)
        if match is None:
            raise VistaResponseError(f"unreadable environment entry '{entry}'")
        name, x, y, w, h, rng = match.groups()
        view.env[name] = EnvEntry(int(x), int(y), int(w), int(h), rng)

    for entry in _section(prompt, MEMORY_HEADER):
        match = _MEMORY.match(entry)
        if match is not None:
            view.recent.append(match.group(1))

    match = _CROSSHAIR.search(prompt)
    if match is not None:
        view.crosshair = (int(match.group(1)), int(match.group(2)))

    return view
