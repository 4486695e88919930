"""Ground truth of the blockworld: the agent pose, the entities, the
inventory and the open panel.

The world is 2.5-D: entities sit on an (x, z) plane at discrete depth
levels, level 0 being the surface. Yaw is a compass bearing, 0 facing +z and
90 facing +x; positive pitch looks down."""

import copy
import hashlib
import json
import logging
import math
import random

from dataclasses import dataclass,field,asdict
from typing import Dict,List,Optional,Tuple

from vistawise.shared import (CROSSHAIR,SLOT_PITCH,SLOT_HALF,MAIN_ORIGIN,MAIN_ROWS,
                              HOTBAR_SLOTS,HOTBAR_Y,MILESTONES)
from .scenario import Scenario

logger = logging.getLogger('vistawise.sim.world')

MAIN_SLOTS = MAIN_ROWS * HOTBAR_SLOTS
ALL_SLOTS = MAIN_SLOTS + HOTBAR_SLOTS

def slot_position(index: int) -> Tuple[int, int]:
    """Screen centre of an inventory slot. Slots 0..26 are the main rows,
    27..35 the hotbar."""

    if index < MAIN_SLOTS:
        row, col = divmod(index, HOTBAR_SLOTS)
        return (MAIN_ORIGIN[0] + col * SLOT_PITCH, MAIN_ORIGIN[1] + row * SLOT_PITCH)
    return (MAIN_ORIGIN[0] + (index - MAIN_SLOTS) * SLOT_PITCH, HOTBAR_Y)

def slot_at(x: int, y: int) -> Optional[int]:
    for index in range(ALL_SLOTS):
        sx, sy = slot_position(index)
        if abs(x - sx) < SLOT_HALF and abs(y - sy) < SLOT_HALF:
            return index
    return None

@dataclass
class Entity:
    name: str
    x: float
    z: float
    level: int
    mined: bool = False

@dataclass
class WorldState:
    seed: int
    scenario: str
    x: float = 0.0
    z: float = 0.0
    level: int = 0
    yaw: float = 0.0
    pitch: float = 0.0
    entities: List[Entity] = field(default_factory=list)
    # [item, count] or None per slot
    slots: List[Optional[list]] = field(default_factory=lambda: [None] * ALL_SLOTS)
    selected: int = 1
    inventory_open: bool = False
    cursor: Tuple[int, int] = CROSSHAIR
    held: Optional[int] = None
    # Crafting grid and furnace cells, keyed by cell name.
    cells: Dict[str, list] = field(default_factory=dict)
    stations: List[str] = field(default_factory=list)
    obtained: List[str] = field(default_factory=list)
    clock_ms: int = 0
    keys_down: Dict[str, int] = field(default_factory=dict)
    buttons_down: Dict[str, int] = field(default_factory=dict)

    def count(self, item: str) -> int:
        return sum(s[1] for s in self.slots if s is not None and s[0] == item)

    def slot_of(self, item: str) -> Optional[int]:
        for index, slot in enumerate(self.slots):
            if slot is not None and slot[0] == item:
                return index
        return None

    def free_slot(self, hotbar: bool = False) -> Optional[int]:
        span = range(MAIN_SLOTS, ALL_SLOTS) if hotbar else range(MAIN_SLOTS)
        for index in span:
            if self.slots[index] is None:
                return index
        return None

    def add(self, item: str, n: int = 1) -> None:
        """Add items, stacking onto an existing slot or taking the lowest
        free main slot (the hotbar when the main rows are full)."""

        if n <= 0:
            return
        index = self.slot_of(item)
        if index is None:
            index = self.free_slot()
            if index is None:
                index = self.free_slot(hotbar=True)
            if index is None:
                logger.warning(f"inventory full, dropping {n} {item}")
                return
            self.slots[index] = [item, 0]
        self.slots[index][1] += n

        if item not in self.obtained:
            self.obtained.append(item)
            self.obtained.sort()
            logger.info(f"obtained {item} for the first time")

    def take(self, index: int, n: int = 1) -> Optional[str]:
        """Remove up to n items from one slot and return the item name."""

        slot = self.slots[index]
        if slot is None:
            return None
        item = slot[0]
        slot[1] -= n
        if slot[1] <= 0:
            self.slots[index] = None
            if self.held == index:
                self.held = None
        return item

    def remove(self, item: str, n: int = 1) -> bool:
        if self.count(item) < n:
            return False
        while n > 0:
            index = self.slot_of(item)
            taken = min(n, self.slots[index][1])
            self.take(index, taken)
            n -= taken
        return True

    @property
    def tool(self) -> Optional[str]:
        """Item in the selected hotbar slot."""

        slot = self.slots[MAIN_SLOTS + self.selected - 1]
        return slot[0] if slot is not None else None

    def inventory(self) -> Dict[str, int]:
        totals = {}
        for slot in self.slots:
            if slot is not None:
                totals[slot[0]] = totals.get(slot[0], 0) + slot[1]
        for item, n in self.cells.values():
            totals[item] = totals.get(item, 0) + n
        return totals

    def copy(self) -> 'WorldState':
        return copy.deepcopy(self)

    def to_dict(self) -> dict:
        return asdict(self)

def reset(seed: int, scenario: Scenario) -> WorldState:
    """Build the initial world of a scenario. The same seed and scenario
    always give the same world."""

    rng = random.Random(seed)
    start = scenario.start
    world = WorldState(seed=seed, scenario=scenario.name,
                       x=start.get('x', 0.0), z=start.get('z', 0.0),
                       yaw=start.get('yaw', 0.0) % 360.0, pitch=start.get('pitch', 0.0))

    for place in scenario.entities:
        world.entities.append(Entity(place.name, place.x, place.z, place.level))

    for gen in scenario.generate:
        for level in range(gen.levels[0], gen.levels[1] + 1):
            for _ in range(gen.count):
                bearing = math.radians(rng.uniform(0.0, 360.0))
                r = rng.uniform(*gen.radius)
                world.entities.append(Entity(gen.name, round(r * math.sin(bearing), 3),
                                             round(r * math.cos(bearing), 3), level))

    logger.debug(f"reset {scenario.name} with seed {seed}: {len(world.entities)} entities")
    return world

def milestones(world: WorldState) -> set:
    """Goals whose item has ever entered the inventory."""

    return {goal for goal, item in MILESTONES if item in world.obtained}

def world_hash(world: WorldState) -> str:
    text = json.dumps(world.to_dict(), sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(text.encode('utf8')).hexdigest()
