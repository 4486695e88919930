"""Event-driven blockworld simulator.

Input events are applied one at a time against a simulated clock that only
advances on wait events. How long a key or button was held decides how far
the agent walks and whether a block breaks. Events that have no effect are
no-ops with a logged reason."""

import logging
import math

from collections import Counter
from typing import List,Optional,Tuple

from vistawise.shared import (CROSSHAIR,SCREEN_W,SCREEN_H,SLOT_HALF,SLOT_PITCH,
                              GRID_ORIGIN,GRID_SIZE,GRID_OUTPUT,FURNACE_INPUT,
                              FURNACE_FUEL,FURNACE_OUTPUT,WALK_SPEED,MOUSE_DEG_PER_PX,
                              ALIGN_TOLERANCE,HOTBAR_SLOTS)
from vistawise.perception.records import RangeConfig,RangeEstimate
from vistawise.perception.range import estimate_range
from vistawise.skills.types import InputEvent,EventKind
from .scenario import Scenario
from .world import WorldState,MAIN_SLOTS,slot_at,reset,milestones,world_hash
from .camera import CameraModel,visible,observe

logger = logging.getLogger('vistawise.sim.simulator')

# Looking at least this far down makes a left hold dig downwards.
DIG_DOWN_PITCH = 60.0

def _near(x: int, y: int, centre: Tuple[int, int]) -> bool:
    return abs(x - centre[0]) < SLOT_HALF and abs(y - centre[1]) < SLOT_HALF

def _panel_cell(x: int, y: int) -> Optional[str]:
    for row in range(GRID_SIZE):
        for col in range(GRID_SIZE):
            if _near(x, y, (GRID_ORIGIN[0] + col * SLOT_PITCH, GRID_ORIGIN[1] + row * SLOT_PITCH)):
                return f"grid:{row}:{col}"
    if _near(x, y, FURNACE_INPUT):
        return 'furnace:input'
    if _near(x, y, FURNACE_FUEL):
        return 'furnace:fuel'
    return None

class Simulator:
    """Owns one mutable world and applies input events to it."""

    def __init__(self, scenario: Scenario, seed: int = 0, camera: CameraModel = None,
                 range_cfg: RangeConfig = None) -> None:
        self.scenario = scenario
        self.camera = camera or CameraModel(base_sizes=scenario.base_sizes)
        # Must match the thresholds perception uses.
        self.range_cfg = range_cfg or RangeConfig()
        self.world = reset(seed, scenario)

    def reset(self, seed: int) -> WorldState:
        self.world = reset(seed, self.scenario)
        return self.world

    def observe(self, timestep: int = 0):
        return observe(self.world, self.scenario, self.camera, timestep)

    def milestones(self) -> set:
        return milestones(self.world)

    def hash(self) -> str:
        return world_hash(self.world)

    def apply_events(self, events: List[InputEvent]) -> List[str]:
        effects = []
        for event in events:
            effects.extend(self.apply_event(event))
        return effects

    def apply_event(self, event: InputEvent) -> List[str]:
        """Apply one event and return the effects it had."""

        world = self.world
        kind, payload = event.kind, event.payload
        effects = []

        if kind is EventKind.WAIT:
            world.clock_ms += int(payload)

        elif kind is EventKind.KEY_PRESS:
            world.keys_down[payload] = world.clock_ms
            if payload == 'e':
                effects.append(self._toggle_panel())
            elif payload.isdigit() and 1 <= int(payload) <= HOTBAR_SLOTS:
                world.selected = int(payload)

        elif kind is EventKind.KEY_RELEASE:
            start = world.keys_down.pop(payload, world.clock_ms)
            if payload == 'w' and not world.inventory_open:
                effects.append(self._walk(world.clock_ms - start))

        elif kind is EventKind.MOUSE_MOVE:
            dx, dy = payload
            if world.inventory_open:
                world.cursor = (min(max(world.cursor[0] + dx, 0), SCREEN_W - 1),
                                min(max(world.cursor[1] + dy, 0), SCREEN_H - 1))
            else:
                world.yaw = (world.yaw + MOUSE_DEG_PER_PX * dx) % 360.0
                world.pitch = min(90.0, max(-90.0, world.pitch + MOUSE_DEG_PER_PX * dy))

        elif kind is EventKind.BUTTON_PRESS:
            world.buttons_down[payload] = world.clock_ms
            if world.inventory_open:
                effects.append(self._click(payload))
            elif payload == 'right':
                effects.append(self._use())

        elif kind is EventKind.BUTTON_RELEASE:
            start = world.buttons_down.pop(payload, world.clock_ms)
            if payload == 'left' and not world.inventory_open:
                effects.append(self._mine(world.clock_ms - start))

        for effect in effects:
            if effect.startswith('no effect'):
                logger.warning(f"{event}: {effect}")
            else:
                logger.debug(f"{event}: {effect}")
        return effects

    def _toggle_panel(self) -> str:
        world = self.world
        if not world.inventory_open:
            world.inventory_open = True
            world.cursor = CROSSHAIR
            world.held = None
            return 'inventory opened'

        # Whatever is left in the crafting cells goes back to the inventory.
        for name in sorted(world.cells):
            item, n = world.cells[name]
            world.add(item, n)
        world.cells = {}
        world.inventory_open = False
        world.held = None
        return 'inventory closed'

    def _walk(self, held_ms: int) -> str:
        world = self.world
        distance = WALK_SPEED * held_ms / 1000.0
        world.x += distance * math.sin(math.radians(world.yaw))
        world.z += distance * math.cos(math.radians(world.yaw))
        return f"walked {distance:.2f} blocks"

    def _target(self):
        """Nearest minable entity in interaction range under the crosshair.
        Hazards such as water and lava are looked through."""

        best = None
        for entity, proj in visible(self.world, self.camera):
            if entity.name not in self.scenario.mine_times:
                continue
            if estimate_range(proj.w, proj.h, self.range_cfg.for_label(entity.name)) is not RangeEstimate.WITHIN:
                continue
            if math.hypot(proj.x - CROSSHAIR[0], proj.y - CROSSHAIR[1]) > ALIGN_TOLERANCE:
                continue
            if best is None or proj.distance < best[1].distance:
                best = (entity, proj)
        return best[0] if best else None

    def _mine(self, held_ms: int) -> str:
        world = self.world
        scenario = self.scenario
        tool = world.tool

        if world.pitch >= DIG_DOWN_PITCH:
            ms = scenario.mine_time(tool, 'stone')
            if ms is None:
                return f"no effect: wrong tool {tool} for stone"
            room = scenario.bedrock_level - 1 - world.level
            if room <= 0:
                return "no effect: bedrock below"
            levels = min(held_ms // ms, room)
            if levels == 0:
                return "no effect: press too short"
            world.level += levels
            world.add(scenario.drops.get('stone', 'cobblestone'), levels * scenario.cobble_per_level)
            return f"dug down {levels} level(s) to level {world.level}"

        entity = self._target()
        if entity is not None:
            ms = scenario.mine_time(tool, entity.name)
            if ms is None:
                return f"no effect: wrong tool {tool} for {entity.name}"
            if held_ms < ms:
                return f"no effect: press too short for {entity.name}"
            entity.mined = True
            drop = scenario.drops.get(entity.name)
            if drop:
                world.add(drop)
            return f"mined {entity.name}"

        if world.level > 0:
            ms = scenario.mine_time(tool, 'stone')
            if ms is None:
                return f"no effect: wrong tool {tool} for stone"
            if held_ms < ms:
                return "no effect: press too short"
            world.add(scenario.drops.get('stone', 'cobblestone'), scenario.tunnel_yield)
            return "dug tunnel"

        return "no effect: nothing to mine"

    def _use(self) -> str:
        """Right press with the panel closed: place a block underfoot while
        jumping, otherwise place the held station."""

        world = self.world
        tool = world.tool
        index = MAIN_SLOTS + world.selected - 1

        if 'space' in world.keys_down:
            if tool != 'cobblestone':
                return "no effect: no cobblestone selected"
            if world.level == 0:
                return "no effect: already at the surface"
            world.take(index)
            world.level -= 1
            return f"climbed to level {world.level}"

        if tool in ('crafting table', 'furnace'):
            world.take(index)
            if tool not in world.stations:
                world.stations.append(tool)
                world.stations.sort()
            return f"placed {tool}"

        return "no effect: nothing to place"

    def _click(self, button: str) -> str:
        world = self.world
        x, y = world.cursor

        if button == 'right':
            cell = _panel_cell(x, y)
            if cell is None:
                return "no effect: not a crafting cell"
            if world.held is None or world.slots[world.held] is None:
                return "no effect: nothing held"
            item = world.slots[world.held][0]
            if cell in world.cells and world.cells[cell][0] != item:
                return "no effect: cell occupied"
            world.take(world.held)
            world.cells.setdefault(cell, [item, 0])[1] += 1
            return f"put {item} in {cell}"

        if _near(x, y, GRID_OUTPUT):
            return self._craft()
        if _near(x, y, FURNACE_OUTPUT):
            return self._smelt()

        index = slot_at(x, y)
        if index is None:
            return "no effect: empty spot"
        if world.slots[index] is None:
            world.held = None
            return "no effect: empty slot"

        if 'shift' in world.keys_down:
            target = world.free_slot(hotbar=index < MAIN_SLOTS)
            if target is None:
                return "no effect: no free slot"
            world.slots[target], world.slots[index] = world.slots[index], None
            world.held = None
            return f"moved {world.slots[target][0]} to slot {target}"

        world.held = index
        return f"picked {world.slots[index][0]}"

    def _craft(self) -> str:
        world = self.world
        grid = Counter()
        for name, (item, n) in world.cells.items():
            if name.startswith('grid:'):
                grid[item] += n

        recipe = self.scenario.recipes.match_grid(grid)
        if recipe is None:
            return "no effect: missing input"
        if recipe.station != 'none' and recipe.station not in world.stations:
            return f"no effect: missing station {recipe.station}"

        world.cells = {k: v for k, v in world.cells.items() if not k.startswith('grid:')}
        world.add(recipe.product, recipe.count)
        return f"crafted {recipe.count} {recipe.product}"

    def _smelt(self) -> str:
        world = self.world
        source = world.cells.get('furnace:input')
        fuel = world.cells.get('furnace:fuel')

        recipe = self.scenario.recipes.smelting(source[0]) if source else None
        if recipe is None:
            return "no effect: missing input"
        if fuel is None or fuel[0] not in recipe.fuel:
            return "no effect: missing fuel"
        if 'furnace' not in world.stations:
            return "no effect: missing station furnace"

        for name in ('furnace:input', 'furnace:fuel'):
            world.cells[name][1] -= 1
            if world.cells[name][1] == 0:
                del world.cells[name]
        world.add(recipe.product, recipe.count)
        return f"smelted {recipe.product}"

def apply_events(world: WorldState, events: List[InputEvent], scenario: Scenario,
                 camera: CameraModel = None, range_cfg: RangeConfig = None) -> Tuple[WorldState, List[str]]:
    """Apply events to a copy of world, returning the new world and the effect
    log."""

    sim = Simulator(scenario, world.seed, camera, range_cfg)
    sim.world = world.copy()
    effects = sim.apply_events(events)
    return sim.world, effects
