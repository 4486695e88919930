"""Pinhole projection from the world onto detection records.

The focal length makes one pixel of screen offset near the crosshair worth
one pixel of mouse travel, so turn(dx, dy) with the observed offset centres
the target. A box is base_size * focal / distance pixels, so an entity of
base width bw reaches the within threshold k_w at focal * bw / k_w blocks."""

import logging
import math

from dataclasses import dataclass,field
from typing import Dict,List,Optional,Tuple

from vistawise.shared import (SCREEN_W,SCREEN_H,CROSSHAIR,DEF_FOCAL,FRUSTUM_DEG,
                              VIEW_DISTANCE)
from vistawise.perception.records import DetectionRecord,Space
from .world import WorldState,Entity,slot_position
from .scenario import Scenario

logger = logging.getLogger('vistawise.sim.camera')

MIN_DISTANCE = 0.1

@dataclass(frozen=True)
class CameraModel:
    focal: float = DEF_FOCAL
    screen: Tuple[int, int] = (SCREEN_W, SCREEN_H)
    base_sizes: Dict[str, Tuple[float, float]] = field(default_factory=dict)

    def __post_init__(self):
        if self.focal <= 0:
            raise ValueError("focal length must be positive")

@dataclass(frozen=True)
class Projection:
    x: int
    y: int
    w: int
    h: int
    distance: float

def wrap_degrees(angle: float) -> float:
    """Wrap into (-180, 180]."""

    angle = math.fmod(angle, 360.0)
    if angle > 180.0:
        angle -= 360.0
    elif angle <= -180.0:
        angle += 360.0
    return angle

def project(world: WorldState, entity: Entity, camera: CameraModel) -> Optional[Projection]:
    """Project one entity, or return None when it is mined, on another
    level, outside the frustum, too far away or off screen."""

    if entity.mined or entity.level != world.level:
        return None

    dx = entity.x - world.x
    dz = entity.z - world.z
    distance = math.hypot(dx, dz)
    if distance > VIEW_DISTANCE:
        return None
    distance = max(distance, MIN_DISTANCE)

    alpha = wrap_degrees(math.degrees(math.atan2(dx, dz)) - world.yaw)
    if abs(alpha) > FRUSTUM_DEG / 2:
        return None

    screen_w, screen_h = camera.screen
    x = round(screen_w / 2 + camera.focal * math.tan(math.radians(alpha)))
    # Entities are centred at eye height, so only pitch moves them vertically.
    if abs(world.pitch) >= 89.0:
        return None
    y = round(screen_h / 2 - camera.focal * math.tan(math.radians(world.pitch)))
    if not (0 <= x < screen_w and 0 <= y < screen_h):
        return None

    bw, bh = camera.base_sizes.get(entity.name, (1.0, 1.0))
    w = max(1, min(screen_w, round(bw * camera.focal / distance)))
    h = max(1, min(screen_h, round(bh * camera.focal / distance)))
    return Projection(x, y, w, h, distance)

def visible(world: WorldState, camera: CameraModel) -> List[Tuple[Entity, Projection]]:
    found = []
    for entity in world.entities:
        proj = project(world, entity, camera)
        if proj is not None:
            found.append((entity, proj))
    return found

def observe(world: WorldState, scenario: Scenario, camera: CameraModel = None,
            timestep: int = 0) -> List[DetectionRecord]:
    """Emit the detection records of the current view: environment records
    while the panel is closed, one inventory record per occupied slot while
    it is open."""

    camera = camera or CameraModel(base_sizes=scenario.base_sizes)
    records = []

    if world.inventory_open:
        for index, slot in enumerate(world.slots):
            if slot is None:
                continue
            x, y = slot_position(index)
            records.append(DetectionRecord(scenario.item_label(slot[0]), Space.INVENTORY, x, y,
                                           count=slot[1], timestep=timestep))
    else:
        for entity, proj in visible(world, camera):
            records.append(DetectionRecord(scenario.env_label(entity.name), Space.ENVIRONMENT,
                                           proj.x, proj.y, proj.w, proj.h, timestep=timestep))

    records.sort(key=lambda r: (r.label, r.x, r.y, r.w, r.h))
    return records
