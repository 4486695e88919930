"""Value types exchanged between the detector adapter, perception and the
knowledge graph."""

import logging

from dataclasses import dataclass,field
from enum import Enum
from typing import Dict,Optional,Tuple

from vistawise.shared import (SCREEN_W,SCREEN_H,CROSSHAIR,DEF_K_W,DEF_K_H,
                              DEF_NEAR_BAND,canonical_name)
from vistawise.exceptions import VistaConfigError,VistaPerceptionError

logger = logging.getLogger('vistawise.perception.records')

class Space(str, Enum):
    ENVIRONMENT = 'environment'
    INVENTORY = 'inventory'

class RangeEstimate(Enum):
    """Coarse interaction range, ordered beyond < near < within."""

    BEYOND = 0
    NEAR = 1
    WITHIN = 2

    def __lt__(self, other):
        if not isinstance(other, RangeEstimate):
            return NotImplemented
        return self.value < other.value

    def __le__(self, other):
        if not isinstance(other, RangeEstimate):
            return NotImplemented
        return self.value <= other.value

    @property
    def word(self) -> str:
        return self.name.lower()

    @property
    def phrase(self) -> str:
        """Wording used by the prompt's range sentence."""

        return {RangeEstimate.BEYOND: 'greater than',
                RangeEstimate.NEAR: 'close to',
                RangeEstimate.WITHIN: 'less than'}[self]

    @classmethod
    def from_word(cls, word: str) -> 'RangeEstimate':
        return cls[word.upper()]

@dataclass(frozen=True)
class DetectionRecord:
    """One detector output. Environment records carry a bounding box,
    inventory records only a centre and optionally the stack count drawn on
    the icon."""

    label: str
    space: Space
    x: int
    y: int
    w: int = 0
    h: int = 0
    confidence: float = 1.0
    count: Optional[int] = None
    timestep: int = 0

    def check(self, index: int = None) -> None:
        """Raise VistaPerceptionError when the record violates its
        invariants.

        Args:
            index (int, optional): Position of the record in its batch, carried
                on the raised error.
        """

        problem = None
        if not self.label:
            problem = "empty label"
        elif not isinstance(self.space, Space):
            problem = f"unknown space {self.space!r}"
        elif not (0 <= self.x < SCREEN_W and 0 <= self.y < SCREEN_H):
            problem = f"centre ({self.x},{self.y}) outside the screen"
        elif not 0.0 <= self.confidence <= 1.0:
            problem = f"confidence {self.confidence} outside [0,1]"
        elif self.space is Space.ENVIRONMENT and (self.w <= 0 or self.h <= 0):
            problem = f"environment record with box ({self.w},{self.h})"
        elif self.space is Space.INVENTORY and (self.w != 0 or self.h != 0):
            problem = f"inventory record with box ({self.w},{self.h})"
        elif self.count is not None and self.count < 0:
            problem = f"negative count {self.count}"

        if problem is not None:
            raise VistaPerceptionError(f"record {index}: {problem}", index=index)

    def to_dict(self) -> dict:
        data = {'ts': self.timestep, 'label': self.label, 'space': self.space.value,
                'x': self.x, 'y': self.y, 'w': self.w, 'h': self.h,
                'confidence': self.confidence}
        if self.count is not None:
            data['count'] = self.count
        return data

@dataclass(frozen=True)
class RangeConfig:
    """Size thresholds deciding the interaction range. Per-class overrides map
    a canonical entity name to its own (k_w, k_h)."""

    k_w: float = DEF_K_W
    k_h: float = DEF_K_H
    near_band: float = DEF_NEAR_BAND
    overrides: Dict[str, Tuple[float, float]] = field(default_factory=dict)

    def __post_init__(self):
        if not (self.k_w > 0 and self.k_h > 0):
            raise VistaConfigError(f"range thresholds must be positive, got ({self.k_w},{self.k_h})")
        if not 0 < self.near_band < 1:
            raise VistaConfigError(f"near_band must lie in (0,1), got {self.near_band}")
        for name, (k_w, k_h) in self.overrides.items():
            if not (k_w > 0 and k_h > 0):
                raise VistaConfigError(f"range override for {name} must be positive")

    def for_label(self, name: str) -> 'RangeConfig':
        """Return the thresholds that apply to one entity class."""

        key = canonical_name(name)
        if key not in self.overrides:
            return self

        k_w, k_h = self.overrides[key]
        return RangeConfig(k_w, k_h, self.near_band)

    @classmethod
    def from_dict(cls, data: dict) -> 'RangeConfig':
        overrides = {canonical_name(k): (float(v['k_w']), float(v['k_h']))
                     for k, v in data.get('overrides', {}).items()}
        return cls(float(data.get('k_w', DEF_K_W)),
                   float(data.get('k_h', DEF_K_H)),
                   float(data.get('near_band', DEF_NEAR_BAND)),
                   overrides)

@dataclass(frozen=True)
class EnvEntityInfo:
    x: int
    y: int
    w: int
    h: int
    range: RangeEstimate

    def aligned(self, tolerance: float, crosshair=CROSSHAIR) -> bool:
        """True when the box centre lies within tolerance pixels of the
        crosshair."""

        dx = self.x - crosshair[0]
        dy = self.y - crosshair[1]
        return dx * dx + dy * dy <= tolerance * tolerance

@dataclass(frozen=True)
class InvEntityInfo:
    x: int
    y: int
    count: Optional[int] = None
    hotbar: Optional[int] = None

@dataclass(frozen=True)
class ObservationFrame:
    """One timestep of perception, split into environment and inventory
    spaces. Entries are sorted by name; sources maps each entry back to the
    index of the record it came from."""

    timestep: int
    env: Tuple[Tuple[str, EnvEntityInfo], ...] = ()
    inv: Tuple[Tuple[str, InvEntityInfo], ...] = ()
    crosshair: Tuple[int, int] = CROSSHAIR
    sources: Tuple[Tuple[str, str, int], ...] = ()

    @property
    def env_map(self) -> Dict[str, EnvEntityInfo]:
        return dict(self.env)

    @property
    def inv_map(self) -> Dict[str, InvEntityInfo]:
        return dict(self.inv)
