import logging

from dataclasses import dataclass
from typing import NamedTuple,Optional

from vistawise.perception.records import EnvEntityInfo,InvEntityInfo

logger = logging.getLogger('vistawise.graph.nodes')

@dataclass(frozen=True)
class EntityNode:
    """A node of the knowledge graph together with the visual attributes it
    carries at the current timestep."""

    name: str
    kind: str
    env_attr: Optional[EnvEntityInfo] = None
    inv_attr: Optional[InvEntityInfo] = None

    @property
    def attributed(self) -> bool:
        return self.env_attr is not None or self.inv_attr is not None

class RelationEdge(NamedTuple):
    source: str
    target: str
    relation: str

    def __str__(self):
        return f"{self.source} --{self.relation}--> {self.target}"

class Finding(NamedTuple):
    """One problem reported by graph validation."""

    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"
