import json
import logging

from collections import deque
from dataclasses import dataclass,asdict
from typing import Iterable,List,Optional,Tuple

from vistawise.shared import MEMORY_CAPACITY,RECALL_STEPS
from vistawise.exceptions import VistaMemoryError

logger = logging.getLogger('vistawise.memory.stack')

@dataclass(frozen=True)
class DecisionRecord:
    timestep: int
    action_text: str
    note: Optional[str] = None

    def __str__(self):
        line = f"step {self.timestep}: {self.action_text}"
        if self.note:
            line += f" ({self.note})"
        return line

class MemoryStack:
    """LIFO history of decisions. Recall is a non-destructive read of the
    most recent records, so the same history can be recalled every
    timestep."""

    def __init__(self, capacity: Optional[int] = MEMORY_CAPACITY) -> None:
        if capacity is not None and capacity <= 0:
            raise VistaMemoryError(f"capacity must be positive, got {capacity}")
        self.capacity = capacity
        self.__records = deque(maxlen=capacity)

    def push(self, record: DecisionRecord) -> 'MemoryStack':
        """Put a record on top, evicting the bottom one when full.

        Raises:
            VistaMemoryError: the record's timestep is not above the top's
        """

        if self.__records and record.timestep <= self.__records[-1].timestep:
            raise VistaMemoryError(
                f"timestep {record.timestep} is not after the top timestep {self.__records[-1].timestep}")

        if self.capacity is not None and len(self.__records) == self.capacity:
            logger.debug(f"memory full, evicting step {self.__records[0].timestep}")
        self.__records.append(record)
        return self

    def recall(self, steps: int = RECALL_STEPS) -> List[DecisionRecord]:
        """Return up to `steps` records, most recent first."""

        if steps < 0:
            raise VistaMemoryError(f"recall steps must be non-negative, got {steps}")

        n = min(steps, len(self.__records))
        return [self.__records[-1 - i] for i in range(n)]

    def depth(self) -> int:
        return len(self.__records)

    def __len__(self):
        return len(self.__records)

    @property
    def top(self) -> Optional[DecisionRecord]:
        return self.__records[-1] if self.__records else None

    def snapshot(self) -> Tuple[DecisionRecord, ...]:
        """Immutable copy of the records, bottom to top."""

        return tuple(self.__records)

    def to_jsonl(self) -> str:
        return ''.join(json.dumps(asdict(r), sort_keys=True) + '\n' for r in self.__records)

    @classmethod
    def from_jsonl(cls, lines: Iterable[str], capacity: Optional[int] = MEMORY_CAPACITY) -> 'MemoryStack':
        stack = cls(capacity)
        for line in lines:
            if line.strip():
                stack.push(DecisionRecord(**json.loads(line)))
        return stack

def push(stack: MemoryStack, record: DecisionRecord) -> MemoryStack:
    return stack.push(record)

def recall(stack: MemoryStack, steps: int = RECALL_STEPS) -> List[DecisionRecord]:
    return stack.recall(steps)

def depth(stack: MemoryStack) -> int:
    return stack.depth()
