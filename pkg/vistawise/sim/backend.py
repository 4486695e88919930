import json
import logging

from typing import IO,List

from vistawise.skills.backend import Backend
from vistawise.skills.types import ActionDecision,InputEvent,tap
from vistawise.perception.records import DetectionRecord,RangeConfig
from .simulator import Simulator
from .scenario import Scenario
from .world import world_hash

logger = logging.getLogger('vistawise.sim.backend')

CAPTURE = 'capture'

class SimulatedBackend(Backend):
    """Feeds skill events into a simulator and keeps the replay log: every
    event applied, in order, tagged with the skill (or capture) that sent
    it."""

    def __init__(self, simulator: Simulator) -> None:
        self.simulator = simulator
        self.replay: List[dict] = []
        self.__source = None
        self.__effects: List[str] = []

    def begin(self, action: ActionDecision) -> None:
        self.__source = action.skill
        self.__effects = []

    def deliver(self, event: InputEvent) -> bool:
        record = event.to_dict()
        record['source'] = self.__source
        self.replay.append(record)
        self.__effects.extend(self.simulator.apply_event(event))
        return True

    def end(self) -> List[str]:
        effects, self.__effects = self.__effects, []
        self.__source = None
        return effects

    def capture(self, timestep: int = 0) -> List[DetectionRecord]:
        """Observe both spaces: the environment with the panel closed, then
        the inventory by opening the panel and closing it again. The panel
        toggles are part of the replay log."""

        world = self.simulator.world
        self.__source = CAPTURE
        if world.inventory_open:
            self._send(tap('e'))

        records = self.simulator.observe(timestep)
        self._send(tap('e'))
        records += self.simulator.observe(timestep)
        self._send(tap('e'))
        self.__source = None
        self.__effects = []
        return records

    def _send(self, events: List[InputEvent]) -> None:
        for event in events:
            self.deliver(event)

    def write_replay(self, fileobj: IO[str]) -> None:
        for record in self.replay:
            fileobj.write(json.dumps(record, sort_keys=True) + '\n')

def replay(scenario: Scenario, seed: int, records: List[dict], range_cfg: RangeConfig = None) -> str:
    """Re-apply a replay log to a freshly reset world and return the final
    world hash."""

    sim = Simulator(scenario, seed, range_cfg=range_cfg)
    for record in records:
        sim.apply_event(InputEvent.from_dict(record))
    return world_hash(sim.world)
