"""Scenario configuration: what the world contains and how it behaves."""

import json
import logging
import pathlib

from dataclasses import dataclass,field
from typing import Dict,List,Optional,Tuple,Union

from vistawise.shared import DATA_DIR,canonical_name
from vistawise.exceptions import VistaConfigError
from .recipes import RecipeTable,load_recipes

logger = logging.getLogger('vistawise.sim.scenario')

SCENARIO_DIR = DATA_DIR / 'scenarios'
DEFAULT_SCENARIO = SCENARIO_DIR / 'plains_default.json'

@dataclass(frozen=True)
class Generator:
    """Scatter `count` entities on every level of [levels] at a random
    distance within [radius] of the origin."""

    name: str
    count: int
    levels: Tuple[int, int]
    radius: Tuple[float, float]

@dataclass(frozen=True)
class Placement:
    name: str
    x: float
    z: float
    level: int = 0

@dataclass
class Scenario:
    name: str
    recipes: RecipeTable
    bedrock_level: int = 6
    cobble_per_level: int = 3
    tunnel_yield: int = 1
    start: Dict[str, float] = field(default_factory=dict)
    generate: List[Generator] = field(default_factory=list)
    entities: List[Placement] = field(default_factory=list)
    base_sizes: Dict[str, Tuple[float, float]] = field(default_factory=dict)
    env_labels: Dict[str, str] = field(default_factory=dict)
    item_labels: Dict[str, str] = field(default_factory=dict)
    mine_times: Dict[str, Dict[str, int]] = field(default_factory=dict)
    drops: Dict[str, str] = field(default_factory=dict)
    path: Optional[pathlib.Path] = None

    def mine_time(self, tool: Optional[str], block: str) -> Optional[int]:
        """Milliseconds needed to mine block with tool, or None when the tool
        can not mine it."""

        times = self.mine_times.get(block)
        if times is None:
            return None
        if tool is not None and tool in times:
            return times[tool]
        return times.get('*')

    def env_label(self, name: str) -> str:
        return self.env_labels.get(name, name.replace(' ', '_'))

    def item_label(self, item: str) -> str:
        return self.item_labels.get(item, item.replace(' ', '_') + '_icon')

    @classmethod
    def from_dict(cls, data: dict, base_dir: pathlib.Path = DATA_DIR) -> 'Scenario':
        """Build and validate a scenario. Relative paths resolve against
        base_dir.

        Raises:
            VistaConfigError: a field is missing or out of range
        """

        try:
            name = str(data['name'])
            recipes_path = pathlib.Path(data.get('recipes', DATA_DIR / 'recipes.json'))
            if not recipes_path.is_absolute():
                recipes_path = base_dir / recipes_path
            recipes = load_recipes(recipes_path)

            bedrock = int(data.get('bedrock_level', 6))
            generate = [Generator(canonical_name(g['name']), int(g['count']),
                                  (int(g['levels'][0]), int(g['levels'][1])),
                                  (float(g['radius'][0]), float(g['radius'][1])))
                        for g in data.get('generate', [])]
            entities = [Placement(canonical_name(e['name']), float(e['x']), float(e['z']),
                                  int(e.get('level', 0)))
                        for e in data.get('entities', [])]
            base_sizes = {canonical_name(k): (float(v[0]), float(v[1]))
                          for k, v in data.get('base_sizes', {}).items()}
            mine_times = {canonical_name(block): {(t if t == '*' else canonical_name(t)): int(ms)
                                                  for t, ms in tools.items()}
                          for block, tools in data.get('mine_times', {}).items()}
            scenario = cls(name=name, recipes=recipes, bedrock_level=bedrock,
                           cobble_per_level=int(data.get('cobble_per_level', 3)),
                           tunnel_yield=int(data.get('tunnel_yield', 1)),
                           start={k: float(v) for k, v in data.get('start', {}).items()},
                           generate=generate, entities=entities, base_sizes=base_sizes,
                           env_labels={canonical_name(k): v for k, v in data.get('env_labels', {}).items()},
                           item_labels={canonical_name(k): v for k, v in data.get('item_labels', {}).items()},
                           mine_times=mine_times,
                           drops={canonical_name(k): canonical_name(v) for k, v in data.get('drops', {}).items()})
        except (KeyError, IndexError, TypeError, ValueError, AttributeError) as err:
            raise VistaConfigError(f"invalid scenario: {err!r}")

        scenario.check()
        return scenario

    def check(self) -> None:
        if self.bedrock_level < 1:
            raise VistaConfigError(f"scenario {self.name}: bedrock_level must be at least 1")
        if self.cobble_per_level < 0 or self.tunnel_yield < 0:
            raise VistaConfigError(f"scenario {self.name}: yields must be non-negative")

        for gen in self.generate:
            if gen.count < 0:
                raise VistaConfigError(f"scenario {self.name}: negative count for {gen.name}")
            low, high = gen.levels
            if not 0 <= low <= high < self.bedrock_level:
                raise VistaConfigError(f"scenario {self.name}: levels {gen.levels} of {gen.name} outside 0..{self.bedrock_level - 1}")
            if not 0 <= gen.radius[0] <= gen.radius[1]:
                raise VistaConfigError(f"scenario {self.name}: bad radius {gen.radius} for {gen.name}")

        for place in self.entities:
            if not 0 <= place.level < self.bedrock_level:
                raise VistaConfigError(f"scenario {self.name}: {place.name} placed on level {place.level}")

        names = {g.name for g in self.generate} | {p.name for p in self.entities}
        for name in sorted(names):
            if name not in self.base_sizes:
                raise VistaConfigError(f"scenario {self.name}: no base size for {name}")
        for name, (bw, bh) in self.base_sizes.items():
            if bw <= 0 or bh <= 0:
                raise VistaConfigError(f"scenario {self.name}: base size of {name} must be positive")
        for block, tools in self.mine_times.items():
            if any(ms <= 0 for ms in tools.values()):
                raise VistaConfigError(f"scenario {self.name}: mine times of {block} must be positive")

def load_scenario(path: Union[str, pathlib.Path] = DEFAULT_SCENARIO) -> Scenario:
    """Load a scenario file. A bare name picks a shipped scenario."""

    path = pathlib.Path(path)
    if not path.suffix and not path.exists():
        path = SCENARIO_DIR / f"{path.name}.json"

    try:
        data = json.loads(path.read_text(encoding='utf8'))
    except (OSError, ValueError) as err:
        raise VistaConfigError(f"can not read scenario {path}: {err}")

    scenario = Scenario.from_dict(data, path.parent)
    scenario.path = path
    logger.debug(f"loaded scenario {scenario.name} from {path}")
    return scenario
