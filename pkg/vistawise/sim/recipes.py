import json
import logging
import pathlib

from collections import Counter
from dataclasses import dataclass
from typing import Dict,Mapping,Optional,Tuple,Union

import networkx as nx

from vistawise.shared import DATA_DIR,canonical_name
from vistawise.exceptions import VistaConfigError

logger = logging.getLogger('vistawise.sim.recipes')

DEFAULT_RECIPES = DATA_DIR / 'recipes.json'

STATIONS = ('none', 'crafting table', 'furnace')

@dataclass(frozen=True)
class Recipe:
    product: str
    count: int
    inputs: Tuple[Tuple[str, int], ...]
    station: str = 'none'
    fuel: Tuple[str, ...] = ()

    @property
    def needs(self) -> Dict[str, int]:
        return dict(self.inputs)

class RecipeTable:
    """Crafting and smelting recipes. Matching is shapeless: a grid matches a
    recipe when its item counts equal the recipe inputs exactly."""

    def __init__(self, recipes: Mapping[str, Recipe]) -> None:
        self.recipes = dict(recipes)

        deps = nx.DiGraph()
        for recipe in self.recipes.values():
            for item, _ in recipe.inputs:
                deps.add_edge(item, recipe.product)
        if not nx.is_directed_acyclic_graph(deps):
            raise VistaConfigError(f"recipe dependencies contain a cycle: {nx.find_cycle(deps)}")

    def __getitem__(self, product: str) -> Recipe:
        return self.recipes[product]

    def __contains__(self, product) -> bool:
        return product in self.recipes

    def match_grid(self, contents: Counter) -> Optional[Recipe]:
        """The crafting recipe whose inputs equal the grid contents."""

        wanted = {item: n for item, n in contents.items() if n > 0}
        for product in sorted(self.recipes):
            recipe = self.recipes[product]
            if recipe.station != 'furnace' and recipe.needs == wanted:
                return recipe
        return None

    def smelting(self, item: str) -> Optional[Recipe]:
        """The furnace recipe taking item as its input."""

        for product in sorted(self.recipes):
            recipe = self.recipes[product]
            if recipe.station == 'furnace' and item in recipe.needs:
                return recipe
        return None

    @classmethod
    def from_dict(cls, data: dict) -> 'RecipeTable':
        recipes = {}
        for product, entry in data.items():
            product = canonical_name(product)
            try:
                count = int(entry.get('count', 1))
                inputs = tuple(sorted((canonical_name(k), int(v)) for k, v in entry['inputs'].items()))
                station = canonical_name(entry.get('station', 'none'))
                fuel = tuple(canonical_name(f) for f in entry.get('fuel', ()))
            except (KeyError, AttributeError, TypeError, ValueError) as err:
                raise VistaConfigError(f"recipe {product}: {err}")

            if count <= 0 or not inputs or any(n <= 0 for _, n in inputs):
                raise VistaConfigError(f"recipe {product} needs positive counts")
            if station not in STATIONS:
                raise VistaConfigError(f"recipe {product} names unknown station {station}")
            if station == 'furnace' and not fuel:
                raise VistaConfigError(f"furnace recipe {product} lists no fuel")
            recipes[product] = Recipe(product, count, inputs, station, fuel)

        return cls(recipes)

def load_recipes(path: Union[str, pathlib.Path] = DEFAULT_RECIPES) -> RecipeTable:
    path = pathlib.Path(path)
    try:
        data = json.loads(path.read_text(encoding='utf8'))
    except (OSError, ValueError) as err:
        raise VistaConfigError(f"can not read recipe table {path}: {err}")
    return RecipeTable.from_dict(data)
