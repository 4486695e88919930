"""Skill registry and the shipped skill libraries."""

import logging

from typing import Callable,Dict,Iterator,List

from vistawise.exceptions import VistaSkillError
from .types import ParamType,ParamSpec,SkillSpec,ActionDecision,InputEvent
from . import scripts

logger = logging.getLogger('vistawise.skills.library')

Expansion = Callable[..., List[InputEvent]]

class SkillLibrary:
    """Named, parameterized skills and the event scripts they expand to."""

    def __init__(self) -> None:
        self.__skills: Dict[str, SkillSpec] = {}
        self.__expansions: Dict[str, Expansion] = {}

    def register(self, spec: SkillSpec, expansion: Expansion) -> 'SkillLibrary':
        """Add a skill.

        Args:
            spec (SkillSpec): name, parameters and description
            expansion (callable): maps the argument values to input events

        Raises:
            VistaSkillError: the name is taken or the expansion emits nothing
        """

        if spec.name in self.__skills:
            raise VistaSkillError(f"skill {spec.name} is already registered")

        sample = [p.ptype.bounds[0] if p.ptype is not ParamType.SIGNED_OFFSET else 0
                  for p in spec.params]
        if not expansion(*sample):
            raise VistaSkillError(f"skill {spec.name} expands to no events")

        self.__skills[spec.name] = spec
        self.__expansions[spec.name] = expansion
        logger.debug(f"registered skill {spec.signature()}")
        return self

    def get(self, name: str) -> SkillSpec:
        return self.__skills[name]

    def __contains__(self, name) -> bool:
        return name in self.__skills

    def __len__(self) -> int:
        return len(self.__skills)

    def __iter__(self) -> Iterator[SkillSpec]:
        for name in sorted(self.__skills):
            yield self.__skills[name]

    def expand(self, decision: ActionDecision) -> List[InputEvent]:
        events = list(self.__expansions[decision.skill](*decision.args))
        if not events:
            raise VistaSkillError(f"skill {decision.skill} expanded to no events")
        return events

    def text(self) -> str:
        return '\n'.join(f"{spec.signature()} — {spec.description}" for spec in self)

def register_skill(library: SkillLibrary, spec: SkillSpec, expansion: Expansion) -> SkillLibrary:
    return library.register(spec, expansion)

def library_text(library: SkillLibrary) -> str:
    """One `name(param: type, ...) — description` line per skill, sorted by
    name."""

    return library.text()

def _p(name, ptype, description=''):
    return ParamSpec(name, ptype, description)

_X = ParamType.PIXEL_COORD
_K = ParamType.HOTBAR_KEY
_D = ParamType.DURATION_MS
_O = ParamType.SIGNED_OFFSET

def _xy(prefix, what):
    return (_p(f"{prefix}_x", _X, f"inventory x of the {what}"),
            _p(f"{prefix}_y", _X, f"inventory y of the {what}"))

_CORE = [
    (SkillSpec('craft_furnace', _xy('c', 'cobblestone'),
               "Craft a furnace from eight cobblestone; (c_x, c_y) locate the cobblestone in the open inventory."),
     scripts.craft_furnace),
    (SkillSpec('craft_iron_pickaxe', _xy('i', 'iron ingots') + _xy('s', 'sticks'),
               "Craft an iron pickaxe from three iron ingots at (i_x, i_y) and two sticks at (s_x, s_y); needs a placed crafting table."),
     scripts.craft_iron_pickaxe),
    (SkillSpec('craft_plank', _xy('l', 'logs'),
               "Turn one log at inventory position (l_x, l_y) into four planks."),
     scripts.craft_plank),
    (SkillSpec('craft_stick', _xy('p', 'planks'),
               "Turn two planks at inventory position (p_x, p_y) into four sticks."),
     scripts.craft_stick),
    (SkillSpec('craft_stone_pickaxe', _xy('c', 'cobblestone') + _xy('s', 'sticks'),
               "Craft a stone pickaxe from three cobblestone at (c_x, c_y) and two sticks at (s_x, s_y); needs a placed crafting table."),
     scripts.craft_stone_pickaxe),
    (SkillSpec('craft_wood_pickaxe', _xy('p', 'planks') + _xy('s', 'sticks'),
               "Craft a wooden pickaxe from three planks at (p_x, p_y) and two sticks at (s_x, s_y); needs a placed crafting table."),
     scripts.craft_wood_pickaxe),
    (SkillSpec('dig_horizontal_mine_tunnels', (_p('k', _K, 'hotbar key of the pickaxe'),),
               "Select the pickaxe on hotbar key k and dig a short horizontal tunnel, collecting cobblestone and exposing ores."),
     scripts.dig_horizontal_mine_tunnels),
    (SkillSpec('dig_vertical_mine_tunnels', (_p('k', _K, 'hotbar key of the pickaxe'), _p('d', _D, 'press duration')),
               "Select the pickaxe on hotbar key k, look straight down and dig for d milliseconds to go deeper underground."),
     scripts.dig_vertical_mine_tunnels),
    (SkillSpec('mine_diamond_ore', (_p('k', _K, 'hotbar key of the iron pickaxe'), _p('d', _D, 'press duration')),
               "With diamond ore in interaction range under the crosshair, select the iron pickaxe on key k and hold the mouse for d milliseconds."),
     scripts.mine_diamond_ore),
    (SkillSpec('mine_iron_ore', (_p('k', _K, 'hotbar key of the stone pickaxe'), _p('d', _D, 'press duration')),
               "With iron ore in interaction range under the crosshair, select the stone pickaxe on key k and hold the mouse for d milliseconds."),
     scripts.mine_iron_ore),
    (SkillSpec('mine_log', (_p('d', _D, 'press duration'),),
               "With a trunk in interaction range under the crosshair, hold the mouse for d milliseconds to collect a log."),
     scripts.mine_log),
    (SkillSpec('move_forward', (_p('d', _D, "press duration of 'w'"),),
               "Walk forward for d milliseconds."),
     scripts.move_forward),
    (SkillSpec('move_item_to_hotbar', _xy('t', 'item'),
               "Move the stack at inventory position (t_x, t_y) into the first free hotbar slot."),
     scripts.move_item_to_hotbar),
    (SkillSpec('place_blocks_underfoot', (_p('k', _K, 'hotbar key of the cobblestone'), _p('n', ParamType.INTEGER, 'number of blocks')),
               "Jump and place n cobblestone blocks from hotbar key k under the player to climb up."),
     scripts.place_blocks_underfoot),
    (SkillSpec('put_functional_block', (_p('k', _K, 'hotbar key of the block'), _p('d', _D, 'press duration')),
               "Place the crafting table or furnace held on hotbar key k so it can be used."),
     scripts.put_functional_block),
    (SkillSpec('smelt_iron_ore', _xy('i_o', 'iron ore') + _xy('p', 'planks'),
               "Smelt the iron ore at (i_o_x, i_o_y) in a placed furnace using the planks at (p_x, p_y) as fuel, collecting an iron ingot."),
     scripts.smelt_iron_ore),
    (SkillSpec('turn', (_p('x', _O, 'horizontal pixel offset of the target'), _p('y', _O, 'vertical pixel offset of the target')),
               "Rotate the view by the pixel offset (x, y) between the crosshair and the target; right and down are positive."),
     scripts.turn),
    (SkillSpec('turn_and_move_forward', (_p('d', _D, "press duration of 'w'"), _p('x', _O, 'horizontal pixel offset'), _p('y', _O, 'vertical pixel offset')),
               "Turn by the pixel offset (x, y), then walk forward for d milliseconds."),
     scripts.turn_and_move_forward),
]

_EXTRA = [
    (SkillSpec('craft_crafting_table', _xy('p', 'planks'),
               "Craft a crafting table from four planks at inventory position (p_x, p_y)."),
     scripts.craft_crafting_table),
]

def core_library() -> SkillLibrary:
    """The eighteen core skills."""

    library = SkillLibrary()
    for spec, expansion in _CORE:
        library.register(spec, expansion)
    return library

def default_library() -> SkillLibrary:
    """Core skills plus the ones the milestone chain needs beyond them."""

    library = core_library()
    for spec, expansion in _EXTRA:
        library.register(spec, expansion)
    return library
