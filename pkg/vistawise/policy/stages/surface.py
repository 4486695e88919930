"""Stages from bare hands to the wooden pickaxe."""

import logging

from vistawise.skills.types import ActionDecision
from .base import Stage,hotbar,hunt,MINE_MS,PLACE_MS

logger = logging.getLogger('vistawise.policy.stages.surface')

# Four logs give sixteen planks: table, sticks, wooden pickaxe and fuel.
PLANKS_NEEDED = 16
STICKS_NEEDED = 6
EXPLORE_MS = 2000

class CraftWoodPickaxe(Stage):
    def handle(self, view):
        if view.count('stick') < 2 or view.count('plank') < 3 or view.has('crafting table'):
            return None
        plank, stick = view.inv['plank'], view.inv['stick']
        return ActionDecision('craft_wood_pickaxe', (plank.x, plank.y, stick.x, stick.y))

class PlaceTable(Stage):
    """Make enough sticks for every pickaxe, then put the table down."""

    def handle(self, view):
        if not view.has('crafting table'):
            return None
        if view.count('stick') < STICKS_NEEDED and view.count('plank') >= 2:
            plank = view.inv['plank']
            return ActionDecision('craft_stick', (plank.x, plank.y))
        k, move = hotbar(view, 'crafting table')
        return move or ActionDecision('put_functional_block', (k, PLACE_MS))

class CraftPlank(Stage):
    def handle(self, view):
        if not view.has('log'):
            return None
        log = view.inv['log']
        return ActionDecision('craft_plank', (log.x, log.y))

class CraftTable(Stage):
    def handle(self, view):
        if view.count('plank') < PLANKS_NEEDED:
            return None
        if any(view.has(item) for item in ('stick', 'crafting table', 'wooden pickaxe')):
            return None
        plank = view.inv['plank']
        return ActionDecision('craft_crafting_table', (plank.x, plank.y))

class GatherLogs(Stage):
    def handle(self, view):
        return hunt(view, 'trunk', ActionDecision('mine_log', (MINE_MS,)),
                    ActionDecision('move_forward', (EXPLORE_MS,)))
