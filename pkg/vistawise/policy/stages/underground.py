"""Stages from the wooden pickaxe down to the diamond."""

import logging

from vistawise.skills.types import ActionDecision
from .base import Stage,hotbar,hunt,MINE_MS,PLACE_MS
from .view import PromptView

logger = logging.getLogger('vistawise.policy.stages.underground')

# Press durations that dig exactly one level with each pickaxe.
DESCEND_MS = {'wooden pickaxe': 1200, 'stone pickaxe': 600, 'iron pickaxe': 400}

INGOTS_NEEDED = 3
FURNACE_COBBLE = 8
PICKAXE_COBBLE = 3

def _xy(view: PromptView, item: str) -> tuple:
    entry = view.inv[item]
    return (entry.x, entry.y)

class MineDiamond(Stage):
    def handle(self, view):
        if not view.has('iron pickaxe'):
            return None
        k, move = hotbar(view, 'iron pickaxe')
        if move:
            return move
        return hunt(view, 'diamond ore', ActionDecision('mine_diamond_ore', (k, MINE_MS)),
                    ActionDecision('dig_vertical_mine_tunnels', (k, DESCEND_MS['iron pickaxe'])))

class CraftIronPickaxe(Stage):
    def handle(self, view):
        if view.count('iron ingot') < INGOTS_NEEDED or view.count('stick') < 2:
            return None
        return ActionDecision('craft_iron_pickaxe', _xy(view, 'iron ingot') + _xy(view, 'stick'))

class SmeltIron(Stage):
    """Place the furnace once enough ore is in hand, then smelt one ore per
    step."""

    def handle(self, view):
        ore = view.count('iron ore item')
        if ore == 0 or ore + view.count('iron ingot') < INGOTS_NEEDED:
            return None

        if view.has('furnace'):
            k, move = hotbar(view, 'furnace')
            return move or ActionDecision('put_functional_block', (k, PLACE_MS))

        fuel = 'plank' if view.has('plank') else 'coal'
        if not view.has(fuel):
            return None
        return ActionDecision('smelt_iron_ore', _xy(view, 'iron ore item') + _xy(view, fuel))

class MineIron(Stage):
    def handle(self, view):
        if not (view.has('stone pickaxe') and view.has('furnace')):
            return None
        k, move = hotbar(view, 'stone pickaxe')
        if move:
            return move
        return hunt(view, 'iron ore', ActionDecision('mine_iron_ore', (k, MINE_MS)),
                    ActionDecision('dig_vertical_mine_tunnels', (k, DESCEND_MS['stone pickaxe'])))

class CraftFurnace(Stage):
    def handle(self, view):
        if not view.has('stone pickaxe') or view.has('furnace'):
            return None
        k, move = hotbar(view, 'stone pickaxe')
        if move:
            return move
        if view.count('cobblestone') >= FURNACE_COBBLE:
            return ActionDecision('craft_furnace', _xy(view, 'cobblestone'))
        return ActionDecision('dig_horizontal_mine_tunnels', (k,))

class CraftStonePickaxe(Stage):
    def handle(self, view):
        if not view.has('wooden pickaxe'):
            return None
        k, move = hotbar(view, 'wooden pickaxe')
        if move:
            return move
        if view.count('cobblestone') >= PICKAXE_COBBLE and view.count('stick') >= 2:
            return ActionDecision('craft_stone_pickaxe', _xy(view, 'cobblestone') + _xy(view, 'stick'))
        return ActionDecision('dig_vertical_mine_tunnels', (k, DESCEND_MS['wooden pickaxe']))
