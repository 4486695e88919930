"""Event scripts behind the shipped skills.

Inventory skills open the panel (which recentres the cursor on the
crosshair), walk the cursor with relative moves, and close the panel again.
A left click on a stack picks it, a right click on a crafting cell drops one
item of the picked stack there, and a left click on an output slot collects
the result."""

import logging

from typing import List

from vistawise.shared import (CROSSHAIR,SLOT_PITCH,GRID_ORIGIN,GRID_OUTPUT,
                              FURNACE_INPUT,FURNACE_FUEL,FURNACE_OUTPUT)
from .types import (InputEvent,tap,click,mouse_move,key_press,key_release,
                    button_press,button_release,wait)

logger = logging.getLogger('vistawise.skills.scripts')

# Durations inside composite skills.
TUNNEL_DIG_MS = 1200
TUNNEL_STEP_MS = 250
TUNNEL_SEGMENTS = 4
# 600 px of mouse travel pitches the view 90 degrees down.
LOOK_DOWN_PX = 600

def grid_cell(row: int, col: int) -> tuple:
    return (GRID_ORIGIN[0] + col * SLOT_PITCH, GRID_ORIGIN[1] + row * SLOT_PITCH)

class PanelScript:
    """Builds an inventory panel interaction as an event list."""

    def __init__(self) -> None:
        self.events = tap('e')
        self.cursor = CROSSHAIR

    def move_to(self, x: int, y: int) -> 'PanelScript':
        self.events.append(mouse_move(x - self.cursor[0], y - self.cursor[1]))
        self.cursor = (x, y)
        return self

    def pick(self, x: int, y: int) -> 'PanelScript':
        self.move_to(x, y)
        self.events.extend(click('left'))
        return self

    def drop(self, cell: tuple) -> 'PanelScript':
        self.move_to(*cell)
        self.events.extend(click('right'))
        return self

    def shift_pick(self, x: int, y: int) -> 'PanelScript':
        self.move_to(x, y)
        self.events.append(key_press('shift'))
        self.events.extend(click('left'))
        self.events.append(key_release('shift'))
        return self

    def close(self) -> List[InputEvent]:
        self.events.extend(tap('e'))
        return self.events

def _craft(*placements) -> List[InputEvent]:
    """placements: (x, y, cells) per ingredient stack, then the result is
    collected from the grid output."""

    script = PanelScript()
    for x, y, cells in placements:
        script.pick(x, y)
        for cell in cells:
            script.drop(grid_cell(*cell))
    script.pick(*GRID_OUTPUT)
    return script.close()

_TOP_ROW = [(0, 0), (0, 1), (0, 2)]
_HANDLE = [(1, 1), (2, 1)]
_RING = [(r, c) for r in range(3) for c in range(3) if (r, c) != (1, 1)]

def craft_plank(l_x, l_y):
    return _craft((l_x, l_y, [(0, 0)]))

def craft_stick(p_x, p_y):
    return _craft((p_x, p_y, [(0, 0), (1, 0)]))

def craft_crafting_table(p_x, p_y):
    return _craft((p_x, p_y, [(0, 0), (0, 1), (1, 0), (1, 1)]))

def craft_wood_pickaxe(p_x, p_y, s_x, s_y):
    return _craft((p_x, p_y, _TOP_ROW), (s_x, s_y, _HANDLE))

def craft_stone_pickaxe(c_x, c_y, s_x, s_y):
    return _craft((c_x, c_y, _TOP_ROW), (s_x, s_y, _HANDLE))

def craft_iron_pickaxe(i_x, i_y, s_x, s_y):
    return _craft((i_x, i_y, _TOP_ROW), (s_x, s_y, _HANDLE))

def craft_furnace(c_x, c_y):
    return _craft((c_x, c_y, _RING))

def smelt_iron_ore(i_o_x, i_o_y, p_x, p_y):
    script = PanelScript()
    script.pick(i_o_x, i_o_y).drop(FURNACE_INPUT)
    script.pick(p_x, p_y).drop(FURNACE_FUEL)
    script.pick(*FURNACE_OUTPUT)
    return script.close()

def move_item_to_hotbar(t_x, t_y):
    return PanelScript().shift_pick(t_x, t_y).close()

def _hold(button: str, d: int) -> List[InputEvent]:
    return [button_press(button), wait(d), button_release(button)]

def _walk(d: int) -> List[InputEvent]:
    return [key_press('w'), wait(d), key_release('w')]

def turn(x, y):
    return [mouse_move(x, y)]

def move_forward(d):
    return _walk(d)

def turn_and_move_forward(d, x, y):
    return [mouse_move(x, y)] + _walk(d)

def mine_log(d):
    return _hold('left', d)

def mine_iron_ore(k, d):
    return tap(str(k)) + _hold('left', d)

def mine_diamond_ore(k, d):
    return tap(str(k)) + _hold('left', d)

def dig_vertical_mine_tunnels(k, d):
    return (tap(str(k)) + [mouse_move(0, LOOK_DOWN_PX)] + _hold('left', d)
            + [mouse_move(0, -LOOK_DOWN_PX)])

def dig_horizontal_mine_tunnels(k):
    events = tap(str(k))
    for _ in range(TUNNEL_SEGMENTS):
        events += _hold('left', TUNNEL_DIG_MS) + _walk(TUNNEL_STEP_MS)
    return events

def place_blocks_underfoot(k, n):
    events = tap(str(k))
    for _ in range(n):
        events += [key_press('space'), button_press('right'),
                   button_release('right'), key_release('space')]
    return events

def put_functional_block(k, d):
    return tap(str(k)) + _hold('right', d)
