import logging

from typing import Optional,Tuple

from vistawise.skills.types import ActionDecision
from vistawise.skills.grammar import format_action
from .view import PromptView

logger = logging.getLogger('vistawise.policy.stages.base')

# A 600 px turn rotates the view 90 degrees, one full frustum.
SCAN = ActionDecision('turn', (600, 0))
SCAN_TEXT = format_action(SCAN)
SCANS_BEFORE_EXPLORING = 3
# Pixels; tighter than the simulator's mining tolerance.
AIM_TOLERANCE = 20
MINE_MS = 1200
APPROACH_MS = {'near': 200, 'beyond': 600}
PLACE_MS = 500

class Stage:
    """The base class of the scripted stages. handle() returns the action
    for this stage, or None to hand over to the next stage."""

    def handle(self, view: PromptView) -> Optional[ActionDecision]:
        raise NotImplementedError

    def __str__(self):
        return type(self).__name__

def hotbar(view: PromptView, item: str) -> Tuple[Optional[int], Optional[ActionDecision]]:
    """Return (key, None) when item sits in the hotbar, otherwise
    (None, the action moving it there)."""

    entry = view.inv[item]
    if entry.hotbar is not None:
        return entry.hotbar, None
    return None, ActionDecision('move_item_to_hotbar', (entry.x, entry.y))

def scanned_out(view: PromptView) -> bool:
    recent = view.recent[:SCANS_BEFORE_EXPLORING]
    return (len(recent) == SCANS_BEFORE_EXPLORING
            and all(text.startswith(SCAN_TEXT) for text in recent))

def hunt(view: PromptView, target: str, mine: ActionDecision, explore: ActionDecision) -> ActionDecision:
    """Find, face, approach and mine the nearest visible target.

    Args:
        view (PromptView): parsed prompt
        target (str): environment entity to go after
        mine (ActionDecision): action once it is in range and aimed at
        explore (ActionDecision): action after a full scan found nothing
    """

    info = view.env.get(target)
    if info is None:
        return explore if scanned_out(view) else SCAN

    dx = info.x - view.crosshair[0]
    dy = info.y - view.crosshair[1]
    aimed = dx * dx + dy * dy <= AIM_TOLERANCE * AIM_TOLERANCE

    if info.range == 'within':
        return mine if aimed else ActionDecision('turn', (dx, dy))

    ms = APPROACH_MS[info.range]
    if aimed:
        return ActionDecision('move_forward', (ms,))
    return ActionDecision('turn_and_move_forward', (ms, dx, dy))
