"""Stages of the scripted policy.

Each stage looks at the parsed prompt and either returns the action for its
part of the milestone chain or hands over to the next stage. Stages are
tried in priority order, the most advanced first, so the policy always works
on the furthest goal its inventory allows."""

from .view import PromptView,InvEntry,EnvEntry,parse_prompt
from .base import Stage,SCAN,SCAN_TEXT,hunt,hotbar
from .underground import (MineDiamond,CraftIronPickaxe,SmeltIron,MineIron,
                          CraftFurnace,CraftStonePickaxe)
from .surface import (CraftWoodPickaxe,PlaceTable,CraftPlank,CraftTable,
                      GatherLogs)

def default_stages():
    return [MineDiamond(), CraftIronPickaxe(), SmeltIron(), MineIron(),
            CraftFurnace(), CraftStonePickaxe(), CraftWoodPickaxe(),
            PlaceTable(), CraftPlank(), CraftTable(), GatherLogs()]
