# vim: ts=4 sw=4 et ai:
# -*- coding: utf8 -*-

"""This module holds all objects shared by all other modules in vistawise."""

import math
import pathlib
import re

DATA_DIR = pathlib.Path(__file__).parent / 'data'

# Screen geometry of a 1080p client. Minecraft pins the crosshair at the
# centre of the screen.
SCREEN_W = 1920
SCREEN_H = 1080
CROSSHAIR = (960, 540)

# Interaction range thresholds, in pixels of bounding box size.
DEF_K_W = 110
DEF_K_H = 275
DEF_NEAR_BAND = 0.8

# Memory stack
MEMORY_CAPACITY = 64
RECALL_STEPS = 3

# Agent loop
REPROMPT_RETRIES = 2
FALLBACK_SKILL = 'turn'
FALLBACK_ARGS = (30, 0)
BYTES_PER_TOKEN = 4
MAX_STEPS = 400

# Retrieval
SIMILARITY_THRESHOLD = 0.5
PLAYER = 'player'

RELATIONS = frozenset([
    'can use',
    'can mine',
    'is used to craft',
    'is used to produce',
    'can be put in/on',
    'is the fuel of',
    'includes',
    'can be used to mine',
    'outputs',
])

NODE_KINDS = ('environmental', 'conditional', 'abstract')

# Simulator kinematics
WALK_SPEED = 4.3            # blocks per second while 'w' is held
MOUSE_DEG_PER_PX = 0.15     # view rotation per pixel of mouse travel
ALIGN_TOLERANCE = 40        # pixels between target centre and crosshair
FRUSTUM_DEG = 90
VIEW_DISTANCE = 64          # blocks
# Focal length that makes one pixel of screen offset near the crosshair
# equal one pixel of mouse travel.
DEF_FOCAL = 180.0 / (math.pi * MOUSE_DEG_PER_PX)

# Depth bands, as levels below the surface.
STONE_LEVEL = 1
IRON_LEVEL = 2
DIAMOND_LEVEL = 4

# Inventory panel layout (slot centres, in screen pixels).
SLOT_PITCH = 72
SLOT_HALF = 36
MAIN_ORIGIN = (672, 640)
MAIN_ROWS = 3
HOTBAR_SLOTS = 9
HOTBAR_Y = 872
GRID_ORIGIN = (744, 300)
GRID_SIZE = 3
GRID_OUTPUT = (1104, 372)
FURNACE_INPUT = (1320, 300)
FURNACE_FUEL = (1320, 444)
FURNACE_OUTPUT = (1464, 372)

# Remote policy
REMOTE_TIMEOUT_MS = 30000
REMOTE_RETRIES = 3
REMOTE_BACKOFF_MS = 250

# Milestone goals in chain order, keyed to the simulator item that earns them.
MILESTONES = (
    ('obtain_log', 'log'),
    ('obtain_plank', 'plank'),
    ('obtain_stick', 'stick'),
    ('obtain_crafting_table', 'crafting table'),
    ('obtain_wooden_pickaxe', 'wooden pickaxe'),
    ('obtain_cobblestone', 'cobblestone'),
    ('obtain_stone_pickaxe', 'stone pickaxe'),
    ('obtain_iron_ore', 'iron ore item'),
    ('obtain_furnace', 'furnace'),
    ('obtain_iron_ingot', 'iron ingot'),
    ('obtain_iron_pickaxe', 'iron pickaxe'),
    ('obtain_diamond', 'diamond'),
)

_SPACES = re.compile(r'\s+')

def canonical_name(name: str) -> str:
    """Case-fold a node or item name and treat underscores as spaces, so
    that 'Iron_Ingot' and 'iron ingot' name the same entity."""

    return _SPACES.sub(' ', name.replace('_', ' ').casefold()).strip()

def hotbar_key_at(x: int, y: int):
    """Return the hotbar key (1..9) of a panel position in the hotbar row, or
    None for any other position."""

    if abs(y - HOTBAR_Y) >= SLOT_HALF:
        return None

    col = round((x - MAIN_ORIGIN[0]) / SLOT_PITCH)
    if 0 <= col < HOTBAR_SLOTS and abs(x - MAIN_ORIGIN[0] - col * SLOT_PITCH) < SLOT_HALF:
        return col + 1
    return None

def estimate_tokens(text: str) -> int:
    """Tokenizer-free token estimate: one token per four bytes of UTF-8."""

    return math.ceil(len(text.encode('utf8')) / BYTES_PER_TOKEN)

def vistaassert(condition, msg):
    """This function is a simple utility that will check the condition
    passed for a false state. If it finds one, it throws an AssertionError
    with the message passed. This just makes the code throughout cleaner
    by refactoring."""
    if not condition:
        raise AssertionError(msg)

class ExitCodes:
    """Process exit codes of the command line harness."""
    SUCCESS = 0
    TASK_FAILURE = 1
    CONFIG_ERROR = 2
    POLICY_TRANSPORT = 3

# Prompt section headers, shared by prompt synthesis and the scripted policy.
INVENTORY_HEADER = 'Current inventory status: '
ENVIRONMENT_HEADER = 'Current environment status: '
MEMORY_HEADER = 'Previous round(s) of action decision(s): '
EMPTY_SECTION = 'none'
OUTPUT_RULE = 'The output format must be: "Action: skill_function(*params)"'
