"""Deterministic blockworld standing in for the game client: it holds the
ground truth, consumes input events and emits detection records."""

from .recipes import Recipe,RecipeTable,load_recipes,DEFAULT_RECIPES
from .scenario import Scenario,load_scenario,DEFAULT_SCENARIO,SCENARIO_DIR
from .world import (Entity,WorldState,reset,milestones,world_hash,slot_position,
                    slot_at)
from .camera import CameraModel,Projection,project,observe
from .simulator import Simulator,apply_events
from .backend import SimulatedBackend,replay
