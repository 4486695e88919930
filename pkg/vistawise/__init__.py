# vim: ts=4 sw=4 et ai:
# -*- coding: utf8 -*-
"""
This library implements a knowledge-graph driven agent for a blockworld
crafting game. Detections are embedded into a cross-modal knowledge graph,
the task-relevant part of the graph is pooled into a prompt, and a decision
provider answers with one parameterized skill call per timestep.

A deterministic simulator and a scripted policy ship with it, so complete
episodes can run without a game client or a language model.
"""


import sys

required_version = (3, 7)
if sys.version_info < required_version:
    raise ImportError("Requires at least Python 3.7")

from vistawise.agent import Agent,AgentState,synthesize_prompt
from vistawise.graph import CrossModalGraph,load_graph
from vistawise.policy import ScriptedPolicy,RemotePolicy
from vistawise.harness import RunConfig,run
from vistawise.exceptions import VistaException
