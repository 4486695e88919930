"""Render pooled subgraphs as prompt text."""

import logging

from enum import Enum

from vistawise.perception.records import EnvEntityInfo,InvEntityInfo
from vistawise.graph import CrossModalGraph
from .pooling import PooledSubgraph

logger = logging.getLogger('vistawise.retrieval.textualize')

class Verbosity(str, Enum):
    NAMES = 'names'
    FULL = 'full'

_KIND_PROSE = {
    'environmental': 'a block or hazard found in the world that the player can approach and interact with',
    'conditional': 'an item that appears in the inventory and tracks task progress',
    'abstract': 'an abstract concept that groups other entities',
}

def env_line(name: str, info: EnvEntityInfo) -> str:
    return (f"{name}: env at ({info.x},{info.y}) size ({info.w},{info.h}), "
            f"{info.range.word} interaction range")

def inv_line(name: str, info: InvEntityInfo) -> str:
    line = f"{name}: inv at ({info.x},{info.y})"
    if info.count is not None:
        line += f", count {info.count}"
    if info.hotbar is not None:
        line += f", hotbar {info.hotbar}"
    return line

def _node_prose(name: str, graph: CrossModalGraph) -> str:
    sentences = [f"{name} is {_KIND_PROSE.get(graph.kind(name), 'an entity')}."]
    for edge in graph.edges_of(name):
        sentences.append(f"{edge.source} {edge.relation} {edge.target}.")
    return ' '.join(sentences)

def textualize(sub: PooledSubgraph, graph: CrossModalGraph, verbosity: Verbosity = Verbosity.NAMES) -> str:
    """Render edges, then attributed nodes, one per line and sorted. Full
    verbosity appends one prose line per node describing its kind and every
    relation it has in the whole graph; the names-only text is always a
    prefix of the full text.

    Args:
        sub (PooledSubgraph): the pooled subgraph
        graph (CrossModalGraph): attributed graph the pool came from
        verbosity (Verbosity, optional): Defaults to names only.

    Returns:
        str: the knowledge text
    """

    lines = sorted(str(edge) for edge in sub.edges)

    for name in sorted(sub.nodes):
        node = graph.node(name)
        if node.env_attr is not None:
            lines.append(env_line(name, node.env_attr))
        elif node.inv_attr is not None:
            lines.append(inv_line(name, node.inv_attr))

    if Verbosity(verbosity) is Verbosity.FULL:
        lines.extend(_node_prose(name, graph) for name in sorted(sub.nodes))

    return '\n'.join(lines)
