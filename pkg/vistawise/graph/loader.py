"""Reader and writer of the line-oriented graph-definition format.

    # comment
    node <name> <kind>
    edge <source> "<relation>" <target>
    alias <detector_label> <name>

Lines may appear in any order. The writer emits nodes, then edges, then
aliases, each sorted."""

import logging
import pathlib
import re

from typing import Union

from vistawise.shared import DATA_DIR,PLAYER,RELATIONS,canonical_name
from vistawise.exceptions import VistaGraphError
from .graph import CrossModalGraph

logger = logging.getLogger('vistawise.graph.loader')

DEFAULT_GRAPH = DATA_DIR / 'minecraft.kg'

_NODE = re.compile(r'^node\s+(.+?)\s+(environmental|conditional|abstract)\s*$')
_EDGE = re.compile(r'^edge\s+(.+?)\s+"([^"]+)"\s+(.+?)\s*$')
_ALIAS = re.compile(r'^alias\s+(\S+)\s+(.+?)\s*$')

def loads(text: str) -> CrossModalGraph:
    """Parse a graph-definition document.

    Args:
        text (str): document contents

    Raises:
        VistaGraphError: duplicate node, unknown relation, dangling endpoint,
            self loop, duplicate edge, unknown alias target, malformed line or
            missing player node

    Returns:
        CrossModalGraph: the validated, attribute-free graph
    """

    nodes = {}
    edges = []
    aliases = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue

        match = _NODE.match(line)
        if match:
            name = canonical_name(match.group(1))
            if name in nodes:
                raise VistaGraphError(f"duplicate node '{name}'", line=lineno)
            nodes[name] = match.group(2)
            continue

        match = _EDGE.match(line)
        if match:
            source, relation, target = match.groups()
            if relation not in RELATIONS:
                raise VistaGraphError(f"unknown relation '{relation}'", line=lineno)
            edges.append((lineno, canonical_name(source), relation, canonical_name(target)))
            continue

        match = _ALIAS.match(line)
        if match:
            aliases.append((lineno, match.group(1), canonical_name(match.group(2))))
            continue

        raise VistaGraphError(f"can not parse '{line}'", line=lineno)

    graph = CrossModalGraph()
    for name, kind in nodes.items():
        graph.add_node(name, kind)

    seen = set()
    for lineno, source, relation, target in edges:
        for end in (source, target):
            if end not in nodes:
                raise VistaGraphError(f"dangling endpoint '{end}'", line=lineno)
        if source == target:
            raise VistaGraphError(f"self loop on '{source}'", line=lineno)
        if (source, relation, target) in seen:
            raise VistaGraphError(f"duplicate edge {source} --{relation}--> {target}", line=lineno)
        seen.add((source, relation, target))
        graph.add_edge(source, relation, target)

    for lineno, label, name in aliases:
        if name not in nodes:
            raise VistaGraphError(f"alias '{label}' names unknown node '{name}'", line=lineno)
        graph.add_alias(label, name)

    if PLAYER not in nodes:
        raise VistaGraphError(f"no '{PLAYER}' node")

    logger.debug(f"loaded {graph}")
    return graph

def load_graph(path: Union[str, pathlib.Path] = DEFAULT_GRAPH) -> CrossModalGraph:
    """Load a graph-definition file, the shipped Minecraft graph by default."""

    path = pathlib.Path(path)
    try:
        text = path.read_text(encoding='utf8')
    except OSError as err:
        raise VistaGraphError(f"can not read {path}: {err}")

    logger.info(f"loading knowledge graph from {path}")
    return loads(text)

def serialize(graph: CrossModalGraph) -> str:
    lines = [f"node {n.name} {n.kind}" for n in graph.nodes]
    lines += [f'edge {e.source} "{e.relation}" {e.target}'
              for e in sorted(graph.edges, key=lambda e: (e.source, e.relation, e.target))]
    lines += [f"alias {label} {name}" for label, name in sorted(graph.aliases.items())]
    return '\n'.join(lines) + '\n'
