"""Retrieval-based pooling.

Path search pooling keeps every node and edge lying on some simple path
between the player and the task target, with edges traversable in either
direction. Entity match pooling then keeps the pooled nodes the prompt
names or the current frame sees."""

import logging
import re

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet,Iterable,List,Tuple

import networkx as nx

from vistawise.shared import canonical_name
from vistawise.graph import CrossModalGraph,RelationEdge
from .task import TaskSpec

logger = logging.getLogger('vistawise.retrieval.pooling')

class Provenance(str, Enum):
    PSP_EMP = 'psp_emp'
    EMP_PSP = 'emp_psp'
    PSP = 'psp'
    EMP = 'emp'
    SIMILARITY = 'similarity'

@dataclass(frozen=True)
class GlobalPool:
    nodes: FrozenSet[str] = frozenset()
    edges: FrozenSet[RelationEdge] = frozenset()
    no_path: bool = False

@dataclass(frozen=True)
class PooledSubgraph:
    nodes: FrozenSet[str] = frozenset()
    edges: FrozenSet[RelationEdge] = frozenset()
    provenance: Provenance = Provenance.PSP_EMP
    no_path: bool = False

    def connected(self, source: str, target: str) -> bool:
        """True when the pooled edges link source and target, ignoring edge
        direction."""

        if source not in self.nodes or target not in self.nodes:
            return False
        if source == target:
            return True
        view = nx.Graph()
        view.add_nodes_from(self.nodes)
        view.add_edges_from((e.source, e.target) for e in self.edges)
        return nx.has_path(view, source, target)

def full_pool(graph: CrossModalGraph) -> GlobalPool:
    """Every node and edge of the graph, as a pool."""

    return GlobalPool(frozenset(graph.node_names()), frozenset(graph.edges))

def _block_path(view: nx.Graph, source: str, target: str) -> List[List[Tuple[str, str]]]:
    """Return the edge lists of the biconnected blocks met on the block-cut
    tree path from source to target."""

    blocks = [list(edges) for edges in nx.biconnected_component_edges(view)]
    cuts = set(nx.articulation_points(view))

    tree = nx.Graph()
    member = {}
    for i, edges in enumerate(blocks):
        tree.add_node(('block', i))
        for u, v in edges:
            for end in (u, v):
                member.setdefault(end, set()).add(i)
                if end in cuts:
                    tree.add_edge(('block', i), ('cut', end))

    def anchor(node):
        if node in cuts:
            return ('cut', node)
        # A non-cut vertex belongs to exactly one block.
        return ('block', next(iter(member[node])))

    path = nx.shortest_path(tree, anchor(source), anchor(target))
    return [blocks[i] for kind, i in path if kind == 'block']

def pool_paths(nodes: Iterable[str], edges: Iterable[RelationEdge],
               source: str, target: str) -> GlobalPool:
    """Union of all simple source-target paths over an edge set, treating
    edges as undirected. Emitted edges keep their direction and relation.

    Args:
        nodes (iterable): node names of the search space
        edges (iterable): relation edges of the search space
        source (str): path start, the player
        target (str): path end

    Returns:
        GlobalPool: the pooled nodes and edges, no_path set when source and
            target are not connected
    """

    nodes = set(nodes)
    edges = [e for e in edges if e.source in nodes and e.target in nodes]

    if source == target and source in nodes:
        return GlobalPool(frozenset([source]), frozenset())
    if source not in nodes or target not in nodes:
        return GlobalPool(no_path=True)

    view = nx.Graph()
    view.add_nodes_from(nodes)
    view.add_edges_from((e.source, e.target) for e in edges if e.source != e.target)

    if not nx.has_path(view, source, target):
        return GlobalPool(no_path=True)

    pairs = set()
    for block in _block_path(view, source, target):
        for u, v in block:
            pairs.add(frozenset((u, v)))

    kept = frozenset(e for e in edges if frozenset((e.source, e.target)) in pairs)
    kept_nodes = frozenset(n for pair in pairs for n in pair)
    return GlobalPool(kept_nodes, kept)

def path_search_pool(graph: CrossModalGraph, task: TaskSpec) -> GlobalPool:
    """Pool the union of all simple paths from the player node to the task
    target.

    Raises:
        VistaRetrievalError: the target is not a graph node
    """

    task.check(graph)
    pool = pool_paths(graph.node_names(), graph.edges, graph.player_node, task.target)
    logger.debug(f"path search pool for {task.target}: {len(pool.nodes)} nodes, {len(pool.edges)} edges")
    return pool

_TOKEN = re.compile(r'[a-z0-9]+')

def _stem(token: str) -> str:
    # Naive plural strip: "logs" -> "log", but not "glass" or "is".
    if len(token) > 3 and token.endswith('s') and not token.endswith('ss'):
        return token[:-1]
    return token

def match_tokens(text: str) -> Tuple[str, ...]:
    """Tokens used for entity matching: case-folded, underscores as spaces,
    naive plural stripped."""

    return tuple(_stem(t) for t in _TOKEN.findall(canonical_name(text)))

def mentions(name: str, prompt_tokens: Tuple[str, ...]) -> bool:
    """True when the name occurs as a whole-token phrase in the prompt."""

    phrase = match_tokens(name)
    n = len(phrase)
    if n == 0:
        return False
    return any(prompt_tokens[i:i + n] == phrase for i in range(len(prompt_tokens) - n + 1))

def entity_match_pool(pool: GlobalPool, prompt_text: str, graph: CrossModalGraph,
                      task: TaskSpec, provenance: Provenance = Provenance.PSP_EMP) -> PooledSubgraph:
    """Keep the pooled nodes that the prompt names, that carry a visual
    attribute, or that anchor the task (player and target). An edge survives
    when both its endpoints do."""

    tokens = match_tokens(prompt_text)
    anchors = {graph.player_node, task.target}

    keep = set()
    for name in pool.nodes:
        if name in anchors or (graph.has_node(name) and graph.node(name).attributed) or mentions(name, tokens):
            keep.add(name)

    edges = frozenset(e for e in pool.edges if e.source in keep and e.target in keep)
    logger.debug(f"entity match kept {len(keep)} of {len(pool.nodes)} nodes")
    return PooledSubgraph(frozenset(keep), edges, provenance, pool.no_path)

def retrieve(graph: CrossModalGraph, task: TaskSpec, prompt_text: str) -> PooledSubgraph:
    """Path search pooling followed by entity match pooling."""

    return entity_match_pool(path_search_pool(graph, task), prompt_text, graph, task)

def emp_then_psp(graph: CrossModalGraph, task: TaskSpec, prompt_text: str) -> PooledSubgraph:
    """The reversed order: entity matching over the whole graph, then path
    search inside what matched. Can lose the player-target connection."""

    task.check(graph)
    matched = entity_match_pool(full_pool(graph), prompt_text, graph, task)
    pool = pool_paths(matched.nodes, matched.edges, graph.player_node, task.target)
    return PooledSubgraph(pool.nodes, pool.edges, Provenance.EMP_PSP, pool.no_path)
