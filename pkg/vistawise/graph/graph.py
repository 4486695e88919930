"""The cross-modal knowledge graph.

Topology is a directed multigraph keyed by relation, so two entities may be
linked by several relations but never twice by the same one. Visual
attributes live on the node data and are replaced wholesale every time a
frame is embedded."""

import logging

from typing import Dict,Iterator,List,Optional,Set,Tuple

import networkx as nx

from vistawise.shared import PLAYER,RELATIONS,NODE_KINDS,canonical_name
from vistawise.perception.records import ObservationFrame
from .nodes import EntityNode,RelationEdge,Finding

logger = logging.getLogger('vistawise.graph.graph')

# Which observation space may attribute a node of a given kind.
_SPACE_OF_KIND = {'environmental': 'env_attr', 'conditional': 'inv_attr'}

class CrossModalGraph:
    """Text-modal knowledge graph whose nodes carry per-timestep visual
    attributes."""

    def __init__(self, player_node: str = PLAYER) -> None:
        self.digraph = nx.MultiDiGraph()
        self.player_node = player_node
        self.aliases: Dict[str, str] = {}
        self.timestep_tag = None
        # Detections with no matching node in the last embedding.
        self.skipped = 0

    def add_node(self, name: str, kind: str) -> None:
        self.digraph.add_node(canonical_name(name), kind=kind, env_attr=None, inv_attr=None)

    def add_edge(self, source: str, relation: str, target: str) -> None:
        """Add a relation edge. Endpoints are not checked here; validate()
        reports any that were never declared."""

        self.digraph.add_edge(canonical_name(source), canonical_name(target), key=relation)

    def add_alias(self, label: str, name: str) -> None:
        self.aliases[label.casefold()] = canonical_name(name)

    def has_node(self, name: str) -> bool:
        """True for declared nodes. Endpoints created implicitly by an edge
        carry no kind and do not count."""

        name = canonical_name(name)
        return name in self.digraph and 'kind' in self.digraph.nodes[name]

    def kind(self, name: str) -> Optional[str]:
        name = canonical_name(name)
        if name not in self.digraph:
            return None
        return self.digraph.nodes[name].get('kind')

    def node(self, name: str) -> EntityNode:
        name = canonical_name(name)
        data = self.digraph.nodes[name]
        return EntityNode(name, data.get('kind'), data.get('env_attr'), data.get('inv_attr'))

    @property
    def nodes(self) -> List[EntityNode]:
        return [self.node(name) for name in sorted(self.node_names())]

    def node_names(self) -> Set[str]:
        return {n for n, data in self.digraph.nodes(data=True) if 'kind' in data}

    @property
    def edges(self) -> Set[RelationEdge]:
        return {RelationEdge(u, v, rel) for u, v, rel in self.digraph.edges(keys=True)}

    def edges_of(self, name: str) -> List[RelationEdge]:
        """Every edge the node takes part in, in either direction."""

        name = canonical_name(name)
        found = set(RelationEdge(u, v, rel) for u, v, rel in self.digraph.out_edges(name, keys=True))
        found.update(RelationEdge(u, v, rel) for u, v, rel in self.digraph.in_edges(name, keys=True))
        return sorted(found, key=str)

    def attributed(self) -> Iterator[EntityNode]:
        for node in self.nodes:
            if node.attributed:
                yield node

    def resolve_label(self, label: str) -> Optional[str]:
        """Map a detector label to a node name: explicit aliases first, then
        the '_icon' suffix is dropped and the rest canonicalized. Returns None
        when no declared node matches."""

        alias = self.aliases.get(label.casefold())
        if alias is not None:
            return alias

        base = label[:-5] if label.endswith('_icon') else label
        name = canonical_name(base)
        return name if self.has_node(name) else None

    def copy(self) -> 'CrossModalGraph':
        other = CrossModalGraph(self.player_node)
        other.digraph = self.digraph.copy()
        other.aliases = dict(self.aliases)
        other.timestep_tag = self.timestep_tag
        other.skipped = self.skipped
        return other

    def topology(self) -> Tuple[frozenset, frozenset]:
        """Node names with their kinds, and edge triples."""

        return (frozenset((n, self.kind(n)) for n in self.node_names()), frozenset(self.edges))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrossModalGraph):
            return NotImplemented
        return (self.topology() == other.topology()
                and self.aliases == other.aliases
                and self.nodes == other.nodes)

    def __str__(self):
        return f"CrossModalGraph({len(self.node_names())} nodes, {self.digraph.number_of_edges()} edges)"

    def validate(self) -> List[Finding]:
        """Check every graph invariant and return the problems found. Never
        mutates the graph.

        Returns:
            list: Finding entries, empty when the graph is valid
        """

        findings = []
        declared = self.node_names()

        if self.player_node not in declared:
            findings.append(Finding('no player node', f"'{self.player_node}' is not declared"))

        for name in sorted(declared):
            data = self.digraph.nodes[name]
            if data['kind'] not in NODE_KINDS:
                findings.append(Finding('unknown kind', f"{name} has kind {data['kind']!r}"))
            if data.get('env_attr') is not None and data.get('inv_attr') is not None:
                findings.append(Finding('double attribute', f"{name} carries both attributes"))
            if data['kind'] == 'abstract' and (data.get('env_attr') or data.get('inv_attr')):
                findings.append(Finding('attributed abstract node', name))

        for edge in sorted(self.edges, key=str):
            if edge.relation not in RELATIONS:
                findings.append(Finding('unknown relation', str(edge)))
            if edge.source == edge.target:
                findings.append(Finding('self loop', str(edge)))
            for end in (edge.source, edge.target):
                if end not in declared:
                    findings.append(Finding('dangling endpoint', f"{end} in {edge}"))

        for label, name in sorted(self.aliases.items()):
            if name not in declared:
                findings.append(Finding('dangling alias', f"{label} -> {name}"))

        return findings

    def clear_visual_attributes(self) -> 'CrossModalGraph':
        """Return a copy with every visual attribute unset."""

        other = self.copy()
        for name in other.digraph.nodes:
            other.digraph.nodes[name]['env_attr'] = None
            other.digraph.nodes[name]['inv_attr'] = None
        return other

    def embed_visual_attributes(self, frame: ObservationFrame) -> 'CrossModalGraph':
        """Return a copy whose nodes carry the attributes of one frame.
        Attributes of earlier frames are dropped first. Detections that name
        no node, or a node of the wrong kind for their space, are counted in
        the copy's skipped tally.

        Args:
            frame (ObservationFrame): the partitioned observation

        Returns:
            CrossModalGraph: the attributed copy
        """

        other = self.clear_visual_attributes()
        skipped = 0

        for slot, entries in (('env_attr', frame.env), ('inv_attr', frame.inv)):
            for name, info in entries:
                name = canonical_name(name)
                if not other.has_node(name) or _SPACE_OF_KIND.get(other.kind(name)) != slot:
                    logger.debug(f"skipping detection {name} for {slot}")
                    skipped += 1
                    continue
                other.digraph.nodes[name][slot] = info

        if skipped:
            logger.warning(f"{skipped} detections at timestep {frame.timestep} matched no graph node")

        other.timestep_tag = frame.timestep
        other.skipped = skipped
        return other

def validate(graph: CrossModalGraph) -> List[Finding]:
    return graph.validate()

def embed_visual_attributes(graph: CrossModalGraph, frame: ObservationFrame) -> CrossModalGraph:
    return graph.embed_visual_attributes(frame)

def clear_visual_attributes(graph: CrossModalGraph) -> CrossModalGraph:
    return graph.clear_visual_attributes()
