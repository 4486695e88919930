"""Cross-modal knowledge graph: loading, validation and visual attribute
embedding."""

from .nodes import EntityNode,RelationEdge,Finding
from .graph import (CrossModalGraph,validate,embed_visual_attributes,
                    clear_visual_attributes)
from .loader import load_graph,loads,serialize,DEFAULT_GRAPH
