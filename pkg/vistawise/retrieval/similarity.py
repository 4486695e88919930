"""Similarity retrieval, the baseline the pooling strategies are measured
against."""

import logging
import math
import re

from collections import Counter
from typing import Sequence

from vistawise.shared import SIMILARITY_THRESHOLD,canonical_name
from vistawise.exceptions import VistaRetrievalError
from vistawise.graph import CrossModalGraph
from .pooling import PooledSubgraph,Provenance

logger = logging.getLogger('vistawise.retrieval.similarity')

_WORD = re.compile(r'[a-z0-9]+')

def words(text: str) -> list:
    return _WORD.findall(canonical_name(text))

def cosine(a: Counter, b: Counter) -> float:
    dot = sum(a[k] * b[k] for k in a if k in b)
    if dot == 0:
        return 0.0
    # One square root keeps exact halves exact.
    norm = math.sqrt(sum(v * v for v in a.values()) * sum(v * v for v in b.values()))
    return dot / norm

class SimilarityProvider:
    """Scores how well a node name matches a prompt, in [0,1]. Subclass this
    to plug in an external embedding service."""

    def similarity(self, name: str, prompt_text: str) -> float:
        raise NotImplementedError

class BagOfWordsProvider(SimilarityProvider):
    """Cosine over case-folded word multisets. The name is compared with
    every prompt window of its own length and the best window counts."""

    def similarity(self, name: str, prompt_text: str) -> float:
        name_words = words(name)
        prompt_words = words(prompt_text)
        if not name_words or not prompt_words:
            return 0.0

        target = Counter(name_words)
        n = min(len(name_words), len(prompt_words))
        best = 0.0
        for i in range(len(prompt_words) - n + 1):
            best = max(best, cosine(target, Counter(prompt_words[i:i + n])))
            if best >= 1.0:
                break
        return best

def similarity_retrieve(graph: CrossModalGraph, prompt_text: str,
                        provider: SimilarityProvider = None,
                        threshold: float = SIMILARITY_THRESHOLD,
                        top_k: int = None) -> PooledSubgraph:
    """Keep the nodes whose name is similar enough to the prompt.

    Args:
        graph (CrossModalGraph): graph to retrieve from
        prompt_text (str): the synthesized prompt
        provider (SimilarityProvider, optional): Defaults to bag-of-words.
        threshold (float, optional): cutoff in [0,1]. Defaults to 0.5.
        top_k (int, optional): keep the k best scoring nodes instead of
            applying the cutoff

    Raises:
        VistaRetrievalError: threshold outside [0,1] or negative top_k

    Returns:
        PooledSubgraph: retained nodes and the edges between them
    """

    if not 0.0 <= threshold <= 1.0:
        raise VistaRetrievalError(f"similarity threshold {threshold} outside [0,1]")
    if top_k is not None and top_k < 0:
        raise VistaRetrievalError(f"top_k must be non-negative, got {top_k}")

    provider = provider or BagOfWordsProvider()
    scores = {name: provider.similarity(name, prompt_text) for name in graph.node_names()}

    if top_k is not None:
        ranked = sorted(scores, key=lambda n: (-scores[n], n))
        keep = frozenset(ranked[:top_k])
    else:
        keep = frozenset(n for n, s in scores.items() if s >= threshold)

    edges = frozenset(e for e in graph.edges if e.source in keep and e.target in keep)
    logger.debug(f"similarity retrieval kept {len(keep)} of {len(scores)} nodes")
    return PooledSubgraph(keep, edges, Provenance.SIMILARITY)
