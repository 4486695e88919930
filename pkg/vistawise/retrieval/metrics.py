import logging

from dataclasses import dataclass
from typing import AbstractSet

logger = logging.getLogger('vistawise.retrieval.metrics')

@dataclass(frozen=True)
class RetrievalMetrics:
    """fpr is the share of retrieved nodes that are redundant, fnr the share
    of needed nodes that were missed."""

    fpr: float
    fnr: float

def fpr_fnr(retrieved: AbstractSet[str], oracle: AbstractSet[str]) -> RetrievalMetrics:
    retrieved = set(retrieved)
    oracle = set(oracle)

    fpr = len(retrieved - oracle) / len(retrieved) if retrieved else 0.0
    fnr = len(oracle - retrieved) / len(oracle) if oracle else 0.0
    return RetrievalMetrics(fpr, fnr)
