import logging

from dataclasses import dataclass,field
from typing import Dict,Optional,Tuple

from vistawise.shared import vistaassert

logger = logging.getLogger('vistawise.policy.base')

@dataclass(frozen=True)
class PolicyRequest:
    prompt: str
    max_output: int = 256
    metadata: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        vistaassert(self.prompt, "policy request with an empty prompt")

@dataclass(frozen=True)
class PolicyResponse:
    text: str
    latency_ms: float = 0.0
    # (prompt tokens, completion tokens) when the provider reports them
    token_usage: Optional[Tuple[int, int]] = None

class DecisionProvider:
    """The base class of the decision policies. decide() maps a prompt to the
    raw text of a decision."""

    name = 'policy'

    def decide(self, req: PolicyRequest) -> PolicyResponse:
        raise NotImplementedError

    def close(self) -> None:
        pass
