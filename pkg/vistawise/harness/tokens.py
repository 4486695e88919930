"""Prompt token comparison between two runs that differ only in how the
retrieved knowledge is textualized."""

import logging
import pathlib

from dataclasses import dataclass

from vistawise.exceptions import VistaConfigError
from .config import RunConfig
from .runner import run

logger = logging.getLogger('vistawise.harness.tokens')

# Fields two compared configs may differ in.
COMPARABLE = frozenset(['textualization', 'output_dir'])

@dataclass(frozen=True)
class TokenComparison:
    tokens_a: int
    tokens_b: int
    steps_a: int
    steps_b: int
    same_outcome: bool

    @property
    def ratio(self) -> float:
        """Tokens of A per token of B."""

        return self.tokens_a / self.tokens_b if self.tokens_b else 1.0

    @property
    def reduction(self) -> float:
        """Percentage of B's tokens that A saves."""

        return (1.0 - self.ratio) * 100.0

    def to_dict(self) -> dict:
        return {'tokens_a': self.tokens_a, 'tokens_b': self.tokens_b,
                'steps_a': self.steps_a, 'steps_b': self.steps_b,
                'same_outcome': self.same_outcome,
                'ratio': round(self.ratio, 4), 'reduction': round(self.reduction, 2)}

def compare_tokens(config_a: RunConfig, config_b: RunConfig) -> TokenComparison:
    """Run both configs and compare their estimated prompt tokens.

    Raises:
        VistaConfigError: the configs differ in more than the textualization
    """

    differing = config_a.differs_from(config_b) - COMPARABLE
    if 'task' in differing:
        raise VistaConfigError(f"configs run different tasks: {config_a.task} and {config_b.task}")
    if differing:
        raise VistaConfigError(f"configs differ in {', '.join(sorted(differing))}, "
                               "only 'textualization' may differ")

    # Each side writes its artifacts to its own subdirectory.
    if config_a.output_dir is not None:
        config_a = config_a.override(output_dir=str(pathlib.Path(config_a.output_dir) / 'a'))
    if config_b.output_dir is not None:
        config_b = config_b.override(output_dir=str(pathlib.Path(config_b.output_dir) / 'b'))

    report_a = run(config_a)
    report_b = run(config_b)
    result = TokenComparison(report_a.prompt_tokens, report_b.prompt_tokens,
                             len(report_a.steps), len(report_b.steps),
                             report_a.success == report_b.success)

    logger.info(f"{config_a.textualization}: {result.tokens_a} tokens, "
                f"{config_b.textualization}: {result.tokens_b} tokens, "
                f"reduction {result.reduction:.1f}%")
    if not result.same_outcome:
        logger.warning("The compared runs reached different milestones")
    return result
