import logging
import time

logger = logging.getLogger('vistawise.agent.metrics.base')

class EpisodeMetrics:
    """A class representing metrics of an episode."""

    def __init__(self) -> None:
        self.steps = 0
        # Every request sent, reprompts included
        self.policy_calls = 0
        self.reprompts = 0
        self.fallbacks = 0
        # Estimated tokens over every prompt sent
        self.prompt_tokens = 0
        # Times
        self.start_time = 0
        self.end_time = 0
        self.duration = 0
        self.tokens_per_step = 0

    def start(self) -> None:
        self.start_time = time.time()

    def stop(self) -> None:
        self.end_time = time.time()

    def compute(self) -> None:
        """Compute the episode duration and per-step rates.

           Sets:
               duration: wall time of the episode in seconds
               tokens_per_step: mean estimated prompt tokens per step
        """

        self.duration = self.end_time - self.start_time
        logger.debug(f"EpisodeMetrics.compute: duration is {self.duration}")

        self.tokens_per_step = self.prompt_tokens / self.steps if self.steps else 0
        logger.debug(f"EpisodeMetrics.compute: tokens per step is {self.tokens_per_step}")

    def to_dict(self, timing: bool = True) -> dict:
        data = {'steps': self.steps, 'policy_calls': self.policy_calls,
                'reprompts': self.reprompts, 'fallbacks': self.fallbacks,
                'prompt_tokens': self.prompt_tokens,
                'tokens_per_step': round(self.tokens_per_step, 3)}
        if timing:
            data['duration'] = self.duration
        return data
