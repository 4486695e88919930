from .base import EpisodeMetrics
