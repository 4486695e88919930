"""Episode runner, retrieval benchmark, token comparison and the command
line."""

from .config import RunConfig,load_config,POLICIES
from .runner import EpisodeReport,run,write_artifacts,read_replay,ARTIFACTS,MANIFEST
from .bench import BenchCase,load_case,score_case,bench_retrieval,format_table,BENCH_DIR
from .tokens import TokenComparison,compare_tokens
