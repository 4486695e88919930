"""Graph-based retrieval: path search pooling, entity match pooling, the
similarity baseline, textualization and retrieval metrics."""

from .task import TaskSpec,load_tasks,DEFAULT_TASKS
from .pooling import (Provenance,GlobalPool,PooledSubgraph,full_pool,pool_paths,
                      path_search_pool,entity_match_pool,retrieve,emp_then_psp,
                      match_tokens,mentions)
from .similarity import (SimilarityProvider,BagOfWordsProvider,similarity_retrieve)
from .textualize import Verbosity,textualize,env_line,inv_line
from .metrics import RetrievalMetrics,fpr_fnr
