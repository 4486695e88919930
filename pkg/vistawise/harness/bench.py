"""The retrieval benchmark: every shipped strategy against hand-labelled
oracle node sets."""

import json
import logging
import pathlib

from dataclasses import dataclass,field
from typing import Callable,Dict,List,Union

from vistawise.shared import DATA_DIR
from vistawise.exceptions import VistaConfigError,VistaException
from vistawise.graph import CrossModalGraph,load_graph,DEFAULT_GRAPH
from vistawise.perception import parse_detection_line,partition_observations
from vistawise.retrieval import (TaskSpec,Provenance,PooledSubgraph,load_tasks,
                                 DEFAULT_TASKS,full_pool,path_search_pool,
                                 entity_match_pool,retrieve,emp_then_psp,
                                 similarity_retrieve,fpr_fnr)

logger = logging.getLogger('vistawise.harness.bench')

BENCH_DIR = DATA_DIR / 'bench'
METRICS_FILE = 'retrieval_metrics.json'

@dataclass(frozen=True)
class BenchCase:
    id: str
    graph: CrossModalGraph
    task: TaskSpec
    prompt: str
    oracle: frozenset = field(default_factory=frozenset)

def _psp(graph, task, prompt):
    pool = path_search_pool(graph, task)
    return PooledSubgraph(pool.nodes, pool.edges, Provenance.PSP, pool.no_path)

def _emp(graph, task, prompt):
    return entity_match_pool(full_pool(graph), prompt, graph, task, provenance=Provenance.EMP)

def _similarity(graph, task, prompt):
    return similarity_retrieve(graph, prompt)

STRATEGIES: Dict[str, Callable[[CrossModalGraph, TaskSpec, str], PooledSubgraph]] = {
    Provenance.SIMILARITY.value: _similarity,
    Provenance.EMP.value: _emp,
    Provenance.PSP.value: _psp,
    Provenance.EMP_PSP.value: emp_then_psp,
    Provenance.PSP_EMP.value: retrieve,
}

def load_case(path: Union[str, pathlib.Path]) -> BenchCase:
    """Read a case file: {id, graph_file, task, prompt_file, detections,
    oracle_nodes}. graph_file defaults to the shipped graph; task names a
    task of tasks_file (the shipped tasks by default) or is an inline task
    definition; detections are optional detection lines whose attributes
    are embedded before retrieval.

    Raises:
        VistaConfigError: the case is malformed
    """

    path = pathlib.Path(path)
    try:
        data = json.loads(path.read_text(encoding='utf8'))
        base = path.parent
        graph = load_graph(base / data['graph_file'] if 'graph_file' in data else DEFAULT_GRAPH)

        if isinstance(data['task'], dict):
            task = TaskSpec.from_dict(data['task'])
        else:
            tasks = load_tasks(base / data['tasks_file'] if 'tasks_file' in data else DEFAULT_TASKS)
            task = tasks[data['task']]

        prompt = (base / data['prompt_file']).read_text(encoding='utf8')
        records = [parse_detection_line(line, i) for i, line in enumerate(data.get('detections', []))]
        if records:
            graph = graph.embed_visual_attributes(partition_observations(records, graph))

        oracle = frozenset(data['oracle_nodes'])
        unknown = sorted(oracle - graph.node_names())
        if unknown:
            raise VistaConfigError(f"oracle names unknown nodes {unknown}")
        return BenchCase(str(data.get('id', path.stem)), graph, task, prompt, oracle)
    except VistaConfigError as err:
        raise VistaConfigError(f"case {path}: {err}")
    except (OSError, ValueError, KeyError, TypeError, VistaException) as err:
        raise VistaConfigError(f"case {path} is malformed: {err}")

def score_case(case: BenchCase) -> List[dict]:
    rows = []
    for name, strategy in STRATEGIES.items():
        sub = strategy(case.graph, case.task, case.prompt)
        metrics = fpr_fnr(sub.nodes, case.oracle)
        rows.append({'case': case.id, 'strategy': name,
                     'fpr': round(metrics.fpr, 4), 'fnr': round(metrics.fnr, 4),
                     'nodes': len(sub.nodes), 'no_path': sub.no_path,
                     'connected': sub.connected(case.graph.player_node, case.task.target)})
        logger.debug(f"{case.id} {name}: fpr {metrics.fpr:.3f} fnr {metrics.fnr:.3f}")
    return rows

def bench_retrieval(cases_dir: Union[str, pathlib.Path] = BENCH_DIR,
                    output_dir: Union[str, pathlib.Path] = None) -> List[dict]:
    """Score every case file in cases_dir, sorted by file name.

    Raises:
        VistaConfigError: a case is malformed, or there are none

    Returns:
        list: one row per (case, strategy)
    """

    paths = sorted(pathlib.Path(cases_dir).glob('*.json'))
    if not paths:
        raise VistaConfigError(f"no benchmark cases in {cases_dir}")

    rows = []
    for path in paths:
        rows.extend(score_case(load_case(path)))
    logger.info(f"Scored {len(paths)} cases over {len(STRATEGIES)} strategies")

    if output_dir is not None:
        outdir = pathlib.Path(output_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / METRICS_FILE).write_text(json.dumps(rows, indent=2, sort_keys=True) + '\n',
                                           encoding='utf8')
    return rows

def format_table(rows: List[dict]) -> str:
    lines = [f"{'case':<20} {'strategy':<11} {'fpr':>6} {'fnr':>6} {'nodes':>5}  connected"]
    for row in rows:
        lines.append(f"{row['case']:<20} {row['strategy']:<11} {row['fpr']:>6.3f} "
                     f"{row['fnr']:>6.3f} {row['nodes']:>5}  {row['connected']}")
    return '\n'.join(lines)
