import logging
import random
import unittest

import networkx as nx

from hypothesis import given,settings,strategies as st

from vistawise.shared import RELATIONS
from vistawise.graph import load_graph,loads,RelationEdge
from vistawise.perception import DetectionRecord,Space,partition_observations
from vistawise.retrieval import (TaskSpec,GlobalPool,PooledSubgraph,Provenance,
                                 pool_paths,path_search_pool,entity_match_pool,
                                 full_pool,retrieve,emp_then_psp,similarity_retrieve,
                                 textualize,Verbosity,fpr_fnr,load_tasks,match_tokens)
from vistawise.exceptions import VistaRetrievalError,VistaConfigError

log = logging.getLogger('vistawise')
log.setLevel(logging.WARNING)

RELS = sorted(RELATIONS)

def task_for(target, description='reaching the target'):
    return TaskSpec(id=f"get_{target}", target=target, description=description)

def brute_force(nodes, edges, source, target):
    """Union of every simple source-target path, by enumeration."""

    if source == target:
        return GlobalPool(frozenset([source]), frozenset())

    view = nx.Graph()
    view.add_nodes_from(nodes)
    view.add_edges_from((e.source, e.target) for e in edges)

    kept_nodes = set()
    pairs = set()
    for path in nx.all_simple_paths(view, source, target):
        kept_nodes.update(path)
        pairs.update(frozenset(p) for p in zip(path, path[1:]))

    if not kept_nodes:
        return GlobalPool(no_path=True)
    kept = frozenset(e for e in edges if frozenset((e.source, e.target)) in pairs)
    return GlobalPool(frozenset(kept_nodes), kept)

@st.composite
def random_graphs(draw):
    n = draw(st.integers(1, 12))
    names = [f"n{i}" for i in range(n)]
    raw = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.sampled_from(RELS)),
                        max_size=24))
    edges = {RelationEdge(names[a], names[b], rel) for a, b, rel in raw if a != b}
    source = names[draw(st.integers(0, n - 1))]
    target = names[draw(st.integers(0, n - 1))]
    return names, sorted(edges), source, target

class TestVistaPathSearch(unittest.TestCase):

    @given(random_graphs())
    @settings(max_examples=1000, deadline=None)
    def test_matches_brute_force(self, case):
        names, edges, source, target = case
        got = pool_paths(names, edges, source, target)
        want = brute_force(names, edges, source, target)
        self.assertEqual(got, want)
        for edge in got.edges:
            self.assertIn(edge.source, got.nodes)
            self.assertIn(edge.target, got.nodes)

    def test_shipped_graph_diamond(self):
        graph = load_graph()
        pool = path_search_pool(graph, task_for('diamond'))
        self.assertFalse(pool.no_path)
        self.assertTrue({'player', 'tools', 'iron pickaxe', 'diamond ore', 'diamond'} <= pool.nodes)
        # Side branches hanging off the chain never lie on a player-diamond path.
        self.assertTrue(pool.nodes.isdisjoint({'bucket', 'water', 'lava'}))
        self.assertIn(RelationEdge('iron pickaxe', 'diamond ore', 'can be used to mine'), pool.edges)

    def test_target_is_player(self):
        graph = load_graph()
        pool = path_search_pool(graph, task_for('player'))
        self.assertEqual(pool, GlobalPool(frozenset(['player']), frozenset()))

    def test_disconnected_target(self):
        graph = loads('node player abstract\nnode tools abstract\nnode rock environmental\n'
                      'edge player "can use" tools\n')
        pool = path_search_pool(graph, task_for('rock'))
        self.assertTrue(pool.no_path)
        self.assertEqual((pool.nodes, pool.edges), (frozenset(), frozenset()))

    def test_unknown_target(self):
        with self.assertRaises(VistaRetrievalError):
            path_search_pool(load_graph(), task_for('nether star'))

# Names that contain no other node name as a phrase, so mentioning one never
# mentions another.
MENTIONABLE = ['player', 'tools', 'trunk', 'stone', 'coal', 'iron ore', 'diamond',
               'water', 'lava', 'log', 'plank', 'stick', 'crafting table',
               'wooden pickaxe', 'cobblestone', 'furnace', 'iron ingot',
               'iron pickaxe', 'bucket']
FILLER = ['the', 'please', 'quickly', 'then', 'with']

def mention(name: str, rng: random.Random) -> str:
    words = name.split()
    if rng.random() < 0.4 and not words[-1].endswith('s'):
        words[-1] += 's'
    text = ' '.join(words)
    if rng.random() < 0.3:
        text = text.replace(' ', '_').title()
    return text

class TestVistaEntityMatch(unittest.TestCase):

    def setUp(self):
        self.graph = load_graph()

    def test_matches_membership_rule(self):
        rng = random.Random(5)
        names = sorted(self.graph.node_names())
        targets = [n for n in names if self.graph.kind(n) != 'abstract']

        for _ in range(500):
            task = task_for(rng.choice(targets))
            pool = path_search_pool(self.graph, task) if rng.random() < 0.5 else full_pool(self.graph)

            said = set(rng.sample(MENTIONABLE, rng.randint(0, 6)))
            parts = [mention(n, rng) for n in sorted(said)] + rng.sample(FILLER, 2)
            rng.shuffle(parts)
            prompt = ' and '.join(parts)

            seen = set(rng.sample(names, rng.randint(0, 5)))
            records = []
            for name in sorted(seen):
                kind = self.graph.kind(name)
                if kind == 'environmental':
                    records.append(DetectionRecord(name.replace(' ', '_'), Space.ENVIRONMENT, 900, 500, 50, 50))
                elif kind == 'conditional':
                    records.append(DetectionRecord(name.replace(' ', '_') + '_icon', Space.INVENTORY, 672, 640))
            graph = self.graph.embed_visual_attributes(partition_observations(records, graph=self.graph))
            attributed = {node.name for node in graph.attributed()}

            got = entity_match_pool(pool, prompt, graph, task)
            want = {n for n in pool.nodes if n in ('player', task.target) or n in attributed or n in said}
            self.assertEqual(set(got.nodes), want, prompt)
            self.assertEqual(set(got.edges), {e for e in pool.edges if e.source in want and e.target in want})

            again = entity_match_pool(GlobalPool(got.nodes, got.edges), prompt, graph, task)
            self.assertEqual((again.nodes, again.edges), (got.nodes, got.edges), "EMP is idempotent")

    def test_plural_mention(self):
        graph = self.graph
        task = task_for('log')
        got = entity_match_pool(full_pool(graph), 'I see some logs and planks', graph, task)
        self.assertIn('plank', got.nodes)
        self.assertIn('log', got.nodes)
        self.assertNotIn('ore', match_tokens('some more wood'))

    def test_empty_prompt_keeps_anchors(self):
        graph = self.graph
        task = task_for('trunk')
        got = entity_match_pool(path_search_pool(graph, task), '', graph, task)
        self.assertEqual(got.nodes, frozenset(['player', 'trunk']))
        self.assertEqual(got.edges, frozenset([RelationEdge('player', 'trunk', 'can mine')]))

    def test_all_named_is_identity(self):
        graph = self.graph
        task = task_for('diamond')
        pool = path_search_pool(graph, task)
        got = entity_match_pool(pool, ', '.join(sorted(pool.nodes)), graph, task)
        self.assertEqual((got.nodes, got.edges), (pool.nodes, pool.edges))

    def test_retrieve_mid_game(self):
        graph = self.graph
        frame = partition_observations([DetectionRecord('iron_pickaxe_icon', Space.INVENTORY, 672, 872)],
                                       graph=graph)
        graph = graph.embed_visual_attributes(frame)
        task = load_tasks()['diamond']
        sub = retrieve(graph, task, 'the player can use tools; the distance between the player '
                                    'and the diamond ore is unknown')
        self.assertIs(sub.provenance, Provenance.PSP_EMP)
        self.assertIn(RelationEdge('iron pickaxe', 'diamond ore', 'can be used to mine'), sub.edges)
        self.assertTrue(sub.nodes <= path_search_pool(graph, task).nodes, "Pooling is contractive")
        self.assertTrue(sub.connected('player', 'diamond'))

    def test_retrieve_trivial_and_no_path(self):
        sub = retrieve(self.graph, task_for('player'), 'anything')
        self.assertEqual(sub.nodes, frozenset(['player']))

        graph = loads('node player abstract\nnode rock environmental\n')
        sub = retrieve(graph, task_for('rock'), 'rock')
        self.assertTrue(sub.no_path)
        self.assertEqual(sub.nodes, frozenset())

    def test_emp_first_can_disconnect(self):
        graph = self.graph
        task = task_for('log')
        sub = emp_then_psp(graph, task, 'chopping logs')
        self.assertTrue(sub.no_path)
        self.assertFalse(sub.connected('player', 'log'))

class TestVistaSimilarity(unittest.TestCase):

    def setUp(self):
        self.graph = load_graph()

    def test_half_cosine_boundary(self):
        kept = similarity_retrieve(self.graph, 'craft an iron pickaxe', threshold=0.5)
        self.assertIn('iron ore', kept.nodes)
        self.assertIn('iron pickaxe', kept.nodes)
        dropped = similarity_retrieve(self.graph, 'craft an iron pickaxe', threshold=0.51)
        self.assertNotIn('iron ore', dropped.nodes)
        self.assertIn('iron pickaxe', dropped.nodes)
        self.assertIs(kept.provenance, Provenance.SIMILARITY)

    def test_verbatim_and_unrelated(self):
        kept = similarity_retrieve(self.graph, 'furnace', threshold=1.0)
        self.assertEqual(kept.nodes, frozenset(['furnace']))
        kept = similarity_retrieve(self.graph, 'zebra', threshold=0.01)
        self.assertEqual(kept.nodes, frozenset())

    def test_top_k(self):
        kept = similarity_retrieve(self.graph, 'stone pickaxe', top_k=2)
        self.assertEqual(kept.nodes, frozenset(['stone pickaxe', 'stone']))

    def test_bad_parameters(self):
        with self.assertRaises(VistaRetrievalError):
            similarity_retrieve(self.graph, 'x', threshold=1.5)
        with self.assertRaises(VistaRetrievalError):
            similarity_retrieve(self.graph, 'x', top_k=-1)

class TestVistaTextualize(unittest.TestCase):

    def test_single_edge(self):
        graph = loads('node player abstract\nnode tools abstract\nedge player "includes" tools\n')
        sub = PooledSubgraph(frozenset(['player', 'tools']),
                             frozenset([RelationEdge('player', 'tools', 'includes')]))
        self.assertEqual(textualize(sub, graph), 'player --includes--> tools')

    def test_attributed_node_line(self):
        graph = load_graph()
        frame = partition_observations([DetectionRecord('trunk', Space.ENVIRONMENT, 900, 500, 120, 300, 0.9)])
        graph = graph.embed_visual_attributes(frame)
        sub = PooledSubgraph(frozenset(['player', 'trunk']),
                             frozenset([RelationEdge('player', 'trunk', 'can mine')]))
        text = textualize(sub, graph)
        self.assertEqual(text.splitlines(),
                         ['player --can mine--> trunk',
                          'trunk: env at (900,500) size (120,300), within interaction range'])
        self.assertEqual(text, textualize(sub, graph), "Deterministic")

    def test_full_extends_names(self):
        graph = load_graph()
        sub = retrieve(graph, load_tasks()['diamond'], 'logs, planks and sticks')
        names = textualize(sub, graph, Verbosity.NAMES)
        full = textualize(sub, graph, Verbosity.FULL)
        self.assertTrue(full.startswith(names))
        self.assertGreater(len(full), len(names))

    def test_distinct_edge_sets_distinct_text(self):
        graph = load_graph()
        edges = sorted(graph.edges)
        rng = random.Random(3)
        seen = {}
        for _ in range(300):
            chosen = frozenset(rng.sample(edges, rng.randint(0, 6)))
            nodes = frozenset(n for e in chosen for n in (e.source, e.target))
            text = textualize(PooledSubgraph(nodes, chosen), graph)
            if text in seen:
                self.assertEqual(seen[text], chosen)
            seen[text] = chosen

class TestVistaMetrics(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(fpr_fnr({'a', 'b'}, {'a', 'b'}), fpr_fnr(set(), set()))
        got = fpr_fnr({'a', 'b', 'c', 'd'}, {'a', 'b'})
        self.assertEqual((got.fpr, got.fnr), (0.5, 0.0))
        got = fpr_fnr({'a'}, {'a', 'b', 'c', 'd'})
        self.assertEqual((got.fpr, got.fnr), (0.0, 0.75))
        got = fpr_fnr({'a'}, set())
        self.assertEqual(got.fnr, 0.0, "Empty oracle")

class TestVistaTasks(unittest.TestCase):

    def test_shipped_tasks(self):
        tasks = load_tasks()
        self.assertEqual(sorted(tasks), ['chop_log', 'diamond', 'stand_still'])
        self.assertEqual(len(tasks['diamond'].milestones), 12)
        self.assertEqual(tasks['chop_log'].focus, ('trunk',))

    def test_bad_tasks(self):
        with self.assertRaises(VistaConfigError):
            TaskSpec(id='x', target='log', description='  ')
        with self.assertRaises(VistaConfigError):
            TaskSpec(id='x', target='log', description='logs', milestones=('obtain_gold',))
        with self.assertRaises(VistaConfigError):
            TaskSpec.from_dict({'id': 'x'})

if __name__ == '__main__':
    unittest.main()
