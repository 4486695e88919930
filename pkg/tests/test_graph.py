import logging
import unittest

from vistawise.graph import load_graph,loads,serialize,validate,DEFAULT_GRAPH
from vistawise.graph.nodes import Finding
from vistawise.exceptions import VistaGraphError
from vistawise.perception import (DetectionRecord,Space,partition_observations)

log = logging.getLogger('vistawise')
log.setLevel(logging.WARNING)

MINIMAL = '''
# smallest graph there is
node player abstract
node tools abstract
edge player "includes" tools
'''

def frame_of(*records, graph=None, timestep=1):
    return partition_observations(list(records), graph=graph, timestep=timestep)

class TestVistaGraphLoad(unittest.TestCase):

    def test_minimal_document(self):
        graph = loads(MINIMAL)
        self.assertEqual(graph.node_names(), {'player', 'tools'}, "Two nodes")
        self.assertEqual(len(graph.edges), 1, "One edge")
        edge = next(iter(graph.edges))
        self.assertEqual((edge.source, edge.relation, edge.target), ('player', 'includes', 'tools'))

    def test_shipped_graph(self):
        graph = load_graph(DEFAULT_GRAPH)
        triples = {(e.source, e.relation, e.target) for e in graph.edges}
        self.assertIn(('iron ingot', 'is used to craft', 'iron pickaxe'), triples)
        self.assertEqual(graph.kind('trunk'), 'environmental')
        self.assertEqual(graph.kind('log'), 'conditional')
        self.assertEqual(graph.validate(), [], "Shipped graph is valid")

    def test_duplicate_node(self):
        with self.assertRaises(VistaGraphError) as ctx:
            loads("node player abstract\nnode trunk environmental\nnode trunk environmental\n")
        self.assertEqual(ctx.exception.line, 3, "Error names the repeated line")

    def test_unknown_relation(self):
        with self.assertRaises(VistaGraphError):
            loads('node player abstract\nnode trunk environmental\nedge player "likes" trunk\n')

    def test_dangling_endpoint(self):
        with self.assertRaises(VistaGraphError):
            loads('node player abstract\nedge player "can mine" trunk\n')

    def test_self_loop_and_duplicate_edge(self):
        with self.assertRaises(VistaGraphError):
            loads('node player abstract\nedge player "can use" player\n')
        with self.assertRaises(VistaGraphError):
            loads('node player abstract\nnode tools abstract\n'
                  'edge player "includes" tools\nedge player "includes" tools\n')

    def test_missing_player(self):
        with self.assertRaises(VistaGraphError):
            loads('node tools abstract\n')

    def test_malformed_line(self):
        with self.assertRaises(VistaGraphError) as ctx:
            loads('node player abstract\nthis is not a declaration\n')
        self.assertEqual(ctx.exception.line, 2)

    def test_missing_file(self):
        with self.assertRaises(VistaGraphError):
            load_graph('/nonexistent/graph.kg')

    def test_serialize_reloads_to_equal_graph(self):
        graph = load_graph()
        again = loads(serialize(graph))
        self.assertEqual(graph, again, "Serialized graph reloads unchanged")
        self.assertEqual(serialize(graph), serialize(again), "Serialization is stable")

class TestVistaGraphValidate(unittest.TestCase):

    def test_dangling_endpoint_finding(self):
        graph = loads(MINIMAL)
        graph.add_edge('tools', 'includes', 'hammer')
        findings = validate(graph)
        self.assertEqual([f.kind for f in findings], ['dangling endpoint'])

    def test_no_player_finding(self):
        graph = loads(MINIMAL)
        graph.player_node = 'agent'
        findings = graph.validate()
        self.assertEqual(findings, [Finding('no player node', "'agent' is not declared")])

    def test_validate_does_not_mutate(self):
        graph = load_graph()
        before = graph.topology()
        graph.validate()
        self.assertEqual(graph.topology(), before)

class TestVistaGraphAttributes(unittest.TestCase):

    def setUp(self):
        self.graph = load_graph()

    def test_embed_environment_record(self):
        record = DetectionRecord('trunk', Space.ENVIRONMENT, 900, 500, 120, 300, 0.9)
        graph = self.graph.embed_visual_attributes(frame_of(record, graph=self.graph))
        attr = graph.node('trunk').env_attr
        self.assertEqual((attr.x, attr.y, attr.w, attr.h), (900, 500, 120, 300))
        self.assertEqual(attr.range.word, 'within')
        self.assertIsNone(graph.node('trunk').inv_attr)
        self.assertIsNone(self.graph.node('trunk').env_attr, "Original graph untouched")

    def test_embed_inventory_record(self):
        record = DetectionRecord('log_icon', Space.INVENTORY, 640, 420)
        graph = self.graph.embed_visual_attributes(frame_of(record, graph=self.graph))
        attr = graph.node('log').inv_attr
        self.assertEqual((attr.x, attr.y), (640, 420))
        self.assertIsNone(attr.hotbar)

    def test_unknown_label_is_skipped(self):
        record = DetectionRecord('zombie', Space.ENVIRONMENT, 900, 500, 50, 80)
        graph = self.graph.embed_visual_attributes(frame_of(record, graph=self.graph))
        self.assertEqual(graph.skipped, 1, "Skip tally counts the zombie")
        self.assertEqual(list(graph.attributed()), [])
        self.assertEqual(graph.topology(), self.graph.topology())

    def test_alias_resolves_label(self):
        record = DetectionRecord('iron_ore_icon', Space.INVENTORY, 672, 640, count=2)
        graph = self.graph.embed_visual_attributes(frame_of(record, graph=self.graph))
        self.assertEqual(graph.node('iron ore item').inv_attr.count, 2)
        self.assertIsNone(graph.node('iron ore').env_attr)

    def test_embedding_drops_previous_frame(self):
        first = self.graph.embed_visual_attributes(
            frame_of(DetectionRecord('trunk', Space.ENVIRONMENT, 900, 500, 120, 300), graph=self.graph))
        second = first.embed_visual_attributes(
            frame_of(DetectionRecord('stick_icon', Space.INVENTORY, 744, 640), graph=self.graph, timestep=2))
        self.assertIsNone(second.node('trunk').env_attr)
        self.assertIsNotNone(second.node('stick').inv_attr)
        self.assertEqual(second.timestep_tag, 2)

    def test_clear_is_idempotent(self):
        records = [DetectionRecord('trunk', Space.ENVIRONMENT, 900, 500, 120, 300),
                   DetectionRecord('stone', Space.ENVIRONMENT, 700, 620, 90, 90),
                   DetectionRecord('log_icon', Space.INVENTORY, 640, 420)]
        graph = self.graph.embed_visual_attributes(frame_of(*records, graph=self.graph))
        self.assertEqual(len(list(graph.attributed())), 3)

        cleared = graph.clear_visual_attributes()
        self.assertEqual(list(cleared.attributed()), [])
        self.assertEqual(cleared.clear_visual_attributes(), cleared)
        self.assertEqual(self.graph.clear_visual_attributes(), self.graph,
                         "Clearing an attribute-free graph changes nothing")

if __name__ == '__main__':
    unittest.main()
