import logging
import unittest

from vistawise.agent import (AgentState,Agent,SECTIONS,synthesize_prompt,step,FALLBACK,
                             TRIVIAL_NOTE)
from vistawise.graph import load_graph
from vistawise.retrieval import load_tasks
from vistawise.memory import MemoryStack,DecisionRecord
from vistawise.perception import DetectionRecord,Space,partition_observations
from vistawise.policy import DecisionProvider,PolicyResponse,ScriptedPolicy
from vistawise.skills import ActionDecision,Backend,RecordingBackend,EventKind,InputEvent
from vistawise.shared import estimate_tokens,INVENTORY_HEADER
from vistawise.exceptions import VistaTransportError,VistaFallbackExhausted

log = logging.getLogger('vistawise')
log.setLevel(logging.ERROR)

TASKS = load_tasks()

TRUNK = DetectionRecord('trunk', Space.ENVIRONMENT, 962, 545, 120, 300, 0.9)
LOG_ICON = DetectionRecord('log_icon', Space.INVENTORY, 672, 640, count=1)

class CannedPolicy(DecisionProvider):
    """Answers with the given texts in turn, repeating the last one."""

    name = 'canned'

    def __init__(self, *texts):
        self.texts = list(texts)
        self.prompts = []

    def decide(self, req):
        self.prompts.append(req.prompt)
        text = self.texts.pop(0) if len(self.texts) > 1 else self.texts[0]
        return PolicyResponse(text)

class FailingPolicy(DecisionProvider):
    def decide(self, req):
        raise VistaTransportError("HTTP 500 from stub")

class RejectingBackend(Backend):
    def __init__(self, reject_all=False):
        self.reject_all = reject_all

    def deliver(self, event):
        return not self.reject_all and event.kind is not EventKind.WAIT

def state_for(task='chop_log', **kwargs):
    return AgentState(load_graph(), TASKS[task], **kwargs)

class TestVistaPrompt(unittest.TestCase):

    def setUp(self):
        self.state = state_for()

    def frame(self, *records):
        return partition_observations(list(records), graph=self.state.graph, timestep=1)

    def test_sections_in_order(self):
        prompt = synthesize_prompt(self.state, self.frame(TRUNK, LOG_ICON))
        self.assertEqual(tuple(prompt.sections), SECTIONS)
        offsets = [prompt.text.index(body) for body in prompt.sections.values()]
        self.assertEqual(offsets, sorted(offsets))

    def test_range_sentence(self):
        prompt = synthesize_prompt(self.state, self.frame(TRUNK))
        self.assertIn('the distance between the player and the trunk is less than the interactable range',
                      prompt.sections['task'])
        self.assertIn('The crosshair position is at (960, 540)', prompt.sections['task'])

        prompt = synthesize_prompt(self.state, self.frame())
        self.assertIn('the trunk is unknown, target not currently visible', prompt.sections['task'])

    def test_listings(self):
        prompt = synthesize_prompt(self.state, self.frame(TRUNK, LOG_ICON))
        self.assertTrue(prompt.sections['inventory'].endswith('log: inv at (672,640), count 1.'))
        self.assertIn('trunk: env at (962,545) size (120,300), within interaction range',
                      prompt.sections['environment'])
        self.assertTrue(prompt.sections['memory'].endswith('none.'), "Empty memory reads none")
        self.assertTrue(prompt.sections['knowledge'].endswith('none'), "No pooled knowledge yet")
        self.assertIn('craft_plank(l_x: pixel_coord, l_y: pixel_coord)', prompt.sections['skills'])

    def test_memory_recall_depth(self):
        memory = MemoryStack()
        for t in range(1, 6):
            memory.push(DecisionRecord(t, f"Action: turn({t}, 0)"))
        state = state_for(memory=memory, recall_steps=2)
        prompt = synthesize_prompt(state, self.frame())
        self.assertIn('step 5: Action: turn(5, 0); step 4: Action: turn(4, 0).', prompt.sections['memory'])
        self.assertNotIn('step 3', prompt.text)

    def test_deterministic(self):
        frame = self.frame(TRUNK, LOG_ICON)
        self.assertEqual(synthesize_prompt(self.state, frame), synthesize_prompt(self.state, frame))

class TestVistaAgentStep(unittest.TestCase):

    def test_scripted_step(self):
        backend = RecordingBackend()
        agent = Agent(state_for(), ScriptedPolicy(), backend)
        action, report = agent.step([TRUNK])

        self.assertEqual(action, ActionDecision('mine_log', (1200,)))
        self.assertEqual(report.action, 'Action: mine_log(1200)')
        self.assertEqual((report.timestep, report.attempts, report.fallback), (1, 1, False))
        self.assertEqual(report.prompt_tokens, estimate_tokens(agent.last_prompt))
        self.assertEqual(len(backend.events), 3)
        self.assertEqual(agent.state.memory.top, DecisionRecord(1, 'Action: mine_log(1200)'))
        knowledge = agent.last_prompt.split('Here is some knowledge')[1].split(INVENTORY_HEADER)[0]
        self.assertIn('trunk', knowledge)

    def test_fallback_after_garbage(self):
        policy = CannedPolicy('I would rather not say.')
        backend = RecordingBackend()
        agent = Agent(state_for(), policy, backend)
        action, report = agent.step([TRUNK])

        self.assertEqual(action, FALLBACK)
        self.assertEqual(FALLBACK, ActionDecision('turn', (30, 0)))
        self.assertTrue(report.fallback)
        self.assertEqual(report.attempts, 3)
        self.assertEqual(report.note, 'fallback after 3 unusable outputs, no_marker')
        self.assertEqual(backend.events, [InputEvent(EventKind.MOUSE_MOVE, (30, 0))])
        self.assertEqual(agent.state.memory.top.note, report.note)
        self.assertEqual((agent.metrics.policy_calls, agent.metrics.reprompts, agent.metrics.fallbacks),
                         (3, 2, 1))
        self.assertEqual(report.prompt_tokens, sum(estimate_tokens(p) for p in policy.prompts))

    def test_reprompt_recovers(self):
        policy = CannedPolicy('Action: mine_log(99999)', 'Action: turn(5, 5)')
        action, report = Agent(state_for(), policy, RecordingBackend()).step([TRUNK])
        self.assertEqual(action, ActionDecision('turn', (5, 5)))
        self.assertEqual((report.attempts, report.fallback), (2, False))
        self.assertIn('could not be used (out_of_range', policy.prompts[1])
        self.assertTrue(policy.prompts[1].startswith(policy.prompts[0]))

    def test_backend_rejection_falls_back(self):
        agent = Agent(state_for(), ScriptedPolicy(), RejectingBackend())
        action, report = agent.step([TRUNK])
        self.assertEqual(action, FALLBACK)
        self.assertEqual(report.note, 'fallback after 1 unusable outputs, backend rejected')

    def test_fallback_exhausted(self):
        with self.assertRaises(VistaFallbackExhausted):
            Agent(state_for(), ScriptedPolicy(), RejectingBackend(reject_all=True)).step([TRUNK])

    def test_transport_error_propagates(self):
        agent = Agent(state_for(), FailingPolicy(), RecordingBackend())
        with self.assertRaises(VistaTransportError):
            agent.step([TRUNK])
        self.assertEqual(agent.state.memory.depth(), 0, "Nothing remembered for a failed step")

    def test_trivial_task(self):
        policy = CannedPolicy('Action: turn(1, 1)')
        backend = RecordingBackend()
        agent = Agent(state_for('stand_still'), policy, backend)
        action, report = agent.step([TRUNK])
        self.assertIsNone(action)
        self.assertEqual(report.note, TRIVIAL_NOTE)
        self.assertEqual(policy.prompts, [], "Policy never asked")
        self.assertEqual(backend.events, [])
        self.assertEqual(agent.state.memory.top, DecisionRecord(1, 'none', TRIVIAL_NOTE))

    def test_one_record_per_step(self):
        agent = Agent(state_for(), CannedPolicy('Action: turn(5, 5)'), RecordingBackend())
        for _ in range(3):
            agent.step([TRUNK])
        self.assertEqual([r.timestep for r in agent.state.memory.snapshot()], [1, 2, 3])
        self.assertEqual(agent.state.timestep, 3)
        self.assertIn('step 2: Action: turn(5, 5); step 1: Action: turn(5, 5).', agent.last_prompt,
                      "The third prompt recalls the first two steps")

    def test_step_function(self):
        state, action, report = step(state_for(), [TRUNK], ScriptedPolicy(), RecordingBackend())
        self.assertEqual(state.timestep, 1)
        self.assertEqual(action, ActionDecision('mine_log', (1200,)))
        self.assertEqual(state.graph.node('trunk').env_attr.x, 962)

if __name__ == '__main__':
    unittest.main()
