import contextlib
import hashlib
import io
import json
import logging
import os
import pathlib
import tempfile
import unittest

from unittest import mock

from vistawise.harness import (RunConfig,load_config,run,read_replay,bench_retrieval,
                               compare_tokens,format_table,ARTIFACTS,MANIFEST)
from vistawise.harness.cli import main
from vistawise.sim import load_scenario,replay
from vistawise.shared import DATA_DIR,MILESTONES,ExitCodes
from vistawise.exceptions import VistaConfigError
from tests.stub import PolicyStub

log = logging.getLogger('vistawise')
log.setLevel(logging.WARNING)

CREDENTIAL = 'VISTAWISE_TEST_KEY'

def quiet_main(argv):
    with contextlib.redirect_stdout(io.StringIO()) as out:
        code = main(argv)
    log.setLevel(logging.WARNING)
    return code, out.getvalue()

class TestVistaRun(unittest.TestCase):

    def test_diamond_liveness(self):
        for seed in range(15):
            report = run(RunConfig(seed=seed))
            self.assertTrue(report.succeeded, f"seed {seed}: {report.timeline}")
            self.assertEqual(set(report.timeline), {goal for goal, _ in MILESTONES}, f"seed {seed}")
            self.assertLessEqual(len(report.steps), 400, f"seed {seed}")
            self.assertLess(report.wall_time, 60.0, f"seed {seed}")
            self.assertEqual(report.exit_code, ExitCodes.SUCCESS)
            # The timeline only records first arrivals.
            self.assertTrue(all(1 <= t <= len(report.steps) for t in report.timeline.values()))

    def test_chop_log(self):
        report = run(RunConfig(task='chop_log', seed=1))
        self.assertTrue(report.succeeded)
        self.assertTrue(report.success['obtain_log'])
        self.assertFalse(report.success['obtain_diamond'])
        self.assertEqual(report.timeline['obtain_log'], len(report.steps), "Stops once the log is in")

    def test_deterministic(self):
        a = run(RunConfig(seed=4, max_steps=60))
        b = run(RunConfig(seed=4, max_steps=60))
        self.assertEqual(a.to_dict(timing=False), b.to_dict(timing=False))
        self.assertEqual(a.steps, b.steps)
        self.assertEqual(a.final_hash, b.final_hash)
        self.assertNotIn('wall_time', a.to_dict(timing=False))

    def test_single_step(self):
        report = run(RunConfig(max_steps=1))
        self.assertLessEqual(len(report.steps), 1)
        self.assertFalse(report.success['obtain_diamond'])
        self.assertFalse(report.succeeded)
        self.assertEqual(report.exit_code, ExitCodes.TASK_FAILURE)

    def test_bad_configs(self):
        for config in (RunConfig(graph_file='/nonexistent/graph.kg'),
                       RunConfig(task='fly_to_the_moon'),
                       RunConfig(max_steps=0),
                       RunConfig(policy='remote'),
                       RunConfig(textualization='verbose')):
            with self.assertRaises(VistaConfigError, msg=str(config)):
                run(config)

    def test_artifacts(self):
        with tempfile.TemporaryDirectory() as tmp:
            report = run(RunConfig(seed=2, max_steps=5, output_dir=tmp))
            outdir = pathlib.Path(tmp)
            manifest = json.loads((outdir / MANIFEST).read_text())

            self.assertEqual(sorted(manifest['artifacts']), sorted(ARTIFACTS))
            for name, digest in manifest['artifacts'].items():
                self.assertEqual(hashlib.sha256((outdir / name).read_bytes()).hexdigest(), digest, name)
            self.assertEqual(manifest['final_hash'], report.final_hash)

            saved = json.loads((outdir / 'report.json').read_text())
            self.assertEqual(saved['steps'], 5)
            self.assertEqual(len((outdir / 'steps.jsonl').read_text().splitlines()), 5)
            self.assertEqual(len((outdir / 'memory.jsonl').read_text().splitlines()), 5)

            records = read_replay(outdir / 'replay.jsonl')
            self.assertEqual(replay(load_scenario(), 2, records), report.final_hash)

class TestVistaConfig(unittest.TestCase):

    def test_shipped_example(self):
        config = load_config(DATA_DIR / 'run.example.json')
        self.assertEqual((config.task, config.seed, config.policy), ('diamond', 7, 'scripted'))
        self.assertEqual(pathlib.Path(config.output_dir), DATA_DIR / 'runs' / 'diamond-seed7')
        config.check()

    def test_absolute_output_dir(self):
        with tempfile.TemporaryDirectory() as tmp:
            outdir = pathlib.Path(tmp).resolve() / 'runs' / 'seed1'
            self.assertTrue(outdir.is_absolute())
            RunConfig(output_dir=str(outdir)).check()
            report = run(RunConfig(seed=1, max_steps=2, output_dir=str(outdir)))
            self.assertTrue((outdir / MANIFEST).is_file())
            self.assertEqual(len(report.steps), 2)
        with self.assertRaises(VistaConfigError):
            RunConfig(output_dir='runs/bad\0name').check()

    def test_override(self):
        config = RunConfig().override(seed=3, task=None)
        self.assertEqual((config.seed, config.task), (3, 'diamond'))

    def test_unknown_field(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / 'run.json'
            path.write_text('{"seed": 1, "colour": "blue"}')
            with self.assertRaises(VistaConfigError):
                load_config(path)
            path.write_text('{"seed": 1,')
            with self.assertRaises(VistaConfigError):
                load_config(path)

class TestVistaBench(unittest.TestCase):

    def setUp(self):
        self.rows = {(r['case'], r['strategy']): r for r in bench_retrieval()}

    def test_row_order(self):
        rows = bench_retrieval()
        self.assertEqual([r['case'] for r in rows[::5]],
                         ['chop_log_offpath', 'chop_log_visible', 'diamond_midgame'])
        self.assertEqual([r['strategy'] for r in rows[:5]],
                         ['similarity', 'emp', 'psp', 'emp_psp', 'psp_emp'])
        self.assertEqual(len(format_table(rows).splitlines()), len(rows) + 1)

    def test_diamond_case(self):
        ours = self.rows[('diamond_midgame', 'psp_emp')]
        baseline = self.rows[('diamond_midgame', 'similarity')]
        self.assertLessEqual(ours['fpr'], baseline['fpr'])
        self.assertLessEqual(ours['fnr'], baseline['fnr'])
        self.assertAlmostEqual(ours['fpr'], 1 / 15, places=4)
        self.assertAlmostEqual(ours['fnr'], 3 / 17, places=4)
        self.assertAlmostEqual(baseline['fpr'], 2 / 14, places=4)
        self.assertAlmostEqual(baseline['fnr'], 5 / 17, places=4)
        self.assertEqual(self.rows[('diamond_midgame', 'psp')]['fnr'], 0.0)
        self.assertTrue(ours['connected'])

    def test_oracle_case(self):
        row = self.rows[('chop_log_visible', 'psp_emp')]
        self.assertEqual((row['fpr'], row['fnr']), (0.0, 0.0))
        self.assertTrue(row['connected'])

    def test_matching_first_loses_the_path(self):
        row = self.rows[('chop_log_offpath', 'emp_psp')]
        self.assertTrue(row['no_path'])
        self.assertEqual(row['nodes'], 0)
        self.assertFalse(row['connected'])

    def test_metrics_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            rows = bench_retrieval(output_dir=tmp)
            saved = json.loads((pathlib.Path(tmp) / 'retrieval_metrics.json').read_text())
        self.assertEqual(saved, rows)

    def test_no_cases(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(VistaConfigError):
                bench_retrieval(tmp)

class TestVistaTokens(unittest.TestCase):

    def test_names_only_saves_tokens(self):
        result = compare_tokens(RunConfig(seed=7, textualization='names'),
                                RunConfig(seed=7, textualization='full'))
        self.assertLess(result.tokens_a, result.tokens_b)
        self.assertGreaterEqual(result.reduction, 20.0)
        self.assertTrue(result.same_outcome)
        self.assertEqual(result.steps_a, result.steps_b)

    def test_identical_configs(self):
        config = RunConfig(seed=1, max_steps=3)
        self.assertEqual(compare_tokens(config, config).ratio, 1.0)

    def test_sides_keep_their_artifacts(self):
        with tempfile.TemporaryDirectory() as tmp:
            compare_tokens(RunConfig(seed=1, max_steps=3, textualization='names', output_dir=tmp),
                           RunConfig(seed=1, max_steps=3, textualization='full', output_dir=tmp))
            reports = [json.loads((pathlib.Path(tmp) / side / 'report.json').read_text())
                       for side in ('a', 'b')]
        self.assertEqual([r['textualization'] for r in reports], ['names', 'full'])

    def test_mismatched_configs(self):
        with self.assertRaises(VistaConfigError):
            compare_tokens(RunConfig(task='diamond'), RunConfig(task='chop_log'))
        with self.assertRaises(VistaConfigError):
            compare_tokens(RunConfig(seed=1), RunConfig(seed=2, textualization='full'))

@mock.patch.dict(os.environ, {CREDENTIAL: 'sekrit'})
class TestVistaRemoteEpisode(unittest.TestCase):

    def endpoint(self, tmp, stub):
        path = pathlib.Path(tmp) / 'endpoint.json'
        path.write_text(json.dumps({'base_url': stub.base_url, 'model': 'stub-model',
                                    'credential_env': CREDENTIAL, 'max_retries': 3,
                                    'backoff_ms': 1, 'timeout_ms': 5000}))
        return str(path)

    def test_three_steps(self):
        with tempfile.TemporaryDirectory() as tmp, PolicyStub() as stub:
            report = run(RunConfig(policy='remote', endpoint=self.endpoint(tmp, stub), max_steps=3))
        self.assertEqual(len(report.steps), 3)
        self.assertEqual([s['action'] for s in report.steps], ['Action: turn(5, 5)'] * 3)
        self.assertIsNone(report.error)
        self.assertEqual(report.policy, 'remote')
        self.assertEqual(len(stub.requests), 3)

    def test_server_errors(self):
        with tempfile.TemporaryDirectory() as tmp, PolicyStub(lambda body: (500, '{}')) as stub:
            report = run(RunConfig(policy='remote', endpoint=self.endpoint(tmp, stub), max_steps=3))
        self.assertEqual(report.exit_code, ExitCodes.POLICY_TRANSPORT)
        self.assertEqual(len(stub.requests), 3, "Exactly the configured attempts")
        self.assertEqual(report.steps, [])
        self.assertFalse(report.succeeded)

    def test_cli_exit_code(self):
        with tempfile.TemporaryDirectory() as tmp, PolicyStub(lambda body: (502, '{}')) as stub:
            code, _ = quiet_main(['run', '--policy', 'remote', '--endpoint', self.endpoint(tmp, stub),
                                  '--max-steps', '2'])
        self.assertEqual(code, ExitCodes.POLICY_TRANSPORT)

class TestVistaCli(unittest.TestCase):

    def test_validate_graph(self):
        code, out = quiet_main(['validate-graph'])
        self.assertEqual(code, ExitCodes.SUCCESS)
        self.assertIn('no findings', out)

        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / 'bad.kg'
            path.write_text('node player abstract\nnode player abstract\n')
            code, out = quiet_main(['validate-graph', str(path)])
        self.assertEqual(code, ExitCodes.CONFIG_ERROR)
        self.assertIn('line 2', out)

    def test_bad_run_config(self):
        self.assertEqual(quiet_main(['run', '--max-steps', '0'])[0], ExitCodes.CONFIG_ERROR)
        self.assertEqual(quiet_main(['run', '--config', '/nonexistent/run.json'])[0], ExitCodes.CONFIG_ERROR)

    def test_run_then_replay(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, out = quiet_main(['run', '--seed', '3', '--max-steps', '4', '--output-dir', tmp])
            self.assertEqual(code, ExitCodes.TASK_FAILURE)
            self.assertEqual(json.loads(out)['steps'], 4)

            replay_log = str(pathlib.Path(tmp) / 'replay.jsonl')
            code, out = quiet_main(['replay', replay_log])
            self.assertEqual(code, ExitCodes.SUCCESS)
            self.assertEqual(out.strip(), json.loads((pathlib.Path(tmp) / MANIFEST).read_text())['final_hash'])

            self.assertEqual(quiet_main(['replay', replay_log, '--expect', '0' * 64])[0],
                             ExitCodes.TASK_FAILURE)

    def test_replay_keeps_range_thresholds(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / 'run.json'
            path.write_text(json.dumps({'seed': 2, 'max_steps': 6, 'output_dir': 'out',
                                        'range': {'k_w': 80, 'k_h': 200}}))
            self.assertEqual(quiet_main(['run', '--config', str(path)])[0], ExitCodes.TASK_FAILURE)

            outdir = pathlib.Path(tmp) / 'out'
            manifest = json.loads((outdir / MANIFEST).read_text())
            self.assertEqual(manifest['range'], {'k_w': 80, 'k_h': 200})
            code, out = quiet_main(['replay', str(outdir / 'replay.jsonl')])
        self.assertEqual(code, ExitCodes.SUCCESS)
        self.assertEqual(out.strip(), manifest['final_hash'])

    def test_bench(self):
        code, out = quiet_main(['bench-retrieval'])
        self.assertEqual(code, ExitCodes.SUCCESS)
        self.assertIn('diamond_midgame', out)

    def test_compare_tokens(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / 'run.json'
            path.write_text('{"seed": 1, "max_steps": 3}')
            code, out = quiet_main(['compare-tokens', str(path), str(path)])
        self.assertEqual(code, ExitCodes.SUCCESS)
        self.assertEqual(json.loads(out)['ratio'], 1.0)

if __name__ == '__main__':
    unittest.main()
