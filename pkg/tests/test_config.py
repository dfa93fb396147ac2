from pathlib import Path
import os
from zensols.bsgroup import BaumslagSolitarError
from zensols.bsgroup.config import RunConfig, ConfigFactory
from util import TestBase


class TestConfig(TestBase):
    def test_default(self):
        cfg: RunConfig = ConfigFactory().create()
        self.assertEqual(5, cfg.class_bound)
        self.assertEqual(3, cfg.k_window)
        self.assertEqual(2, cfg.exp_window)
        self.assertEqual((2, 3), cfg.primes)
        self.assertEqual((6,), cfg.torsion)
        self.assertEqual(200, cfg.sample_size)
        self.assertEqual(1, cfg.jobs)
        self.assertEqual(400, cfg.budget.max_generators)
        self.assertEqual(4096, cfg.budget.max_bits)
        self.assertEqual(8, cfg.lie.check_index_up_to)

    def test_override(self):
        path = Path('test-resources/config-override.yml')
        cfg: RunConfig = ConfigFactory((path,)).create()
        self.assertEqual(2, cfg.class_bound)
        self.assertEqual((5,), cfg.primes)
        self.assertEqual(3, cfg.k_window)
        self.assertEqual(50, cfg.budget.max_generators)
        self.assertEqual(4096, cfg.budget.max_bits)

    def test_environment(self):
        os.environ['BSGROUP_MAX_BITS'] = '128'
        try:
            cfg: RunConfig = ConfigFactory().create()
        finally:
            del os.environ['BSGROUP_MAX_BITS']
        self.assertEqual(128, cfg.budget.max_bits)
        self.assertEqual(400, cfg.budget.max_generators)

    def test_bad(self):
        with self.assertRaisesRegex(BaumslagSolitarError,
                                    r'^No such config file'):
            ConfigFactory((Path('test-resources/nada.yml'),)).create()
        with self.assertRaisesRegex(BaumslagSolitarError,
                                    r'^Expecting a mapping'):
            ConfigFactory((Path('test-resources/config-list.yml'),)).create()
        with self.assertRaisesRegex(BaumslagSolitarError, r"'run'"):
            RunConfig.instance({})
