"""End to end checks on the fixture groups.

"""
from zensols.bsgroup.presentation import (
    free_presentation, normalize_bs, bs_presentation
)
from zensols.bsgroup.classify import (
    is_residually_finite, is_residually_nilpotent, is_residually_p
)
from zensols.bsgroup.lie import grc_order_bound
from zensols.bsgroup.pcp import AbelianInvariants
from zensols.bsgroup.nq import nilpotent_quotient, bs_quotient
from zensols.bsgroup.config import RunConfig, ConfigFactory
from zensols.bsgroup.corpus import CorpusRunner, bundled_corpus_path
from zensols.bsgroup.verify import (
    PASS, NOT_APPLICABLE, verify_gamma_omega_vanishing,
    verify_thm2_identity, verify_thm2_quotient_level,
    verify_trivial_when_res_nilpotent, verify_commutator_identities
)
from util import TestBase


class TestAcceptance(TestBase):
    def test_free_quotient(self):
        pc = nilpotent_quotient(free_presentation(), 6)
        self.assertEqual((2, 1, 2, 3, 6, 9),
                         tuple(map(lambda i: i.free_rank, pc.invariants)))
        self.assertTrue(all(map(lambda i: len(i.torsion) == 0,
                                pc.invariants)))

    def test_abelianization(self):
        for m, n in self.FIXTURES:
            p = self._bs(m, n)
            gr1 = nilpotent_quotient(bs_presentation(p), 1).invariants[0]
            delta = abs(p.delta)
            expect = AbelianInvariants(2, ()) if delta == 0 else \
                AbelianInvariants(1, () if delta == 1 else (delta,))
            self.assertEqual(expect, gr1, str(p))

    def test_grc_finite(self):
        for m, n in ((2, 2), (2, 4), (6, 10), (6, 9), (2, -2), (6, 12)):
            p = self._bs(m, n)
            pc = bs_quotient(p, 5)
            for c in range(2, 6):
                inv = pc.invariants[c - 1]
                self.assertTrue(inv.is_finite, f'{p}, gr_{c} = {inv}')
                self.assertEqual(0, grc_order_bound(p, c) % inv.order,
                                 f'{p}, gr_{c} = {inv}')
        pc = bs_quotient(self._bs(2, 3), 5)
        for inv in pc.invariants[1:]:
            self.assertTrue(inv.is_trivial)

    def test_gamma_omega(self):
        for m, n in self.FIXTURES:
            report = verify_gamma_omega_vanishing(self._bs(m, n), 5, 3)
            self.assertEqual(PASS, report.verdict, f'BS({m},{n})')

    def test_thm2(self):
        for m, n in ((2, 3), (6, 9), (2, 4), (6, 12)):
            report = verify_thm2_identity(self._bs(m, n))
            self.assertEqual(PASS, report.verdict, f'BS({m},{n})')
        for m, n in self.FIXTURES:
            report = verify_thm2_quotient_level(self._bs(m, n), 4, 3)
            self.assertEqual(PASS, report.verdict, report.asyaml())

    def test_residually_nilpotent_degenerate(self):
        for m, n in ((1, 3), (2, 2), (2, -2), (4, 4)):
            report = verify_trivial_when_res_nilpotent(self._bs(m, n), 3)
            self.assertEqual(PASS, report.verdict, f'BS({m},{n})')
        report = verify_trivial_when_res_nilpotent(self._bs(6, 10), 3)
        self.assertEqual(NOT_APPLICABLE, report.verdict)

    def test_classification_chain(self):
        for m in range(1, 13):
            for an in range(m, 13):
                for n in (an, -an):
                    p = normalize_bs(m, n)
                    if is_residually_nilpotent(p):
                        self.assertTrue(is_residually_finite(p), str(p))
                    for q in (2, 3, 5, 7):
                        if is_residually_p(p, q):
                            self.assertTrue(is_residually_nilpotent(p),
                                            f'{p}, p = {q}')

    def test_commutator_identities(self):
        report = verify_commutator_identities(200, seed=0, c_max=4)
        self.assertEqual(PASS, report.verdict)

    def test_bundled_corpus(self):
        config: RunConfig = ConfigFactory().create()
        summary = CorpusRunner(config).run(bundled_corpus_path())
        self.assertEqual(12, len(summary.results))
        self.assertEqual((), tuple(map(lambda r: r.mismatches,
                                       summary.failures)))
        self.assertEqual(0, summary.exit_code)

    def test_verify_all(self):
        code, out, err = self._run(['verify', '-m', '6', '-n', '9', '--all',
                                    '-l', 'warn'])
        self.assertEqual(0, code, out)
        self.assertTrue('gamma-omega: pass' in out)
        self.assertTrue('thm2-identity: pass' in out)
