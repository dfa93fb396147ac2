from pathlib import Path
from zensols.bsgroup import ParameterError, ResourceBudgetError
from zensols.bsgroup.presentation import (
    FreeWord, free_presentation, bs_presentation, read_presentation,
    parse_word, T, A
)
from zensols.bsgroup.pcp import PcPresentation, full_lattice, check_consistent
from zensols.bsgroup.nq import (
    BudgetConfig, nilpotent_quotient, bs_quotient, graded_quotients,
    in_gamma, image, normal_closure_lattice, commutator_lattice,
    gamma_lattice, graded_bracket
)
from util import TestBase


class TestNilpotentQuotient(TestBase):
    def _invariants(self, pc: PcPresentation):
        return tuple(map(str, graded_quotients(pc)))

    def test_free(self):
        pc = nilpotent_quotient(free_presentation(), 3)
        self.assertEqual(('Z^2', 'Z', 'Z^2'), self._invariants(pc))
        self.assertEqual(5, pc.generator_count)
        self.assertEqual((1, 1, 2, 3, 3), pc.weights)
        self.assertEqual(3, pc.nilpotency_class)
        check_consistent(pc)

    def test_bs(self):
        pc = bs_quotient(self._bs(2, 3), 3)
        self.assertEqual(('Z', '0', '0'), self._invariants(pc))
        pc = nilpotent_quotient(bs_presentation(self._bs(2, 2)), 2)
        self.assertEqual(('Z^2', 'Z/2'), self._invariants(pc))
        check_consistent(pc)
        pc = bs_quotient(self._bs(6, 10), 1)
        self.assertEqual(('Z + Z/4',), self._invariants(pc))
        pc = bs_quotient(self._bs(2, 4), 1)
        self.assertEqual(('Z + Z/2',), self._invariants(pc))

    def test_stage_stability(self):
        pres = [free_presentation(),
                read_presentation(Path('test-resources/heisenberg.pres'))]
        pres.extend(map(lambda mn: bs_presentation(self._bs(*mn)),
                        ((2, 2), (2, 3), (2, 4), (6, 10), (2, -2))))
        for pr in pres:
            prev = graded_quotients(nilpotent_quotient(pr, 1))
            for c in range(2, 5):
                cur = graded_quotients(nilpotent_quotient(pr, c))
                self.assertEqual(c, len(cur))
                self.assertEqual(prev, cur[:c - 1], f'{pr}, class {c}')
                prev = cur

    def test_cache(self):
        p = self._bs(6, 10)
        self.assertIs(bs_quotient(p, 2), bs_quotient(p, 2))

    def test_presentation_file(self):
        pres = read_presentation(Path('test-resources/heisenberg.pres'))
        pc = nilpotent_quotient(pres, 3)
        self.assertEqual(('Z^2', 'Z', '0'), self._invariants(pc))
        xy = pres.parse('[x, y]')
        self.assertTrue(in_gamma(pc, xy, 1))
        self.assertFalse(in_gamma(pc, xy, 2))
        pres = read_presentation(Path('test-resources/bs23.pres'))
        self.assertEqual(('Z', '0'), self._invariants(
            nilpotent_quotient(pres, 2)))

    def test_class(self):
        for c in (0, -1):
            with self.assertRaises(ParameterError):
                nilpotent_quotient(free_presentation(), c)

    def test_budget(self):
        budget = BudgetConfig(data={}, max_generators=3)
        with self.assertRaises(ResourceBudgetError):
            nilpotent_quotient(free_presentation(), 3, budget)
        pc = nilpotent_quotient(free_presentation(), 2, budget)
        self.assertEqual(3, pc.generator_count)
        self.assertEqual(400, BudgetConfig.default().max_generators)


class TestQuotientElements(TestBase):
    def test_in_gamma(self):
        pc = bs_quotient(self._bs(2, 3), 3)
        a = FreeWord.generator(A)
        t = FreeWord.generator(T)
        self.assertEqual(pc.identity(), image(pc, a))
        for i in (1, 2, 3):
            self.assertTrue(in_gamma(pc, a, i))
        self.assertFalse(in_gamma(pc, t, 1))
        for i in (0, 4):
            with self.assertRaises(ParameterError):
                in_gamma(pc, a, i)

    def test_bs_commutator(self):
        # [a^m, t] = a^(n - m) in the group
        pc = bs_quotient(self._bs(6, 10), 3)
        w = parse_word('[a^6, t] a^-4')
        self.assertTrue(in_gamma(pc, w, 3))

    def test_lattices(self):
        pc = nilpotent_quotient(free_presentation(), 3)
        g1 = full_lattice(pc)
        g2 = gamma_lattice(pc, 2)
        self.assertEqual(3, g2.rank)
        self.assertEqual(2, gamma_lattice(pc, 3).rank)
        self.assertTrue(gamma_lattice(pc, 4).is_zero)
        self.assertEqual(g2, commutator_lattice(pc, g1, g1))
        self.assertEqual(gamma_lattice(pc, 3), commutator_lattice(pc, g1, g2))
        x = FreeWord.generator(0)
        closure = normal_closure_lattice(pc, [x])
        self.assertTrue(closure.contains(pc.image(parse_word(
            '[x, y]', ('x', 'y')))))
        self.assertFalse(closure.contains(pc.image(FreeWord.generator(1))))
        other = nilpotent_quotient(free_presentation(), 2)
        with self.assertRaises(ParameterError):
            commutator_lattice(pc, g1, full_lattice(other))

    def test_graded_bracket(self):
        pc = nilpotent_quotient(free_presentation(), 3)
        table = graded_bracket(pc, 1, 1)
        self.assertEqual(2, len(table))
        xy, yx = table[('g1', 'g2')], table[('g2', 'g1')]
        self.assertEqual(1, abs(xy[0]))
        self.assertEqual(tuple(map(lambda e: -e, xy)), yx)
        self.assertEqual(2, len(graded_bracket(pc, 1, 2)))
        self.assertEqual({}, graded_bracket(pc, 2, 2))
        with self.assertRaises(ParameterError):
            graded_bracket(pc, 0, 1)
