from zensols.bsgroup import BaumslagSolitarError, ParameterError
from zensols.bsgroup import UnknownGeneratorError
from zensols.bsgroup.presentation import FreeWord
from zensols.bsgroup.pcp import (
    AbelianInvariants, PcPresentation, ExponentLattice, subgroup_lattice,
    zero_lattice, full_lattice, check_consistent
)
from util import TestBase


class TestAbelianInvariants(TestBase):
    def test_divisors(self):
        inv = AbelianInvariants.from_divisors((0, 1, 2, 0, -4))
        self.assertEqual(2, inv.free_rank)
        self.assertEqual((2, 4), inv.torsion)
        self.assertEqual('Z^2 + Z/2 + Z/4', str(inv))
        self.assertFalse(inv.is_finite)
        self.assertEqual(0, inv.order)
        inv = AbelianInvariants.from_divisors((1, 1))
        self.assertTrue(inv.is_trivial)
        self.assertEqual('0', str(inv))
        self.assertEqual(1, inv.order)
        self.assertEqual('Z + Z/4', str(AbelianInvariants(1, (4,))))
        self.assertEqual(8, AbelianInvariants(0, (2, 4)).order)


def heisenberg() -> PcPresentation:
    return PcPresentation(
        names=('g1', 'g2', 'g3'),
        weights=(1, 1, 2),
        orders=(0, 0, 0),
        commutators={(1, 0): (0, 0, 1)},
        epimorphism=((1, 0, 0), (0, 1, 0)),
        group_names=('x', 'y'),
        nilpotency_class=2)


class TestCollection(TestBase):
    def test_collect(self):
        pc = heisenberg()
        self.assertEqual((1, 1, 1), pc.collect(FreeWord(((1, 1), (0, 1)))))
        self.assertEqual((1, 1, 0), pc.collect(FreeWord(((0, 1), (1, 1)))))
        self.assertEqual((2, 3, 6), pc.collect(FreeWord(((1, 3), (0, 2)))))
        self.assertEqual((-1, 1, -1), pc.collect(FreeWord(((1, 1), (0, -1)))))
        self.assertEqual('g1 g2 g3', pc.format_vector((1, 1, 1)))
        with self.assertRaises(UnknownGeneratorError):
            pc.collect(FreeWord(((3, 1),)))

    def test_arithmetic(self):
        pc = heisenberg()
        g1, g2 = pc.unit(0), pc.unit(1)
        self.assertEqual((0, 0, 1), pc.commutator(g2, g1))
        self.assertEqual((0, 0, -1), pc.commutator(g1, g2))
        u = (1, 2, 3)
        self.assertEqual(pc.identity(), pc.multiply(u, pc.inverse(u)))
        self.assertEqual(pc.multiply(u, pc.multiply(u, u)), pc.power(u, 3))
        self.assertEqual(pc.inverse(pc.power(u, 2)), pc.power(u, -2))
        self.assertEqual((0, 1, 1), pc.conjugate(g2, g1))
        self.assertEqual((1, 1, 1), pc.image(FreeWord(((1, 1), (0, 1)))))
        self.assertEqual((3, 0), pc.layer((3, 0, 1), 1))
        self.assertEqual((1,), pc.layer((3, 0, 1), 2))
        self.assertEqual((), pc.consistency_violations())

    def test_finite(self):
        # cyclic of order 4 as g1^2 = g2, g2^2 = 1
        pc = PcPresentation(
            names=('g1', 'g2'), weights=(1, 1), orders=(2, 2),
            powers={0: (0, 1)})
        self.assertEqual((1, 1), pc.collect(FreeWord(((0, 3),))))
        self.assertEqual((0, 0), pc.collect(FreeWord(((0, 4),))))
        self.assertEqual((1, 1), pc.inverse((1, 0)))
        check_consistent(pc)

    def test_inconsistent(self):
        pc = PcPresentation(
            names=('g1', 'g2', 'g3'), weights=(1, 1, 2), orders=(2, 0, 0),
            commutators={(1, 0): (0, 0, 1)})
        self.assertTrue(len(pc.consistency_violations()) > 0)
        with self.assertRaises(BaumslagSolitarError):
            check_consistent(pc)

    def test_shape(self):
        with self.assertRaises(ParameterError):
            PcPresentation(names=('g1',), weights=(1, 1), orders=(0,))
        with self.assertRaises(ParameterError):
            PcPresentation(names=('g1',), weights=(1,), orders=(0,),
                           epimorphism=((1, 0),))


class TestLattice(TestBase):
    def test_subgroup(self):
        pc = heisenberg()
        lat: ExponentLattice = subgroup_lattice(pc, [(1, 0, 0)])
        self.assertEqual(((1, 0, 0),), lat.rows)
        self.assertTrue(lat.contains((2, 0, 0)))
        self.assertFalse(lat.contains((0, 0, 1)))
        closure = subgroup_lattice(pc, [(1, 0, 0)], normal=True)
        self.assertEqual(((1, 0, 0), (0, 0, 1)), closure.rows)
        self.assertTrue(lat.issubset(closure))
        self.assertFalse(closure.issubset(lat))
        self.assertEqual('<g1, g3>', str(closure))

    def test_canonical(self):
        pc = heisenberg()
        a = subgroup_lattice(pc, [(0, 0, 4), (0, 0, 6)])
        b = subgroup_lattice(pc, [(0, 0, -2)])
        self.assertEqual(((0, 0, 2),), a.rows)
        self.assertEqual(a, b)
        c = subgroup_lattice(pc, [(0, 2, 0), (0, 1, 3)])
        self.assertEqual(c, subgroup_lattice(pc, [(0, 1, 3), (0, 0, 6)]))
        self.assertEqual(2, c.rank)

    def test_trivial(self):
        pc = heisenberg()
        self.assertTrue(zero_lattice(pc).is_zero)
        self.assertEqual(3, full_lattice(pc).rank)
        self.assertTrue(zero_lattice(pc).issubset(full_lattice(pc)))
        self.assertEqual(zero_lattice(pc), subgroup_lattice(pc, [(0, 0, 0)]))
        other = heisenberg()
        with self.assertRaises(ParameterError):
            zero_lattice(pc).issubset(zero_lattice(other))
        with self.assertRaises(ParameterError):
            subgroup_lattice(pc, [(1, 0)])
