from pathlib import Path
import random
from zensols.bsgroup import (
    ParameterError, WordSyntaxError, UnknownGeneratorError
)
from zensols.bsgroup.presentation import (
    T, A, FreeWord, IDENTITY, BSParams, commutator_word, format_word,
    parse_word, normalize_bs, bs_relator, bs_presentation, zzm_presentation,
    zzm_product_presentation, free_presentation, prime_power_base,
    read_presentation
)
from util import TestBase


class TestFreeWord(TestBase):
    def test_reduce(self):
        w = FreeWord(((A, 2), (A, -2), (T, 1), (T, 0), (T, 2)))
        self.assertEqual(((T, 3),), w.syllables)
        self.assertTrue(FreeWord(((A, 1), (T, 1), (T, -1), (A, -1)))
                        .is_identity)
        self.assertEqual(3, w.length)

    def test_inverse(self):
        w = parse_word('t^-1 a^2 t a')
        self.assertTrue((w * w.inverse()).is_identity)
        self.assertEqual('a^-1 t^-1 a^-2 t', format_word(w.inverse()))
        self.assertEqual(IDENTITY, w ** 0)
        self.assertEqual(w * w * w, w ** 3)
        self.assertEqual(w.inverse() ** 2, w ** -2)

    def test_commutator(self):
        a = FreeWord.generator(A)
        t = FreeWord.generator(T)
        self.assertEqual(parse_word('a^-1 t^-1 a t'), commutator_word(a, t))
        self.assertEqual(parse_word('t^-1 a t'), a.conjugate(t))
        self.assertEqual(0, commutator_word(a, t).exponent_sum(A))


class TestParse(TestBase):
    def test_grammar(self):
        self.assertEqual(IDENTITY, parse_word('1'))
        self.assertEqual(parse_word('t^-1 a^2 t a^-1 t^-1 a^-2 t a'),
                         parse_word('[t^-1 a^2 t, a]'))
        self.assertEqual(parse_word('a a a'), parse_word('a^3'))
        self.assertEqual(parse_word('a*t'), parse_word('a t'))
        self.assertEqual(parse_word('t^-1 a^-1 t a t'),
                         parse_word('([a, t])^-1 t'))
        self.assertEqual(parse_word('x y^2'), parse_word('(x y^2)', ('x', 'y')))

    def test_format_round_trip(self):
        for text in ('1', 'a^-1 t^-1 a t', 't^3 a^-5 t^-1'):
            self.assertEqual(text, format_word(parse_word(text)))

    def test_errors(self):
        with self.assertRaises(WordSyntaxError) as ctx:
            parse_word('[a, t')
        self.assertEqual(5, ctx.exception.position)
        with self.assertRaises(WordSyntaxError):
            parse_word('a^')
        with self.assertRaises(WordSyntaxError):
            parse_word('[a, t]^2')
        with self.assertRaises(WordSyntaxError):
            parse_word('a $ t')
        with self.assertRaises(WordSyntaxError):
            parse_word('')
        with self.assertRaises(UnknownGeneratorError) as ctx:
            parse_word('a b')
        self.assertEqual('b', ctx.exception.name)
        self.assertTrue(isinstance(ctx.exception, ParameterError))


class TestNormalize(TestBase):
    def test_normalize(self):
        p: BSParams = normalize_bs(2, 3)
        self.assertEqual((2, 3, 1, 2, 3, 1), (p.m, p.n, p.d, p.m1, p.n1,
                                              p.delta))
        self.assertEqual((), p.moves)
        p = normalize_bs(-3, 2)
        self.assertEqual((2, -3, 1, -5), (p.m, p.n, p.d, p.delta))
        self.assertEqual(('swap',), p.moves)
        p = normalize_bs(-2, -6)
        self.assertEqual((2, 6, 2, 1, 3), (p.m, p.n, p.d, p.m1, p.n1))
        self.assertEqual(('flip',), p.moves)
        p = normalize_bs(12, -6)
        self.assertEqual((6, -12, 6, 1, -2), (p.m, p.n, p.d, p.m1, p.n1))
        self.assertEqual(normalize_bs(6, -12), p)
        self.assertEqual('BS(6,-12)', p.name)

    def test_invalid(self):
        with self.assertRaises(ParameterError):
            normalize_bs(0, 3)
        with self.assertRaises(ParameterError):
            normalize_bs(2, 0)
        with self.assertRaises(ParameterError):
            BSParams.of(3, 2)

    def test_relator(self):
        p = normalize_bs(2, 3)
        self.assertEqual('a t^-1 a^-2 t a^2', format_word(bs_relator(p)))
        pres = bs_presentation(p)
        self.assertEqual(('t', 'a'), pres.names)
        self.assertEqual('<t, a | a t^-1 a^-2 t a^2>', str(pres))


class TestPresentations(TestBase):
    def test_builders(self):
        self.assertEqual('<t, a | a^6>', str(zzm_presentation(6)))
        self.assertEqual(('x', 'y'), free_presentation().names)
        self.assertEqual(('x1', 'x2', 'x3'), free_presentation(3).names)
        pres = zzm_product_presentation((4, 3))
        self.assertEqual(('t', 'x1', 'x2'), pres.names)
        self.assertEqual(3, len(pres.relators))
        self.assertEqual(2, prime_power_base(8))
        for bad in (1, 6, 0):
            with self.assertRaises(ParameterError):
                prime_power_base(bad)
        with self.assertRaises(ParameterError):
            zzm_product_presentation((2, 4))
        with self.assertRaises(ParameterError):
            zzm_presentation(1)

    def test_read(self):
        pres = read_presentation(Path('test-resources/heisenberg.pres'))
        self.assertEqual(('x', 'y'), pres.names)
        self.assertEqual(2, len(pres.relators))
        pres = read_presentation(Path('test-resources/bs23.pres'))
        self.assertEqual(parse_word('t^-1 a^2 t a^-3'), pres.relators[0])

    def test_read_error(self):
        with self.assertRaisesRegex(ParameterError, r':3:'):
            read_presentation(Path('test-resources/bad.pres'))


class TestPresentationProperties(TestBase):
    def _syllables(self, rand: random.Random, gens: int, length: int):
        return tuple((rand.randrange(gens), rand.choice((-3, -2, -1, 1, 2, 3)))
                     for _ in range(length))

    def test_free_reduction(self):
        rand = random.Random(0)
        for _ in range(500):
            syls = self._syllables(rand, 2, rand.randint(0, 12))
            w = FreeWord(syls)
            self.assertEqual(w, FreeWord(w.syllables))
            self.assertTrue(w.length <= sum(map(lambda s: abs(s[1]), syls)))

    def test_round_trip(self):
        rand = random.Random(1)
        names = ('x', 'y', 'z')
        for _ in range(500):
            w = FreeWord(self._syllables(rand, 3, rand.randint(0, 10)))
            text = format_word(w, names)
            self.assertEqual(w, parse_word(text, names), text)
            self.assertEqual(text, format_word(parse_word(text, names), names))
        for _ in range(200):
            w = FreeWord(self._syllables(rand, 2, rand.randint(0, 10)))
            self.assertEqual(w, parse_word(format_word(w)))

    def test_normalize_moves(self):
        rand = random.Random(2)

        def key(p: BSParams):
            return (p.m, p.n, p.d, p.m1, p.n1, p.delta)

        for _ in range(300):
            m = rand.choice((-1, 1)) * rand.randint(1, 40)
            n = rand.choice((-1, 1)) * rand.randint(1, 40)
            p = normalize_bs(m, n)
            again = normalize_bs(p.m, p.n)
            self.assertEqual(key(p), key(again))
            self.assertEqual((), again.moves)
            self.assertTrue(0 < p.m <= abs(p.n), str(p))
            for mm, nn in ((n, m), (-m, -n), (-n, -m)):
                self.assertEqual(key(p), key(normalize_bs(mm, nn)),
                                 f'({m}, {n}) vs ({mm}, {nn})')
