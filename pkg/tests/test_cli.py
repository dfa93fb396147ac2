import json
import yaml
from util import TestBase


class TestCli(TestBase):
    def test_reduce(self):
        code, out, err = self._run(
            ['reduce', '-m', '2', '-n', '3', '-w', '[t^-1 a^2 t, a]'])
        self.assertEqual(0, code, err)
        self.assertEqual('1\n', out)

    def test_reduce_json(self):
        code, out, err = self._run(
            ['reduce', '-m', '2', '-n', '3', '--word', 't^-1 a^5 t', '--json'])
        self.assertEqual(0, code, err)
        result = json.loads(out)['result']
        self.assertEqual('t^-1 a^5 t', result['input'])
        self.assertEqual('a^6 t^-1 a t', result['normal_form'])
        self.assertEqual(0, result['t_sum'])
        self.assertFalse(result['is_identity'])
        code, out, err = self._run(
            ['reduce', '-m', '2', '-n', '3', '-w', 't^-2 a t a', '-J'])
        self.assertEqual(0, code, err)
        self.assertEqual(-1, json.loads(out)['result']['t_sum'])

    def test_classify(self):
        code, out, err = self._run(['classify', '-m', '3', '-n', '2'])
        self.assertEqual(0, code, err)
        lines = out.split('\n')
        self.assertEqual('BS(2,3) (normalized with swap)', lines[0])
        self.assertTrue('  residually finite: no' in lines)
        self.assertTrue('  residually 2: no' in lines)

    def test_json(self):
        code, out, err = self._run(['classify', '-m', '4', '-n', '4', '-J'])
        self.assertEqual(0, code, err)
        doc = json.loads(out)
        self.assertEqual({'tool_version', 'subcommand', 'params', 'result'},
                         set(doc))
        self.assertEqual('classify', doc['subcommand'])
        result = doc['result']
        self.assertTrue(result['residually_nilpotent'])
        self.assertEqual({'2': True, '3': False}, result['residually_p'])

    def test_yaml(self):
        code, out, err = self._run(
            ['nq', '-r', 'test-resources/heisenberg.pres', '-C', '2',
             '-f', 'yaml'])
        self.assertEqual(0, code, err)
        doc = yaml.safe_load(out)
        self.assertEqual(['Z^2', 'Z'], doc['result']['graded_quotients'])
        self.assertEqual(2, doc['result']['class'])

    def test_lie(self):
        code, out, err = self._run(['lie', '-C', '4', '-m', '2', '-n', '3',
                                    '-J'])
        self.assertEqual(0, code, err)
        rows = json.loads(out)['result']['degrees']
        self.assertEqual([2, 1, 2, 3], list(map(lambda r: r['witt_rank'], rows)))
        self.assertEqual(None, rows[0]['order_bound'])
        self.assertEqual(1, rows[1]['order_bound'])

    def test_generators(self):
        code, out, err = self._run(['generators', '-m', '6', '-n', '10',
                                    '-s', 'gamma-omega', '-k', '1'])
        self.assertEqual(0, code, err)
        self.assertTrue(out.startswith('gamma-omega of BS(6,10):'))
        self.assertTrue('  instances with |k| <= 1:' in out.split('\n'))

    def test_long_options(self):
        code, out, err = self._run(['generators', '-m', '6', '-n', '10',
                                    '--set', 'gamma-omega', '--k-window', '1'])
        self.assertEqual(0, code, err)
        self.assertTrue('  instances with |k| <= 1:' in out.split('\n'))
        code, out, err = self._run(['classify', '-m', '2', '-n', '4',
                                    '--p', '2', '3', '--json'])
        self.assertEqual(0, code, err)
        doc = json.loads(out)
        self.assertEqual([2, 3], doc['params']['primes'])
        self.assertEqual({'2', '3'}, set(doc['result']['residually_p']))
        code, out, err = self._run(['verify', '-m', '6', '-n', '12',
                                    '--check', 'subgroup', '--class', '3',
                                    '--k-window', '2', '--json'])
        self.assertEqual(0, code, err)
        params = json.loads(out)['params']
        self.assertEqual((3, 2), (params['class_bound'], params['k_window']))

    def test_lie_modes(self):
        code, out, err = self._run(['lie', '--basis', '3', '--json'])
        self.assertEqual(0, code, err)
        self.assertEqual({'[[x,y],y]', '[[x,y],x]'},
                         set(json.loads(out)['result']['basis']))
        for argv, expect in ((['--witt', '5'], '6'),
                             (['--index', '3', '2'], '8'),
                             (['--bound', '2', '4', '3'], '8')):
            code, out, err = self._run(['lie'] + argv)
            self.assertEqual(0, code, err)
            self.assertEqual(expect + '\n', out, argv)
        code, out, err = self._run(['lie', '--bound', '-2', '-4', '3', '-J'])
        self.assertEqual(0, code, err)
        doc = json.loads(out)
        self.assertEqual('BS(2,4)', doc['params']['group'])
        self.assertEqual(8, doc['result']['order_bound'])

    def test_verify(self):
        code, out, err = self._run(['verify', '-m', '6', '-n', '12',
                                    '-x', 'subgroup'])
        self.assertEqual(0, code, err)
        self.assertTrue(out.startswith('subgroup: pass (2 instances, 0 failed)'))
        self.assertTrue(out.endswith('verdict: pass\n'))
        code, out, err = self._run(['verify', '-m', '2', '-n', '3',
                                    '-x', 'subgroup'])
        self.assertEqual(0, code, err)
        self.assertTrue(out.endswith('verdict: not-applicable\n'))

    def test_corpus(self):
        code, out, err = self._run(
            ['corpus', '-i', 'test-resources/corpus-wrong.yml',
             '-C', '3', '-k', '2', '-l', 'warn'])
        self.assertEqual(1, code)
        self.assertTrue('1    BS(2,3)      FAIL' in out)
        self.assertTrue(out.endswith('2 rows, 1 failed\n'))
        code, out, err = self._run(
            ['corpus', '-i', 'test-resources/corpus-empty.yml', '-l', 'warn'])
        self.assertEqual(0, code, err)
        code, out, err = self._run(
            ['corpus', '-i', 'test-resources/corpus-malformed.yml'])
        self.assertEqual(2, code)
        self.assertTrue('line 4' in err)

    def test_errors(self):
        for argv in (['classify', '--nada'],
                     ['nada'],
                     [],
                     ['classify', '-m', '2'],
                     ['classify', '-m', '0', '-n', '3'],
                     ['classify', '-m', '2', '-n', '3', '-f', 'xml'],
                     ['classify', '-m', '2', '-n', '3', '-l', 'loud'],
                     ['reduce', '-m', '2', '-n', '3', '-w', 't^'],
                     ['reduce', '-m', '2', '-n', '3', '-w', 'b'],
                     ['verify', '-m', '2', '-n', '3'],
                     ['verify', '-m', '2', '-n', '3', '-x', 'nada'],
                     ['corpus', '-i', 'test-resources/nada.yml'],
                     ['nq', '-r', 'test-resources/bad.pres'],
                     ['lie', '--basis', '2', '--witt', '2'],
                     ['lie', '--index', '3'],
                     ['lie', '--bound', '2', '4'],
                     ['lie', '--index', '3', '0']):
            code, out, err = self._run(argv)
            self.assertEqual(2, code, f'{argv}: {out}')
            self.assertTrue('error' in err, f'{argv}: {err}')

    def test_version(self):
        code, out, err = self._run(['version'])
        self.assertEqual(0, code)
        self.assertTrue(len(out.strip()) > 0)
