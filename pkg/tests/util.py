from typing import Sequence, Tuple
import unittest
import sys
import io
from contextlib import redirect_stdout, redirect_stderr
from unittest.case import _common_shorten_repr
import difflib
from zensols.bsgroup.presentation import FreeWord, BSParams, normalize_bs
from zensols.bsgroup.cli import run


def assertMultiLineEqual(self, first, second, msg=None):
    """Assert that two multi-line strings are equal."""
    self.assertIsInstance(first, str, 'First argument is not a string')
    self.assertIsInstance(second, str, 'Second argument is not a string')

    if first != second:
        firstlines = first.splitlines(keepends=True)
        secondlines = second.splitlines(keepends=True)
        if len(firstlines) == 1 and first.strip('\r\n') == first:
            firstlines = [first + '\n']
            secondlines = [second + '\n']
        standardMsg = '%s != %s' % _common_shorten_repr(first, second)
        diff = '\n' + ''.join(difflib.unified_diff(firstlines, secondlines))
        standardMsg = self._truncateMessage(standardMsg, diff)
        self.fail(self._formatMessage(msg, standardMsg))


# replace inherited method used by framework
unittest.TestCase.assertMultiLineEqual = assertMultiLineEqual


class TestBase(unittest.TestCase):
    FIXTURES: Tuple[Tuple[int, int], ...] = (
        (1, 2), (1, 3), (2, 2), (2, -2), (2, 3), (2, 4), (3, 5), (4, 4),
        (4, 6), (6, 9), (6, 10), (6, 12))

    def setUp(self):
        self.maxDiff = sys.maxsize

    def _bs(self, m: int, n: int) -> BSParams:
        return normalize_bs(m, n)

    def _word(self, *syllables: Tuple[int, int]) -> FreeWord:
        return FreeWord(tuple(syllables))

    def _run(self, argv: Sequence[str]) -> Tuple[int, str, str]:
        """Run the command line and return the exit code with the standard
        output and error.

        """
        out = io.StringIO()
        err = io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code: int = run(argv)
        return code, out.getvalue(), err.getvalue()
