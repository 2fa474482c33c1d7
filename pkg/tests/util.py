"""Deterministic stand-ins for random.Random used by the sampling tests."""

from __future__ import annotations


class ScriptedSource:
    """Replays a fixed list of draws.

    randrange(n) pops the next value and checks it is in range; getrandbits(m)
    does the same against 2**m.  Running past the script is an error, as is
    leaving draws unconsumed when the caller asserts exhaustion.
    """

    def __init__(self, draws):
        self._draws = list(draws)
        self._next = 0

    def _pop(self, bound: int) -> int:
        if self._next >= len(self._draws):
            raise AssertionError("scripted source ran out of draws")
        value = self._draws[self._next]
        self._next += 1
        if not 0 <= value < bound:
            raise AssertionError(f"scripted draw {value} outside [0, {bound})")
        return value

    def randrange(self, bound: int) -> int:
        return self._pop(bound)

    def getrandbits(self, bits: int) -> int:
        return self._pop(1 << bits)

    @property
    def exhausted(self) -> bool:
        return self._next == len(self._draws)


class CountingSource:
    """Cycles 0, 1, 2, ... reduced into whatever range is requested.

    With a single randrange(q) call per sample this visits every residue
    exactly once per q consecutive samples, which makes 'each element hit
    once' assertions trivial.
    """

    def __init__(self, start: int = 0):
        self._counter = start

    def _next(self) -> int:
        value = self._counter
        self._counter += 1
        return value

    def randrange(self, bound: int) -> int:
        return self._next() % bound

    def getrandbits(self, bits: int) -> int:
        return self._next() % (1 << bits)
