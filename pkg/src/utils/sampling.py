"""Seeded rational sampling shared by the symbolic pipelines and the oracle."""
from __future__ import annotations

from typing import List, Set, Tuple

import numpy as np
from sympy import Rational


class SampleStream:
    """Deterministic stream of distinct integer samples drawn from ``[low, high]``."""

    def __init__(self, seed: int = 0, low: int = 1000, high: int = 1000000):
        if high <= low:
            raise ValueError(f"empty sampling range [{low}, {high}]")
        self.rng = np.random.default_rng(seed)
        self.low = int(low)
        self.high = int(high)
        self._used: Set[int] = set()

    def next(self) -> Rational:
        while True:
            value = int(self.rng.integers(self.low, self.high + 1))
            if value not in self._used:
                self._used.add(value)
                return Rational(value)

    def take(self, n: int) -> List[Rational]:
        return [self.next() for _ in range(n)]

    def signed(self) -> Rational:
        value = self.next()
        return value if self.rng.integers(0, 2) else -value

    def point(self) -> Tuple[Rational, Rational]:
        return self.signed(), self.signed()

    def small_int(self, low: int, high: int) -> int:
        return int(self.rng.integers(low, high + 1))
