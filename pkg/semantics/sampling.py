#!filepath: semantics/sampling.py
import random
from fractions import Fraction
from typing import List, Tuple

import numpy as np

_MASK = (1 << 128) - 1


class SplitRandom:
    """
    Splittable seeded randomness.

    Every stream is addressed by (seed, path); child(i) extends the path.
    numpy's SeedSequence derives independent state for each path, which seeds
    a random.Random for arbitrary-size integer draws. A stream depends only on
    its address, never on how many other streams were drawn or on which thread.
    """

    def __init__(self, seed: int, path: Tuple[int, ...] = ()):
        self.seed = int(seed) & _MASK
        self.path = tuple(int(p) for p in path)

    def child(self, *keys: int) -> "SplitRandom":
        return SplitRandom(self.seed, self.path + tuple(keys))

    def rng(self) -> random.Random:
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=self.path)
        words = sequence.generate_state(4, dtype=np.uint32)
        state = 0
        for word in words:
            state = (state << 32) | int(word)
        return random.Random(state)

    def __repr__(self):
        return f"SplitRandom(seed={self.seed}, path={self.path})"


def random_integers(rng: random.Random, count: int, bound: int) -> List[Fraction]:
    """count exact integers drawn uniformly from [-bound, bound]."""
    return [Fraction(rng.randint(-bound, bound)) for _ in range(count)]


# stream ids under a run seed
FINGERPRINT_STREAM = 1
CONSISTENCY_STREAM = 2
NODE_TABLE_STREAM = 3
IDENTIFICATION_STREAM = 4
AUDIT_STREAM = 5
CLOUD_STREAM = 6
MEMBERSHIP_STREAM = 7
RANK_STREAM = 8
REPRO_STREAM = 9
