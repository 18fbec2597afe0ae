"""Seeded sample generators shared by the scan and check operations.

The distribution is fixed and documented: series support at most 5, exponent
coordinates in [-6, 6] with denominator at most 6 on rational lines,
coefficient numerators and denominators at most 20.  Default seed 0xC0FFEE.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .coeffs import QuadCoeff, QuadraticExtension
from .hahn import FieldDescriptor, TruncatedSeries
from .oag import GroupDescriptor, GroupElement

DEFAULT_SEED = 0xC0FFEE

EXPONENT_BOUND = 6
EXPONENT_MAX_DEN = 6
COEFF_BOUND = 20
MAX_SUPPORT = 5


class Sampler:
    def __init__(self, seed: int = DEFAULT_SEED):
        self.rng = random.Random(seed)

    def fraction(self, bound: int = COEFF_BOUND, nonzero: bool = False) -> Fraction:
        while True:
            q = Fraction(
                self.rng.randint(-bound, bound), self.rng.randint(1, bound)
            )
            if not nonzero or q != 0:
                return q

    def coefficient(self, cf, nonzero: bool = False):
        if isinstance(cf, QuadraticExtension):
            while True:
                c = QuadCoeff(self.fraction(), self.fraction(), cf.d)
                if not nonzero or not c.is_zero():
                    return c
        return self.fraction(nonzero=nonzero)

    def group_element(
        self,
        G: GroupDescriptor,
        bound: int = EXPONENT_BOUND,
        max_den: int = EXPONENT_MAX_DEN,
    ) -> GroupElement:
        if G.family == "surd":
            return GroupElement(
                G, (self.rng.randint(-bound, bound), self.rng.randint(-bound, bound))
            )
        coords = []
        for line in G.components:
            if line == "Z":
                coords.append(Fraction(self.rng.randint(-bound, bound)))
            else:
                den = self.rng.randint(1, max_den)
                coords.append(Fraction(self.rng.randint(-bound * den, bound * den), den))
        return GroupElement(G, tuple(coords))

    def series(
        self,
        fd: FieldDescriptor,
        max_support: int = MAX_SUPPORT,
        nonzero: bool = False,
        max_den: int = EXPONENT_MAX_DEN,
    ) -> TruncatedSeries:
        while True:
            n = self.rng.randint(0 if not nonzero else 1, max_support)
            pairs = [
                (
                    self.group_element(fd.value_group, max_den=max_den),
                    self.coefficient(fd.coefficient_field, nonzero=True),
                )
                for _ in range(n)
            ]
            s = TruncatedSeries.make(fd, pairs)
            if not nonzero or s.terms:
                return s

    def choice(self, seq):
        return self.rng.choice(seq)

    def randint(self, a: int, b: int) -> int:
        return self.rng.randint(a, b)
