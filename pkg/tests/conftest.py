import random
from fractions import Fraction

import pytest

from planalg.diagrams import enumerate_diagrams
from planalg.elements import Element
from planalg.scalars import Ring, Scalar
from planalg.tower import GradedElement


@pytest.fixture
def sym():
    return Ring.symbolic()


@pytest.fixture
def rng():
    return random.Random(42)


def random_element(n, ring, rng, terms=2):
    """Small random combination; symbolic coefficients are short Laurent polys."""
    basis = enumerate_diagrams(n)
    combo = {}
    for _ in range(terms):
        d = basis[rng.randrange(len(basis))]
        if ring.mode == "symbolic":
            c = Scalar.symbolic({rng.randint(-1, 1): Fraction(rng.randint(1, 3))})
        else:
            c = ring.fraction(rng.randint(-3, 3))
        combo[d] = combo[d] + c if d in combo else c
    return Element(n, ring, combo)


def random_graded(k, max_colour, ring, rng):
    out = GradedElement.zero(k, ring)
    for n in range(k, max_colour + 1):
        if rng.random() < 0.7:
            out = out + GradedElement.of_element(k, random_element(n, ring, rng))
    return out
