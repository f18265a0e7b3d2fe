from fractions import Fraction

import pytest

from planalg.diagrams import Diagram, enumerate_diagrams
from planalg.elements import Element, jones_projection, tl_sum
from planalg.errors import ColourMismatchError
from planalg.scalars import Ring, Scalar
from planalg.tangles import evaluate, multiplication_tangle, trace_tangle
from conftest import random_element

CUP2 = Diagram(2, [(1, 2), (3, 4)])


def test_cup_squares_to_delta_cup(sym):
    x = Element.basis(CUP2, sym)
    assert x.multiply(x) == x.scale(sym.delta_power(1))


def test_unit_law(sym, rng):
    for n in (1, 2, 3):
        one = Element.unit(n, sym)
        for _ in range(10):
            x = random_element(n, sym, rng)
            assert one.multiply(x) == x
            assert x.multiply(one) == x


def test_multiply_associative_against_tangle_oracle(sym, rng):
    # the generic two-box stacking tangle is the independent route
    for n in (2, 3):
        m_tangle = multiplication_tangle(n)
        for _ in range(30):
            x, y, z = (random_element(n, sym, rng) for _ in range(3))
            assert x.multiply(y) == evaluate(m_tangle, [x, y])
            assert x.multiply(y).multiply(z) == x.multiply(y.multiply(z))


def test_colour_mismatch(sym):
    with pytest.raises(ColourMismatchError):
        Element.unit(2, sym).multiply(Element.unit(3, sym))


def test_tau_examples(sym):
    assert Element.unit(2, sym).tau() == sym.one()
    e2 = jones_projection(2, sym)
    assert e2.tau() == sym.delta_power(-2)


def test_tau_loop_count_oracle(sym, rng):
    # independent oracle: tau via the full closure tangle
    for n in (1, 2, 3, 4):
        closure = trace_tangle(n)
        empty = Diagram(0, ())
        for _ in range(10):
            x = random_element(n, sym, rng)
            closed = evaluate(closure, [x])
            expected = closed.combo.get(empty, sym.zero()).delta_pow(-n)
            assert x.tau() == expected


def test_tau_reflection_invariance(sym, rng):
    for n in (2, 3, 4):
        for _ in range(10):
            x = random_element(n, sym, rng)
            assert x.tau() == x.star().tau()


def test_tau_tracial(sym, rng):
    for _ in range(20):
        x, y = random_element(3, sym, rng), random_element(3, sym, rng)
        assert x.multiply(y).tau() == y.multiply(x).tau()


def test_star_involution(sym, rng):
    for n in (2, 3):
        for _ in range(10):
            x = random_element(n, sym, rng)
            assert x.star().star() == x
            assert Element.unit(n, sym).star() == Element.unit(n, sym)
    # reflecting the colour-2 cup gives itself
    assert Element.basis(CUP2, sym).star() == Element.basis(CUP2, sym)


def test_star_antimultiplicative(sym, rng):
    for _ in range(15):
        x, y = random_element(3, sym, rng), random_element(3, sym, rng)
        assert x.multiply(y).star() == y.star().multiply(x.star())


def test_gram_entries_p2(sym):
    one, cup = Element.unit(2, sym), Element.basis(CUP2, sym)
    assert one.inner(one) == sym.one()
    assert cup.inner(cup) == sym.one()
    assert one.inner(cup) == sym.delta_power(-1)


def test_jones_projection_properties(sym):
    for n in (2, 3, 4):
        e = jones_projection(n, sym)
        assert e.multiply(e) == e
        assert e.star() == e


def test_tl_sum(sym):
    t3 = tl_sum(3, sym)
    assert len(t3.combo) == 5
    assert all(c == sym.one() for c in t3.combo.values())


def test_json_roundtrip(sym, rng):
    for ring in (sym, Ring.rational(Fraction(5, 2)), Ring.float_(2.0)):
        x = random_element(3, ring, rng)
        back = Element.from_json(x.to_json())
        assert back == x
    zero_plus = Element.unit(0, sym)
    assert Element.from_json(zero_plus.to_json(), sym) == zero_plus
