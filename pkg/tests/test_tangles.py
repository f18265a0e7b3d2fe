import pytest

from planalg.diagrams import Diagram, enumerate_diagrams
from planalg.elements import Element, jones_projection
from planalg.errors import (ColourMismatchError, ParseError, PreconditionError,
                            ValidationError)
from planalg.scalars import Ring
from planalg.tangles import (EXT, Tangle, evaluate, evaluate_in,
                             identity_tangle, inclusion_tangle, jones_tangle,
                             left_expectation_tangle, multiplication_tangle,
                             parse, partial_cap_tangle, right_expectation_tangle,
                             rotation_tangle, standard_tangle, substitute,
                             trace_tangle, unit_tangle, validate)
from conftest import random_element


# -- parsing ---------------------------------------------------------------


def test_parse_unit_strand():
    t = parse("ext 1\nstrand e1-e2\n")
    assert t == unit_tangle(1)


def test_parse_identity_box():
    t = parse("ext 2\nbox b1 2\nstrand e1-b1.1 e2-b1.2 e3-b1.3 e4-b1.4\n")
    assert t == identity_tangle(2)
    validate(t)


def test_parse_loops_and_comments():
    t = parse("# closed circles only\next 0\nloops 3\n")
    assert t.loops == 3 and t.ext.n == 0


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse("ext 1\nstrand e1-\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse("strand e1-e2\n")             # missing ext
    with pytest.raises(ParseError):
        parse("ext 1\nstrand e1-b9.1\n")    # unknown box
    with pytest.raises(ParseError):
        parse("ext 1\nstrand e1-e2 e1-e2\n")  # point matched twice
    with pytest.raises(ParseError):
        parse("ext 1\nstrand e1-e3\n")      # out of range + unmatched


def test_unmatched_point_rejected():
    with pytest.raises(ValidationError):
        Tangle(1, [], [])


# -- validation -------------------------------------------------------------


def test_identity_validates():
    for n in (1, 2, 3):
        validate(identity_tangle(n))


def test_crossing_is_planarity_violation():
    bad = Tangle(2, [], [((EXT, 1), (EXT, 3)), ((EXT, 2), (EXT, 4))])
    with pytest.raises(ValidationError) as err:
        validate(bad)
    assert "planar" in str(err.value)
    assert "0" in str(err.value)            # Euler characteristic 0


def test_parity_violation_between_boxes():
    bad = Tangle(0, [1, 1], [((1, 1), (2, 1)), ((1, 2), (2, 2))])
    with pytest.raises(ValidationError) as err:
        validate(bad)
    assert "parity" in str(err.value)


def test_genuinely_crossing_parity_consistent():
    bad = Tangle(4, [], [((EXT, 1), (EXT, 6)), ((EXT, 2), (EXT, 5)),
                         ((EXT, 3), (EXT, 8)), ((EXT, 4), (EXT, 7))])
    with pytest.raises(ValidationError) as err:
        validate(bad)
    assert "planar" in str(err.value)


def test_standard_tangles_validate():
    tangles = [unit_tangle(3), identity_tangle(3), multiplication_tangle(3),
               inclusion_tangle(2), trace_tangle(3), rotation_tangle(3),
               jones_tangle(3), partial_cap_tangle(3, [(1, 2)])]
    for n in range(4):
        for i in range(n + 1):
            tangles.append(left_expectation_tangle(n, i))
            tangles.append(right_expectation_tangle(n, i))
    for t in tangles:
        validate(t)


def test_standard_tangle_dispatch():
    assert standard_tangle("M", 2) == multiplication_tangle(2)
    assert standard_tangle("unit", 3) == unit_tangle(3)
    assert standard_tangle("EL", 3, 1) == left_expectation_tangle(3, 1)
    with pytest.raises(PreconditionError):
        standard_tangle("nope", 1)
    with pytest.raises(PreconditionError):
        standard_tangle("EL", 2, 5)


# -- substitution ------------------------------------------------------------


def test_substitute_identity_laws(sym, rng):
    t = multiplication_tangle(2)
    assert substitute(t, {1: identity_tangle(2)}) == t
    assert substitute(identity_tangle(2), {1: t}) == t


def test_substitute_closure_of_unit():
    comp = substitute(trace_tangle(3), {1: unit_tangle(3)})
    assert comp == Tangle(0, [], [], loops=3)


def test_substitute_associativity(rng):
    # both orders of plugging boxes agree
    outer = multiplication_tangle(2)
    mid = inclusion_tangle(1)
    inner = rotation_tangle(1)
    both = substitute(outer, {1: mid, 2: identity_tangle(2)})
    one_then = substitute(substitute(outer, {1: mid}), {1: inner})
    other = substitute(outer, {1: substitute(mid, {1: inner})})
    assert one_then == other
    assert both == substitute(outer, {1: mid})


def test_substitute_colour_mismatch():
    with pytest.raises(ColourMismatchError):
        substitute(multiplication_tangle(2), {1: identity_tangle(3)})


def test_substitution_compatibility_with_evaluation(sym, rng):
    outer = multiplication_tangle(2)
    sub = inclusion_tangle(1)
    for _ in range(20):
        x = random_element(1, sym, rng)
        y = random_element(2, sym, rng)
        composite = substitute(outer, {1: sub})
        assert evaluate(composite, [x, y]) \
            == evaluate(outer, [evaluate(sub, [x]), y])


# -- evaluation ---------------------------------------------------------------


def test_evaluate_multiplication_example(sym):
    cup = Element.basis(Diagram(2, [(1, 2), (3, 4)]), sym)
    assert evaluate(multiplication_tangle(2), [cup, cup]) \
        == cup.scale(sym.delta_power(1))


def test_evaluate_matches_tl_model_on_200_random(sym, rng):
    # cross-implementation oracle: generic evaluator vs direct operations
    for _ in range(200):
        n = rng.randint(1, 4)
        x = random_element(n, sym, rng)
        y = random_element(n, sym, rng)
        assert evaluate(multiplication_tangle(n), [x, y]) == x.multiply(y)
        closed = evaluate(trace_tangle(n), [x])
        assert closed.combo.get(Diagram(0, ()), sym.zero()).delta_pow(-n) == x.tau()
        reflected = evaluate(identity_tangle(n).adjoint(), [x.star()])
        assert reflected == x.star()


def test_rotation_preserves_inner_product(sym, rng):
    for n in (1, 2, 3):
        rot = rotation_tangle(n)
        for _ in range(15):
            x, y = random_element(n, sym, rng), random_element(n, sym, rng)
            assert evaluate(rot, [x]).inner(evaluate(rot, [y])) == x.inner(y)


def test_rotation_power_is_identity(sym, rng):
    for n in (1, 2, 3):
        t = identity_tangle(n)
        for _ in range(n):
            t = substitute(rotation_tangle(n), {1: t})
        assert t == identity_tangle(n)


def test_adjoint_compatibility(sym, rng):
    # Z_{T*}(x*) = Z_T(x)* on the standard repertoire
    tangles = [multiplication_tangle(2), inclusion_tangle(2), rotation_tangle(2),
               left_expectation_tangle(2, 1), right_expectation_tangle(3, 1)]
    for t in tangles:
        for _ in range(10):
            xs = [random_element(c.n, sym, rng) for c in t.boxes]
            lhs = evaluate(t.adjoint(), [x.star() for x in xs])
            assert lhs == evaluate(t, xs).star()


def test_jones_tangle_value(sym):
    for n in (2, 3, 4):
        val = evaluate_in(jones_tangle(n), [], sym)
        assert val == jones_projection(n, sym).scale(sym.delta_power(1))


def test_trace_normalisation(sym):
    one = Element.unit(3, sym)
    closed = evaluate(trace_tangle(3), [one])
    assert closed == Element.unit(0, sym).scale(sym.delta_power(3))


def test_expectations_are_scaled_idempotents(sym, rng):
    for n in (2, 3):
        for i in range(n + 1):
            el = left_expectation_tangle(n, i)
            comp = substitute(el, {1: el})
            assert comp == el.with_loops(i)      # EL(i)^2 = delta^i EL(i)
    # Z_EL images at a fixed real delta are PSD on x*x inputs
    ring = Ring.float_(2.5)
    from planalg.analysis import is_psd
    for _ in range(10):
        x = random_element(2, ring, rng)
        image = evaluate(left_expectation_tangle(2, 1), [x.star().multiply(x)])
        flag, _eig = is_psd(image)
        assert flag


def test_sphericality_on_p1(sym, rng):
    # left and right closures coincide combinatorially in this model
    for _ in range(10):
        x = random_element(1, sym, rng)
        closed = evaluate(trace_tangle(1), [x])
        assert closed.combo.get(Diagram(0, ()), sym.zero()) \
            == x.tau().delta_pow(1)


def test_evaluate_wrong_arity(sym):
    with pytest.raises(PreconditionError):
        evaluate(multiplication_tangle(2), [Element.unit(2, sym)])
    with pytest.raises(ColourMismatchError):
        evaluate(identity_tangle(2), [Element.unit(3, sym)])


def test_tangle_json_roundtrip():
    t = multiplication_tangle(2)
    assert Tangle.from_json(t.to_json()) == t
