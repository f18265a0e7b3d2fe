import math
import random
from fractions import Fraction

import numpy as np
import pytest

import planalg.analysis as an
from planalg.annular import TSpec, annular_T, annular_X, transpose_annular
from planalg.diagrams import Diagram, catalan, enumerate_diagrams
from planalg.elements import Element, jones_projection
from planalg.errors import ModeMismatchError, PreconditionError
from planalg.scalars import Ring, Scalar
from planalg.tangles import evaluate
from planalg.tower import GradedElement, element_c, sharp
from conftest import random_element

FL = Ring.float_(2.5)
FL2 = Ring.float_(2.0)
RR = Ring.rational(Fraction(5, 2))


# -- Gram matrices -------------------------------------------------------------


def test_gram_small_cases():
    assert an.gram_float(1, FL).tolist() == [[1.0]]
    g = an.gram(2, Ring.rational(Fraction(2)))
    assert [[s.value for s in row] for row in g] \
        == [[1, Fraction(1, 2)], [Fraction(1, 2), 1]]


def test_gram_positive_definite():
    for n in range(7):
        assert an.gram_min_eigenvalue(n, FL2) > 0
    for n in range(6):
        assert an.gram_positive_definite_exact(n, 2)
        assert an.gram_positive_definite_exact(n, Fraction(5, 2))


def test_gram_requires_numeric_mode(sym):
    with pytest.raises(ModeMismatchError):
        an.gram(2, sym)


# -- GNS matrices ----------------------------------------------------------------


def test_gns_is_multiplicative_exact(rng):
    # faithful *-homomorphism: matrix of xy equals the matrix product
    for _ in range(10):
        x = random_element(3, RR, rng)
        y = random_element(3, RR, rng)
        mx = an.gns_matrix_exact(x)
        my = an.gns_matrix_exact(y)
        mxy = an.gns_matrix_exact(x.multiply(y))
        dim = len(mx)
        prod = [[sum((mx[i][l] * my[l][j] for l in range(dim)),
                     RR.zero()) for j in range(dim)] for i in range(dim)]
        assert all(prod[i][j] == mxy[i][j] for i in range(dim) for j in range(dim))


def test_gns_gram_adjoint_exact(rng):
    # matrix of x* is the Gram-geometry adjoint: G^-1 M^T G
    x = random_element(2, RR, rng)
    g = [[s.value for s in row] for row in an.gram(2, RR)]
    m = [[s.value for s in row] for row in an.gns_matrix_exact(x)]
    ms = [[s.value for s in row] for row in an.gns_matrix_exact(x.star())]
    g_np = np.array([[float(v) for v in row] for row in g])
    m_np = np.array([[float(v) for v in row] for row in m])
    ms_np = np.array([[float(v) for v in row] for row in ms])
    adj = np.linalg.inv(g_np) @ m_np.T @ g_np
    assert np.abs(adj - ms_np).max() < 1e-10


# -- operator norms and square roots ------------------------------------------------


def test_op_norm_examples(rng):
    for n in (1, 2, 3):
        assert abs(an.op_norm(Element.unit(n, FL)) - 1) < 1e-9
    assert abs(an.op_norm(jones_projection(2, FL)) - 1) < 1e-9
    for _ in range(10):
        x = random_element(3, FL, rng)
        assert abs(an.op_norm(x.star().multiply(x)) - an.op_norm(x) ** 2) < 1e-7


def test_psd_sqrt_examples(rng):
    one = Element.unit(3, FL)
    assert an._max_coeff(an.psd_sqrt(one) - one) < 1e-9
    scaled = jones_projection(2, FL).scale(FL.delta_power(1))
    root = an.psd_sqrt(scaled)
    target = jones_projection(2, FL).scale(Scalar.float_(math.sqrt(2.5), 2.5))
    assert an._max_coeff(root - target) < 1e-9
    for _ in range(10):
        x = random_element(3, FL, rng)
        xx = x.star().multiply(x)
        r = an.psd_sqrt(xx)
        assert an._max_coeff(r.multiply(r) - xx) < 1e-7
        assert an._max_coeff(r - r.star()) < 1e-9


def test_psd_sqrt_rejects_non_psd(rng):
    x = Element.unit(2, FL).scale(FL.fraction(-1))
    with pytest.raises(PreconditionError):
        an.psd_sqrt(x)


# -- the estimate lemma and boundedness -----------------------------------------------


def test_estimate_lemma_degenerate_cases(rng):
    # i = 0, q = 2p: full gluing, identity reduces to |c|^2 = |a|^2
    a = an.unit_hk_norm(random_element(2, FL, rng), 1)
    rep = an.estimate_lemma_verify(a, 1, 4, 0)
    assert rep["status"] == "pass"
    # a = 0 gives c = 0
    rep = an.estimate_lemma_verify(Element.zero(2, FL), 1, 1, 1)
    assert rep["status"] == "pass"


def test_estimate_lemma_norm_ratio(rng):
    # p=2, k=1, q=1, i=1: norm ratio is exactly delta
    a = an.unit_hk_norm(random_element(2, FL, rng), 1)
    rep = an.estimate_lemma_verify(a, 1, 1, 1)
    assert rep["status"] == "pass"
    assert rep["max_residual"] < 1e-9


def test_boundedness_sweep(rng):
    for ring, k, m in ((FL2, 0, 2), (FL, 1, 2)):
        a = an.unit_hk_norm(random_element(m, ring, rng), k)
        rep = an.boundedness_verify(a, k, 40, rng)
        assert rep["status"] == "pass"
        assert rep["violations"] == 0
    # unit element: the bound is trivially respected
    rep = an.boundedness_verify(Element.unit(1, FL), 1, 10, rng)
    assert rep["status"] == "pass"


def test_sum_norm_inequality(rng):
    vecs = [np.array([rng.uniform(-1, 1) for _ in range(8)]) for _ in range(6)]
    assert an.sum_norm_inequality(vecs)


# -- the subspaces C^n_k ---------------------------------------------------------------


def test_membership_by_construction(rng):
    for (n, k) in ((2, 1), (3, 1), (3, 2)):
        y = random_element(k, RR, rng)
        member = evaluate(annular_X(n, k), [y])
        rep = an.cnk_membership(member, k)
        assert rep["member"] and rep["status"] == "pass"


def test_membership_at_equal_colour(rng):
    # C^k_k = P_k: everything is a member
    for k in (1, 2):
        rep = an.cnk_membership(random_element(k, RR, rng), k)
        assert rep["member"]


def test_membership_decomposition(rng):
    for _ in range(10):
        x = random_element(3, RR, rng)
        rep = an.cnk_membership(x, 1)
        assert rep["status"] == "pass" and rep["orthogonal"]
        member = Element.from_json(rep["witness"]["member"], RR)
        perp = Element.from_json(rep["witness"]["perp"], RR)
        assert member + perp == x
        capped = evaluate(transpose_annular(annular_X(3, 1)), [perp])
        assert capped.is_zero()


# -- the commutant lemmas -----------------------------------------------------------------


def test_ccommlem_zero(sym):
    assert an.ccommlem_invert(Element.zero(3, sym), 2, 1).is_zero()


def test_ccommlem_roundtrip(sym, rng):
    for (n, k) in ((2, 1), (3, 1), (3, 2)):
        for _ in range(5):
            _, x = an.perp_projection(random_element(n, sym, rng), k)
            z = an.commutator_with_c(x, k, n + 1)
            assert an.ccommlem_invert(z, n, k) == x


def test_annular_norm_bound(rng):
    for _ in range(15):
        k = rng.randint(0, 1)
        n, m = rng.randint(k, 4), rng.randint(k, 4)
        size = rng.randint(0, min(m - k, n - k))
        spec = TSpec(k, frozenset(rng.sample(range(1, m - k + 1), size)),
                     frozenset(rng.sample(range(1, n - k + 1), size)), m, n)
        ok, lhs, rhs = an.annular_norm_bound(spec, random_element(n, FL, rng), k)
        assert ok, (spec, lhs, rhs)


def test_dcomm_replay_unique_placement():
    for k in (0, 1):
        rep = an.dcomm_replay(k)
        assert rep["status"] == "pass"
        assert rep["default_ok"]
        assert rep["passing_placements"] == [{"Y": "first", "Z": "last"}]


def test_xnxm_and_telescope(rng):
    rep = an.xnxm_verify(1, 2, rng)
    assert rep["status"] == "pass" and rep["zero_case"]
    rep = an.xnxm_telescope(1, 2, rng)
    assert rep["status"] == "pass"


def test_xn_from_xm_zero(sym):
    assert an.xn_from_xm(Element.zero(4, sym), 2, 1, 1).is_zero()
