"""Named verification suites behind `pa verify`.

Each suite draws its randomness from a fresh seeded generator, so reports
are deterministic for a given seed and independent of worker scheduling.
Report rows share one schema: check, params, status, details, max_residual.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from . import analysis
from .annular import TSpec, annular_T, annular_X, compose_T, enumerate_good, \
    transpose_annular
from .config import Config
from .diagrams import catalan, enumerate_diagrams
from .elements import Element, tl_sum
from .errors import PreconditionError
from .scalars import Ring, Scalar
from .tangles import Tangle, evaluate, identity_tangle, left_expectation_tangle, \
    multiplication_tangle, rotation_tangle, substitute, validate
from .tower import GradedElement, bullet, cond_expect, dagger, dot_action, \
    dot_action_via_expectation, dot_index_I, dot_index_J, element_c, element_d, \
    include, index_bijection, inner_product, jones_e, phi, psi, sharp, \
    sharp_index_I, sharp_index_J, trace_Tr, trace_tk

SUITE_NAMES = ("filtalg", "annular", "gjs-iso", "jones", "estimates",
               "commutant-replay", "positivity")


def _row(check, params, ok, details="", residual=0.0):
    return {"check": check, "params": params,
            "status": "pass" if ok else "fail",
            "details": details, "max_residual": residual}


def random_symbolic_element(n: int, ring: Ring, rng, terms: int = 2) -> Element:
    basis = enumerate_diagrams(n)
    combo = {}
    for _ in range(terms):
        d = basis[rng.randrange(len(basis))]
        c = Scalar.symbolic({rng.randint(-1, 1): Fraction(rng.randint(1, 3))})
        combo[d] = combo[d] + c if d in combo else c
    return Element(n, ring, combo)


def random_graded(k: int, max_colour: int, ring: Ring, rng) -> GradedElement:
    out = GradedElement.zero(k, ring)
    for n in range(k, max_colour + 1):
        if rng.random() < 0.7:
            out = out + GradedElement.of_element(
                k, random_symbolic_element(n, ring, rng))
    return out


# -- the filtered-algebra suite ----------------------------------------------------


def suite_filtalg(cfg: Config):
    ring = Ring.symbolic()
    rng = random.Random(cfg.seed)
    rows = []
    for k in range(cfg.level + 1):
        top = min(k + 3, cfg.resolved_max_colour())
        unit = GradedElement.unit(k, ring)
        counts = dict.fromkeys(
            ("assoc", "unit", "dagger", "trace", "inclusion", "expectation"), 0)
        for _ in range(cfg.trials):
            a = random_graded(k, top, ring, rng)
            b = random_graded(k, top, ring, rng)
            c = random_graded(k, top, ring, rng)
            if sharp(sharp(a, b), c) == sharp(a, sharp(b, c)):
                counts["assoc"] += 1
            if sharp(unit, a) == a and sharp(a, unit) == a:
                counts["unit"] += 1
            if (dagger(sharp(a, b)) == sharp(dagger(b), dagger(a))
                    and dagger(dagger(a)) == a):
                counts["dagger"] += 1
            lhs = trace_tk(sharp(dagger(b), a))
            rhs = ring.zero()
            for n in set(a.components) & set(b.components):
                rhs = rhs + b.component(n).star().multiply(
                    a.component(n)).tau().delta_pow(n - k)
            if lhs == rhs and trace_tk(sharp(a, b)) == trace_tk(sharp(b, a)):
                counts["trace"] += 1
            ia, ib = include(a), include(b)
            if (include(sharp(a, b)) == sharp(ia, ib)
                    and include(dagger(a)) == dagger(ia)
                    and trace_tk(ia) == trace_tk(a)
                    and include(unit) == GradedElement.unit(k + 1, ring)):
                counts["inclusion"] += 1
            x = random_graded(k + 1, top + 1, ring, rng)
            if (cond_expect(include(a)) == a
                    and cond_expect(sharp(sharp(ia, x), ib))
                    == sharp(sharp(a, cond_expect(x)), b)
                    and trace_tk(cond_expect(x)) == trace_tk(x)
                    and dagger(cond_expect(x)) == cond_expect(dagger(x))):
                counts["expectation"] += 1
        for clause, good in sorted(counts.items()):
            rows.append(_row(f"filtalg.{clause}", {"k": k, "trials": cfg.trials},
                             good == cfg.trials, f"{good}/{cfg.trials} exact"))
    rows.append(_row("filtalg.index_bijection", {"max": 6},
                     _index_bijection_ok(6), "exhaustive"))
    return rows


def _index_bijection_ok(top: int) -> bool:
    for k in (0, 1, 2):
        for m in range(k, top + 1):
            for n in range(k, top + 1):
                for p in range(k, top + 1):
                    i_set = sharp_index_I(m, n, p, k)
                    j_set = sharp_index_J(m, n, p, k)
                    if i_set != sharp_index_J(p, n, m, k):
                        return False
                    t_map = index_bijection(m, n, p)
                    image = {t_map(ts) for ts in i_set}
                    if image != j_set or len(image) != len(i_set):
                        return False
                    inv = index_bijection(p, n, m)
                    if any(inv(t_map(ts)) != ts for ts in i_set):
                        return False
    for k in (1, 2):        # the dot action lives at level k >= 1
        for m in range(k + 1, top + 1):
            for n in range(k + 1, top + 1):
                for p in range(k, top + 1):
                    i_set = dot_index_I(m, n, p, k)
                    j_set = dot_index_J(m, n, p, k)
                    t_map = index_bijection(m, n, p)
                    image = {t_map(ts) for ts in i_set}
                    if image != j_set or len(image) != len(i_set):
                        return False
                    inv = index_bijection(p + 1, n, m - 1)
                    if any(inv(t_map(ts)) != ts for ts in i_set):
                        return False
    return True


# -- the annular suite ---------------------------------------------------------------


def _random_tspec(k, m, n, rng) -> TSpec:
    size = rng.randint(0, min(m - k, n - k))
    a_set = frozenset(rng.sample(range(1, m - k + 1), size))
    b_set = frozenset(rng.sample(range(1, n - k + 1), size))
    return TSpec(k, a_set, b_set, m, n)


def suite_annular(cfg: Config):
    ring = Ring.symbolic()
    rng = random.Random(cfg.seed)
    rows = []
    top = min(7, cfg.resolved_max_colour() + 2)
    good = 0
    for _ in range(cfg.trials):
        k = rng.randint(0, 2)
        m, n, p = (rng.randint(k, top) for _ in range(3))
        first, second = _random_tspec(k, m, n, rng), _random_tspec(k, n, p, rng)
        expo, spec3 = compose_T(first, second)
        x = random_symbolic_element(p, ring, rng, terms=1)
        lhs = evaluate(annular_T(first), [evaluate(annular_T(second), [x])])
        rhs = evaluate(annular_T(spec3), [x]).scale(ring.delta_power(expo))
        tangle_ok = substitute(annular_T(first), {1: annular_T(second)}) \
            == annular_T(spec3).with_loops(expo)
        if lhs == rhs and tangle_ok:
            good += 1
    rows.append(_row("annular.compose_formula", {"trials": cfg.trials, "max": top},
                     good == cfg.trials, f"{good}/{cfg.trials} exact"))

    ident_ok = all(annular_X(k, k) == identity_tangle(k) for k in range(4))
    ident_ok = ident_ok and all(
        annular_T(TSpec.identity(k, m)) == identity_tangle(m)
        for k in (0, 1) for m in range(k, 5))
    rows.append(_row("annular.identity_cases", {}, ident_ok))

    adj_ok = True
    for _ in range(cfg.trials):
        k = rng.randint(0, 2)
        m, n = rng.randint(k, 5), rng.randint(k, 5)
        spec = _random_tspec(k, m, n, rng)
        tangle = annular_T(spec)
        validate(tangle)
        x = random_symbolic_element(n, ring, rng, terms=1)
        y = random_symbolic_element(m, ring, rng, terms=1)
        lhs = evaluate(tangle, [x]).inner(y)
        rhs = x.inner(evaluate(transpose_annular(tangle), [y])).delta_pow(n - m)
        adj_ok = adj_ok and lhs == rhs
    rows.append(_row("annular.transpose_adjoint", {"trials": cfg.trials}, adj_ok))

    rot_ok = True
    for n in range(1, min(5, cfg.resolved_max_colour()) + 1):
        rot = rotation_tangle(n)
        for _ in range(5):
            x = random_symbolic_element(n, ring, rng)
            y = random_symbolic_element(n, ring, rng)
            rot_ok = rot_ok and evaluate(rot, [x]).inner(evaluate(rot, [y])) \
                == x.inner(y)
    rows.append(_row("annular.rotation_unitary", {}, rot_ok))

    counts_ok = True
    for k in (0, 1):
        for j in range(k, 5):
            for i in range(k, j + 1):
                goods = enumerate_good(k, j, i)
                excs = enumerate_good(k, j, i, excellent=True)
                counts_ok = counts_ok and set(excs) <= set(goods)
                if i == j:
                    counts_ok = counts_ok and goods == [identity_tangle(j)]
                for t in goods:
                    validate(t)
    rows.append(_row("annular.good_families", {}, counts_ok))
    return rows


# -- the GJS isomorphism suite ----------------------------------------------------------


def suite_gjs_iso(cfg: Config):
    ring = Ring.symbolic()
    rng = random.Random(cfg.seed)
    rows = []
    for k in range(cfg.level + 1):
        top = min(k + 3, cfg.resolved_max_colour())
        good = dict.fromkeys(("inverse", "star", "trace", "multiplicative"), 0)
        for _ in range(cfg.trials):
            a = random_graded(k, top, ring, rng)
            b = random_graded(k, top, ring, rng)
            fa = phi(k, a)
            if psi(k, fa) == a and phi(k, psi(k, a)) == a:
                good["inverse"] += 1
            if dagger(fa) == phi(k, dagger(a)):
                good["star"] += 1
            if trace_Tr(a) == trace_tk(fa).delta_pow(k):
                good["trace"] += 1
            if (phi(k, bullet(a, b)) == sharp(fa, phi(k, b))
                    and psi(k, sharp(fa, phi(k, b))) == bullet(a, b)):
                good["multiplicative"] += 1
        for name, count in sorted(good.items()):
            rows.append(_row(f"gjs.{name}", {"k": k, "trials": cfg.trials},
                             count == cfg.trials, f"{count}/{cfg.trials} exact"))
    return rows


# -- the Jones-relations suite ------------------------------------------------------------


def suite_jones(cfg: Config):
    ring = Ring.symbolic()
    rng = random.Random(cfg.seed)
    rows = []
    for k in range(1, max(2, cfg.level + 1)):
        e = jones_e(k, ring)
        top = min(k + 2, cfg.resolved_max_colour())
        rows.append(_row("jones.idempotent", {"k": k}, sharp(e, e) == e))
        expected = GradedElement.unit(k, ring).scale(ring.delta_power(-2))
        rows.append(_row("jones.expectation", {"k": k},
                         cond_expect(e) == expected))
        exe, comm, dot_ok = 0, 0, 0
        for _ in range(cfg.trials):
            x = random_graded(k, top, ring, rng)
            ix = include(x)
            if sharp(sharp(e, ix), e) == sharp(include(include(cond_expect(x))), e):
                exe += 1
            y = include(include(random_graded(k - 1, top - 1, ring, rng)))
            if sharp(e, y) == sharp(y, e):
                comm += 1
            a = random_graded(k + 1, top + 1, ring, rng)
            a2 = random_graded(k + 1, top + 1, ring, rng)
            b = random_graded(k, top, ring, rng)
            if (dot_action(a, b) == dot_action_via_expectation(a, b)
                    and dot_action(sharp(a, a2), b)
                    == dot_action(a, dot_action(a2, b))
                    and dot_action(GradedElement.unit(k + 1, ring), b) == b):
                dot_ok += 1
        rows.append(_row("jones.exe_rule", {"k": k, "trials": cfg.trials},
                         exe == cfg.trials, f"{exe}/{cfg.trials}"))
        rows.append(_row("jones.commutes_lower", {"k": k, "trials": cfg.trials},
                         comm == cfg.trials, f"{comm}/{cfg.trials}"))
        rows.append(_row("jones.dot_homomorphism", {"k": k, "trials": cfg.trials},
                         dot_ok == cfg.trials, f"{dot_ok}/{cfg.trials}"))
    return rows


# -- the numeric estimate suite --------------------------------------------------------------


def _float_deltas(cfg: Config):
    value = cfg.delta_value()
    if value is None:
        return (2.0, 2.5)
    return (float(value),)


def suite_estimates(cfg: Config):
    rng = random.Random(cfg.seed)
    rows = []
    for delta in _float_deltas(cfg):
        ring = Ring.float_(delta)
        grid = [(1, 0, 0, 0), (1, 0, 1, 1), (2, 0, 2, 2), (2, 1, 1, 1),
                (2, 1, 4, 0), (2, 2, 0, 0), (3, 1, 3, 2), (3, 1, 6, 0),
                (2, 0, 4, 0), (3, 2, 2, 1)]
        worst = 0.0
        ok = True
        for (p, k, q, i) in grid:
            a = analysis.unit_hk_norm(analysis.random_element(p, ring, rng), k)
            rep = analysis.estimate_lemma_verify(a, k, q, i)
            ok = ok and rep["status"] == "pass"
            worst = max(worst, rep["max_residual"])
        rows.append(_row("estimates.lemma_grid",
                         {"delta": delta, "points": 2 * len(grid)},
                         ok, f"max residual {worst:.2e}", worst))
        bok = True
        for (m, k) in ((2, 0), (2, 1), (3, 1)):
            a = analysis.random_element(m, ring, rng)
            if a.is_zero():
                a = Element.unit(m, ring)
            rep = analysis.boundedness_verify(a, k, cfg.trials, rng)
            bok = bok and rep["status"] == "pass"
        rows.append(_row("estimates.boundedness", {"delta": delta}, bok))
        vecs = [np.array([rng.uniform(-1, 1) for _ in range(6)]) for _ in range(5)]
        rows.append(_row("estimates.sum_norm", {"delta": delta},
                         analysis.sum_norm_inequality(vecs)))
    return rows


# -- the section-5 replay suite -----------------------------------------------------------------


def suite_commutant_replay(cfg: Config):
    rng = random.Random(cfg.seed)
    ring = Ring.symbolic()
    rows = []
    for k in (0, 1):
        rep = analysis.dcomm_replay(k, rng=rng)
        rows.append(_row("replay.dcomm", {"k": k}, rep["status"] == "pass",
                         f"placements {rep['passing_placements']}"))
    rr = Ring.rational(Fraction(5, 2))
    member_ok = 0
    cases = 0
    for (n, k) in ((2, 1), (3, 1), (3, 2), (4, 2)):
        for _ in range(max(1, cfg.trials // 4)):
            cases += 1
            x = analysis.random_element(n, rr, rng)
            rep = analysis.cnk_membership(x, k)
            if rep["status"] == "pass":
                member_ok += 1
    rows.append(_row("replay.cnk_membership", {"cases": cases},
                     member_ok == cases, f"{member_ok}/{cases}"))
    inv_ok = True
    for (n, k) in ((2, 1), (3, 1), (3, 2)):
        for _ in range(3):
            raw = random_symbolic_element(n, ring, rng)
            _, x = analysis.perp_projection(raw, k)
            z = analysis.commutator_with_c(x, k, n + 1)
            inv_ok = inv_ok and analysis.ccommlem_invert(z, n, k) == x
    rows.append(_row("replay.ccommlem_invert", {"pairs": "(2,1),(3,1),(3,2)"},
                     inv_ok, "exact round trip"))
    rep = analysis.xnxm_verify(1, 2, rng)
    rows.append(_row("replay.xnxm", rep["params"], rep["status"] == "pass",
                     rep["details"]))
    rep = analysis.xnxm_telescope(1, 2, rng)
    rows.append(_row("replay.xnxm_telescope", rep["params"],
                     rep["status"] == "pass"))

    comm_ok = True
    for k in range(min(3, cfg.level + 1) + 1):
        c_el, d_el = element_c(k, ring), element_d(k, ring)
        for d in enumerate_diagrams(k):
            g = GradedElement.of_element(k, Element.basis(d, ring))
            comm_ok = comm_ok and sharp(g, c_el) == sharp(c_el, g) \
                and sharp(g, d_el) == sharp(d_el, g)
    rows.append(_row("replay.pk_commutes_cd", {"max_k": min(3, cfg.level + 1)},
                     comm_ok))

    el_ok = True
    for k in (1, 2, 3):
        for i in range(1, k + 1):
            el_ok = el_ok and _el_fixed_point_ok(k, i)
    rows.append(_row("replay.el_fixed_point", {"max_k": 3}, el_ok))

    w_tangle = Tangle(2, [1], [((1, 1), (0, 3)), ((1, 2), (0, 2)),
                               ((0, 1), (0, 4))])
    validate(w_tangle)
    sph_ok = True
    for d in enumerate_diagrams(1):
        x = Element.basis(d, ring)
        z = evaluate(w_tangle, [x])
        sph_ok = sph_ok and z.tau() == x.tau()
        wrapped = evaluate(left_expectation_tangle(2, 1), [z])
        sph_ok = sph_ok and wrapped == z.scale(ring.delta_power(1))
    rows.append(_row("replay.p1_p12_trace", {}, sph_ok))
    return rows


def _el_fixed_point_ok(k: int, i: int) -> bool:
    """delta^i-eigenspace of EL(i) equals its image: rank comparison, exact."""
    ring = Ring.rational(Fraction(7, 2))
    basis = enumerate_diagrams(k)
    index = {d: j for j, d in enumerate(basis)}
    el = left_expectation_tangle(k, i)
    n_dim = len(basis)
    mat = [[Fraction(0)] * n_dim for _ in range(n_dim)]
    for j, d in enumerate(basis):
        img = evaluate(el, [Element.basis(d, ring)])
        for dd, c in img.combo.items():
            mat[index[dd]][j] = c.value
    lam = Fraction(7, 2) ** i
    shifted = [[mat[a][b] - (lam if a == b else 0) for b in range(n_dim)]
               for a in range(n_dim)]
    if _rank(mat) != n_dim - _rank(shifted):
        return False
    # fixed point on an image element
    x = evaluate(el, [Element.basis(basis[0], ring)])
    return evaluate(el, [x]) == x.scale(ring.delta_power(i))


def _rank(mat) -> int:
    mat = [row[:] for row in mat]
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((ri for ri in range(r, rows) if mat[ri][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for ri in range(rows):
            if ri != r and mat[ri][c] != 0:
                f = mat[ri][c] / mat[r][c]
                mat[ri] = [a - f * b for a, b in zip(mat[ri], mat[r])]
        r += 1
    return r


# -- the positivity suite --------------------------------------------------------------------


def suite_positivity(cfg: Config):
    rng = random.Random(cfg.seed)
    rows = []
    top = min(6, cfg.resolved_max_colour() + 2)
    for delta in _float_deltas(cfg):
        ring = Ring.float_(delta)
        eigs = {}
        ok = True
        for n in range(top + 1):
            eig = analysis.gram_min_eigenvalue(n, ring)
            eigs[n] = eig
            ok = ok and eig > 0
        rows.append(_row("positivity.gram_eigenvalues",
                         {"delta": delta, "max_colour": top}, ok,
                         " ".join(f"n={n}:{eigs[n]:.4g}" for n in sorted(eigs))))
        psd_ok = True
        for n in (2, 3):
            for i in range(1, n + 1):
                x = analysis.random_element(n, ring, rng)
                image = evaluate(left_expectation_tangle(n, i),
                                 [x.star().multiply(x)])
                flag, _ = analysis.is_psd(image)
                psd_ok = psd_ok and flag
        rows.append(_row("positivity.el_images_psd", {"delta": delta}, psd_ok))
    exact_ok = all(analysis.gram_positive_definite_exact(n, d)
                   for d in (Fraction(2), Fraction(5, 2))
                   for n in range(min(5, top) + 1))
    rows.append(_row("positivity.gram_exact_ldl",
                     {"deltas": "2,5/2", "max_colour": min(5, top)}, exact_ok))
    # Hilbert-space Gram of a graded block: diagonal positive multiples
    ring = Ring.float_(2.0)
    hk_ok = True
    for k in (0, 1, 2):
        for n in range(k, k + 4):
            block = analysis.gram_min_eigenvalue(n, ring) * 2.0 ** (n - k)
            hk_ok = hk_ok and block > 0
    rows.append(_row("positivity.hk_blocks", {"delta": 2.0}, hk_ok))
    return rows


SUITES = {
    "filtalg": suite_filtalg,
    "annular": suite_annular,
    "gjs-iso": suite_gjs_iso,
    "jones": suite_jones,
    "estimates": suite_estimates,
    "commutant-replay": suite_commutant_replay,
    "positivity": suite_positivity,
}


def run_suite(name: str, cfg: Config):
    if name not in SUITES:
        raise PreconditionError(f"unknown suite {name!r}")
    return SUITES[name](cfg)


def run_suites(names, cfg: Config, jobs: int = 1) -> dict:
    names = list(names)
    if jobs > 1 and len(names) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_suite_worker,
                                    [(name, cfg) for name in names]))
        rows = [row for chunk in results for row in chunk]
    else:
        rows = [row for name in names for row in run_suite(name, cfg)]
    rows.sort(key=lambda r: (r["check"], str(sorted(r["params"].items()))))
    status = "pass" if all(r["status"] == "pass" for r in rows) else "fail"
    return {"seed": cfg.seed, "delta": cfg.delta, "level": cfg.level,
            "max_colour": cfg.resolved_max_colour(), "trials": cfg.trials,
            "suites": sorted(names), "status": status, "checks": rows}


def _suite_worker(args):
    name, cfg = args
    return run_suite(name, cfg)
