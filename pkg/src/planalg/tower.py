"""The filtered algebras F_k(P) and graded algebras Gr_k(P) over TL.

A level-k picture of a colour-m box has 2(m-k) points on top, k on the
right side and k on the left side; the side cables are the last 2k points
in the clockwise numbering.  Every operation here is a combinatorially
explicit tangle in that frame; the restriction identities to P_k pin each
convention and are enforced by a one-shot self-check.
"""

from __future__ import annotations

from functools import lru_cache

from .annular import enumerate_good
from .diagrams import Colour, Diagram
from .elements import Element, jones_projection, tl_sum
from .errors import (InternalError, LevelMismatchError, PreconditionError)
from .scalars import Ring, Scalar
from .tangles import EXT, Tangle, evaluate, evaluate_in


class LevelConvention:
    """Boundary point ranges for a colour-m box viewed at level k."""

    def __init__(self, m: int, k: int):
        if m < k:
            raise PreconditionError("colour must be at least the level")
        self.m = m
        self.k = k

    @property
    def top(self):
        return range(1, 2 * (self.m - self.k) + 1)

    @property
    def right(self):
        base = 2 * (self.m - self.k)
        return range(base + 1, base + self.k + 1)

    @property
    def left(self):
        return range(2 * self.m - self.k + 1, 2 * self.m + 1)


class GradedElement:
    """A vector in F_k(P) or Gr_k(P): finitely many colour components n >= k."""

    __slots__ = ("level", "ring", "components")

    def __init__(self, level: int, ring: Ring, components=None):
        if level < 0:
            raise PreconditionError("level must be non-negative")
        self.level = level
        self.ring = ring
        clean = {}
        for n, el in (components or {}).items():
            if n < level:
                raise PreconditionError(
                    f"component colour {n} below level {level}")
            if el.colour.n != n:
                raise PreconditionError("component colour does not match key")
            if not el.is_zero():
                clean[n] = el
        self.components = clean

    @classmethod
    def zero(cls, level, ring):
        return cls(level, ring)

    @classmethod
    def of_element(cls, level, element: Element):
        return cls(level, element.ring, {element.colour.n: element})

    @classmethod
    def unit(cls, level, ring):
        return cls.of_element(level, Element.unit(level, ring))

    def component(self, n: int) -> Element:
        if n in self.components:
            return self.components[n]
        return Element.zero(n, self.ring)

    def colours(self):
        return sorted(self.components)

    def _check_level(self, other):
        if self.level != other.level:
            raise LevelMismatchError(
                f"level mismatch: {self.level} vs {other.level}")

    def __add__(self, other):
        self._check_level(other)
        comps = dict(self.components)
        for n, el in other.components.items():
            comps[n] = comps[n] + el if n in comps else el
        return GradedElement(self.level, self.ring, comps)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GradedElement(self.level, self.ring,
                             {n: -el for n, el in self.components.items()})

    def scale(self, s: Scalar):
        return GradedElement(self.level, self.ring,
                             {n: el.scale(s) for n, el in self.components.items()})

    def is_zero(self):
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.level == other.level and (self - other).is_zero()

    __hash__ = None

    def to_json(self):
        return {"level": self.level,
                "components": {str(n): self.components[n].to_json()
                               for n in sorted(self.components)}}

    @classmethod
    def from_json(cls, data, ring=None):
        comps = {}
        for n, el in data["components"].items():
            comps[int(n)] = Element.from_json(el, ring)
            if ring is None:
                ring = comps[int(n)].ring
        if ring is None:
            ring = Ring.symbolic()
        return cls(data["level"], ring, comps)

    def __repr__(self):
        comps = ", ".join(f"{n}: {el!r}" for n, el in sorted(self.components.items()))
        return f"GradedElement(level={self.level}, {{{comps}}})"


# -- the two-box product tangle -------------------------------------------------


def sharp_tangle(m: int, n: int, k: int, t: int) -> Tangle:
    """The P_t component tangle of the level-k product on P_m x P_n."""
    if m < k or n < k:
        raise PreconditionError("factor colours must be at least the level")
    if not abs(m - n) + k <= t <= m + n - k:
        raise PreconditionError(f"t={t} outside [{abs(m-n)+k}, {m+n-k}]")
    j = m + n - k - t
    pairs = []
    for i in range(1, m + t - n - k + 1):
        pairs.append(((1, i), (EXT, i)))
    for r in range(1, j + 1):
        pairs.append(((1, 2 * (m - k) + 1 - r), (2, r)))
    for i in range(j + 1, 2 * (n - k) + 1):
        pairs.append(((2, i), (EXT, m + t - n - k + i - j)))
    for d in range(1, k + 1):
        pairs.append(((1, 2 * (m - k) + d), (2, 2 * n + 1 - d)))
        pairs.append(((1, 2 * m - k + d), (EXT, 2 * t - k + d)))
        pairs.append(((2, 2 * (n - k) + d), (EXT, 2 * (t - k) + d)))
    return Tangle(t, [m, n], pairs)


def sharp_component(a: Element, b: Element, k: int, t: int) -> Element:
    return evaluate(sharp_tangle(a.colour.n, b.colour.n, k, t), [a, b])


def sharp_range(m: int, n: int, k: int):
    return range(abs(m - n) + k, m + n - k + 1)


def sharp(a: GradedElement, b: GradedElement) -> GradedElement:
    """The filtered product of F_k(P), bilinear over components."""
    a._check_level(b)
    _check_conventions(a.ring)
    k = a.level
    out = GradedElement.zero(k, a.ring)
    for m, am in a.components.items():
        for n, bn in b.components.items():
            for t in sharp_range(m, n, k):
                out = out + GradedElement.of_element(
                    k, sharp_component(am, bn, k, t))
    return out


def bullet(a: GradedElement, b: GradedElement) -> GradedElement:
    """The graded (top-component) product of Gr_k(P)."""
    a._check_level(b)
    _check_conventions(a.ring)
    k = a.level
    out = GradedElement.zero(k, a.ring)
    for m, am in a.components.items():
        for n, bn in b.components.items():
            out = out + GradedElement.of_element(
                k, sharp_component(am, bn, k, m + n - k))
    return out


# -- dagger, traces, inner product ------------------------------------------------


def _dagger_element(x: Element, k: int) -> Element:
    """Rotation^k of the adjoint: point i goes to 2(m-k)+1-i mod 2m."""
    m = x.colour.n
    if m == 0:
        return x
    mod = 2 * m
    mu = lambda i: (2 * (m - k) - i) % mod + 1
    combo = {}
    for d, c in x.combo.items():
        combo[Diagram(x.colour, [(mu(p), mu(q)) for p, q in d.pairs])] = c
    return Element(x.colour, x.ring, combo)


def dagger(a: GradedElement) -> GradedElement:
    return GradedElement(a.level, a.ring,
                         {n: _dagger_element(el, a.level)
                          for n, el in a.components.items()})


def trace_tk(a: GradedElement) -> Scalar:
    """t_k: the normalised trace of the level-k component."""
    return a.component(a.level).tau()


def inner_product(a: GradedElement, b: GradedElement) -> Scalar:
    """<a|b> = t_k(b^dagger # a)."""
    a._check_level(b)
    return trace_tk(sharp(dagger(b), a))


def hk_norm_squared(a: GradedElement) -> Scalar:
    """delta^{-k} sum_n delta^n tau(a_n* a_n)."""
    k = a.level
    total = a.ring.zero()
    for n, el in a.components.items():
        total = total + el.star().multiply(el).tau().delta_pow(n - k)
    return total


# -- inclusion and conditional expectation --------------------------------------------


def _include_element(x: Element, new_level: int) -> Element:
    n = x.colour.n + 1
    k = new_level
    cut = 2 * n - k
    combo = {}
    for d, c in x.combo.items():
        pairs = [tuple(p if p < cut else p + 2 for p in pair) for pair in d.pairs]
        pairs.append((cut, cut + 1))
        combo[Diagram(n, pairs)] = c
    return Element(Colour(n), x.ring, combo)


def include(a: GradedElement) -> GradedElement:
    """The unital trace-preserving embedding of F_k(P) into F_{k+1}(P)."""
    k = a.level + 1
    return GradedElement(k, a.ring,
                         {n + 1: _include_element(el, k)
                          for n, el in a.components.items()})


def include_to(a: GradedElement, level: int) -> GradedElement:
    out = a
    while out.level < level:
        out = include(out)
    if out.level != level:
        raise PreconditionError(f"cannot include from level {a.level} to {level}")
    return out


def _expect_element(x: Element, k: int) -> Element:
    n = x.colour.n
    c1, c2 = 2 * n - k, 2 * n - k + 1
    relabel = lambda p: p if p < c1 else p - 2
    out = Element.zero(n - 1, x.ring)
    for d, c in x.combo.items():
        if d.partner(c1) == c2:
            pairs = [pr for pr in d.pairs if c1 not in pr]
            factor = 0          # one closed loop cancels the 1/delta prefactor
        else:
            p1, p2 = d.partner(c1), d.partner(c2)
            pairs = [pr for pr in d.pairs if not set(pr) & {c1, c2}]
            pairs.append((p1, p2))
            factor = -1
        pairs = [(relabel(a), relabel(b)) for a, b in pairs]
        out = out + Element.basis(Diagram(n - 1, pairs), x.ring,
                                  c.delta_pow(factor))
    return out


def cond_expect(a: GradedElement) -> GradedElement:
    """E_{k-1}: the delta^{-1}-scaled capping retraction F_k -> F_{k-1}."""
    if a.level < 1:
        raise PreconditionError("conditional expectation needs level >= 1")
    return GradedElement(a.level - 1, a.ring,
                         {n - 1: _expect_element(el, a.level)
                          for n, el in a.components.items()})


# -- distinguished elements ------------------------------------------------------------


def element_c(k: int, ring: Ring) -> GradedElement:
    """The single-strand generator of F_0 pushed into F_k (lives in P_{k+1})."""
    pairs = [(1, 2)] + [(2 + j, 2 * k + 3 - j) for j in range(1, k + 1)]
    return GradedElement.of_element(k, Element.basis(Diagram(k + 1, pairs), ring))


def element_d(k: int, ring: Ring) -> GradedElement:
    """The two-strand generator (the box identity 1_2) pushed into F_k."""
    pairs = [(1, 4), (2, 3)] + [(4 + j, 2 * k + 5 - j) for j in range(1, k + 1)]
    return GradedElement.of_element(k, Element.basis(Diagram(k + 2, pairs), ring))


def jones_e(k: int, ring: Ring) -> GradedElement:
    """e_{k+1} in P_{k+1} as an element of F_{k+1}(P)."""
    if k < 1:
        raise PreconditionError("jones_e needs k >= 1")
    return GradedElement.of_element(k + 1, jones_projection(k + 1, ring))


# -- graded trace -----------------------------------------------------------------------


def trace_Tr(a: GradedElement, k: int | None = None) -> Scalar:
    """Tr_k: close the top through the sum of all TL diagrams, cables around."""
    if k is None:
        k = a.level
    if k != a.level:
        raise PreconditionError("trace level must match the element level")
    total = a.ring.zero()
    for m, el in a.components.items():
        side = [((1, 2 * (m - k) + d), (1, 2 * m + 1 - d)) for d in range(1, k + 1)]
        if m == k:
            tangle = Tangle(0, [m], side)
            closed = evaluate_in(tangle, [el], a.ring)
        else:
            top = [((1, i), (2, 2 * (m - k) + 1 - i))
                   for i in range(1, 2 * (m - k) + 1)]
            tangle = Tangle(0, [m, m - k], top + side)
            closed = evaluate_in(tangle, [el, tl_sum(m - k, a.ring)], a.ring)
        empty = Diagram(Colour(0), ())
        total = total + closed.combo.get(empty, a.ring.zero())
    return total


# -- the maps between Gr_k and F_k ---------------------------------------------------------


@lru_cache(maxsize=None)
def _good_tangles(k: int, j: int, i: int, excellent: bool):
    return tuple(enumerate_good(k, j, i, excellent))


def _triangular_map(k: int, a: GradedElement, excellent: bool) -> GradedElement:
    out = GradedElement.zero(k, a.ring)
    for j, el in a.components.items():
        for i in range(k, j + 1):
            acc = Element.zero(i, a.ring)
            for tangle in _good_tangles(k, j, i, excellent):
                acc = acc + evaluate(tangle, [el])
            if excellent and (i + j) % 2 == 1:
                acc = -acc
            out = out + GradedElement.of_element(k, acc)
    return out


def phi(k: int, a: GradedElement) -> GradedElement:
    """Sum of all k-good annular tangle actions: Gr_k(P) -> F_k(P)."""
    if a.level != k:
        raise LevelMismatchError("phi level must match the element level")
    return _triangular_map(k, a, excellent=False)


def psi(k: int, a: GradedElement) -> GradedElement:
    """Signed sum of all k-excellent annular tangle actions: F_k(P) -> Gr_k(P)."""
    if a.level != k:
        raise LevelMismatchError("psi level must match the element level")
    return _triangular_map(k, a, excellent=True)


# -- the dot action of F_{k+1} on F_k ----------------------------------------------------


def dot_tangle(m: int, n: int, k: int, t: int) -> Tangle:
    """The P_t component tangle of a.b for a in P_m <= F_{k+1}, b in P_n <= F_k."""
    if k < 1:
        raise PreconditionError("the dot action is defined for k >= 1")
    if m < k + 1 or n < k:
        raise PreconditionError("dot action colour/level mismatch")
    if not abs(m - n - 1) + k <= t <= m + n - k - 1:
        raise PreconditionError(
            f"t={t} outside [{abs(m-n-1)+k}, {m+n-k-1}]")
    pairs = []
    for i in range(1, m + t - n - k):
        pairs.append(((1, i), (EXT, i)))
    for p in range(1, m + n - k - t):
        pairs.append(((1, 2 * (m - k - 1) + 1 - p), (2, p)))
    for p in range(m + n - k - t, 2 * n - k):
        pairs.append(((2, p), (EXT, p + 2 * (t - n))))
    for p in range(2 * n - k, 2 * n + 1):
        pairs.append(((2, p), (1, 2 * (m + n - k) - 1 - p)))
    pairs.append(((1, 2 * m - k), (EXT, 2 * t - k)))
    for d in range(1, k + 1):
        pairs.append(((1, 2 * m - k + d), (EXT, 2 * t - k + d)))
    return Tangle(t, [m, n], pairs)


def dot_range(m: int, n: int, k: int):
    return range(abs(m - n - 1) + k, m + n - k)


def dot_action(a: GradedElement, b: GradedElement) -> GradedElement:
    """theta_k(a)(b): the action of F_{k+1}(P) on F_k(P), by direct tangles."""
    if a.level != b.level + 1:
        raise LevelMismatchError("dot action needs levels (k+1, k)")
    k = b.level
    out = GradedElement.zero(k, b.ring)
    for m, am in a.components.items():
        for n, bn in b.components.items():
            for t in dot_range(m, n, k):
                out = out + GradedElement.of_element(
                    k, evaluate(dot_tangle(m, n, k, t), [am, bn]))
    return out


def dot_action_via_expectation(a: GradedElement, b: GradedElement) -> GradedElement:
    """The same action computed as delta^2 E_k(a # incl(b) # e_{k+1})."""
    if a.level != b.level + 1:
        raise LevelMismatchError("dot action needs levels (k+1, k)")
    k = b.level
    e = jones_e(k, b.ring)
    prod = sharp(sharp(a, include(b)), e)
    return cond_expect(prod).scale(b.ring.delta_power(2))


# -- index sets of the associativity proofs ---------------------------------------------


def sharp_index_I(m, n, p, k):
    return {(t, s)
            for t in range(abs(m - n) + k, m + n - k + 1)
            for s in range(abs(t - p) + k, t + p - k + 1)}


def sharp_index_J(m, n, p, k):
    return {(v, u)
            for v in range(abs(n - p) + k, n + p - k + 1)
            for u in range(abs(m - v) + k, m + v - k + 1)}


def dot_index_I(m, n, p, k):
    return {(t, s)
            for t in range(abs(m - n) + k + 1, m + n - k)
            for s in range(abs(t - p - 1) + k, t + p - k)}


def dot_index_J(m, n, p, k):
    return {(v, u)
            for v in range(abs(n - p - 1) + k, n + p - k)
            for u in range(abs(m - v - 1) + k, m + v - k)}


def index_bijection(m, n, p):
    """(t,s) -> (max(m+p, n+s) - t, s), shared by both associativity proofs."""
    return lambda ts: (max(m + p, n + ts[1]) - ts[0], ts[1])


# -- convention self-check --------------------------------------------------------------


_CONVENTIONS_CHECKED = False


def _check_conventions(ring: Ring) -> None:
    """Fail fast if the pinned rotation/stacking conventions drift."""
    global _CONVENTIONS_CHECKED
    if _CONVENTIONS_CHECKED:
        return
    _CONVENTIONS_CHECKED = True
    sym = Ring.symbolic()
    x = Element.basis(Diagram(2, [(1, 2), (3, 4)]), sym)
    y = Element.basis(Diagram(2, [(1, 4), (2, 3)]), sym)
    k = 1
    a = GradedElement.of_element(k, x)
    b = GradedElement.of_element(k, y)
    lhs = dagger(sharp(a, b))
    rhs = sharp(dagger(b), dagger(a))
    if lhs != rhs:
        _CONVENTIONS_CHECKED = False
        raise InternalError("dagger is not anti-multiplicative: rotation "
                            "direction convention is broken")
    if _dagger_element(x, 2) != x.star():
        _CONVENTIONS_CHECKED = False
        raise InternalError("dagger does not restrict to * on P_k")
