"""Colours and Temperley-Lieb diagrams (non-crossing perfect matchings)."""

from __future__ import annotations

from functools import lru_cache

from . import config
from .errors import PreconditionError, ValidationError


class Colour:
    """A box colour: 0_+, 0_- or a positive integer.

    An unqualified 0 always resolves to 0_+; that rule lives here and
    nowhere else.
    """

    __slots__ = ("n", "minus")

    def __init__(self, n: int, minus: bool = False):
        if n < 0:
            raise PreconditionError("colour must be non-negative")
        if minus and n != 0:
            raise PreconditionError("only colour 0 carries a shading sign")
        self.n = n
        self.minus = minus

    @classmethod
    def of(cls, value) -> "Colour":
        if isinstance(value, Colour):
            return value
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, str):
            s = value.strip()
            if s in ("0+", "0_+"):
                return cls(0)
            if s in ("0-", "0_-"):
                return cls(0, minus=True)
            return cls(int(s))
        raise PreconditionError(f"cannot interpret {value!r} as a colour")

    @property
    def points(self) -> int:
        return 2 * self.n

    def to_json(self):
        if self.n == 0:
            return "0-" if self.minus else "0+"
        return self.n

    def __eq__(self, other):
        if isinstance(other, int):
            other = Colour(other)
        return isinstance(other, Colour) and self.n == other.n and self.minus == other.minus

    def __hash__(self):
        return hash((self.n, self.minus))

    def __repr__(self):
        if self.n == 0:
            return "0-" if self.minus else "0+"
        return str(self.n)


ZERO_PLUS = Colour(0)
ZERO_MINUS = Colour(0, minus=True)


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n == 0:
        return 1
    return catalan(n - 1) * 2 * (2 * n - 1) // (n + 1)


class Diagram:
    """A non-crossing perfect matching of the 2n boundary points of an n-box.

    Points are numbered 1..2n clockwise.  Stored as a sorted tuple of pairs,
    each pair with the smaller endpoint first; hashable, usable as a basis key.
    """

    __slots__ = ("colour", "pairs", "_partner", "_hash")

    def __init__(self, colour, pairs, _validated=False):
        self.colour = Colour.of(colour)
        pairs = tuple(sorted((min(p), max(p)) for p in pairs))
        self.pairs = pairs
        partner = {}
        for a, b in pairs:
            partner[a] = b
            partner[b] = a
        self._partner = partner
        self._hash = hash((self.colour, pairs))
        if not _validated:
            self._validate()

    def _validate(self):
        n2 = self.colour.points
        if sorted(self._partner) != list(range(1, n2 + 1)):
            raise ValidationError(
                f"pairing is not a perfect matching of 1..{n2}")
        for a, b in self.pairs:
            if (a + b) % 2 == 0:
                raise ValidationError(
                    f"pair ({a},{b}) joins two points of equal parity",
                    strand=(a, b))
        # stack scan: non-crossing iff every closer matches the top opener
        stack = []
        for p in range(1, n2 + 1):
            q = self._partner[p]
            if q > p:
                stack.append(p)
            else:
                if not stack or stack[-1] != q:
                    raise ValidationError(
                        f"pair ({q},{p}) crosses another strand", strand=(q, p))
                stack.pop()

    def partner(self, p: int) -> int:
        return self._partner[p]

    def reflect(self) -> "Diagram":
        """Mirror image: point i goes to 2n+1-i."""
        m = self.colour.points + 1
        return Diagram(self.colour, [(m - a, m - b) for a, b in self.pairs],
                       _validated=True)

    def rotate(self, shift: int) -> "Diagram":
        """Relabel every point by p -> p + shift (mod 2n)."""
        n2 = self.colour.points
        if n2 == 0:
            return self
        move = lambda p: (p - 1 + shift) % n2 + 1
        return Diagram(self.colour, [(move(a), move(b)) for a, b in self.pairs])

    def to_json(self):
        return [list(p) for p in self.pairs]

    def __eq__(self, other):
        return (isinstance(other, Diagram)
                and self.colour == other.colour and self.pairs == other.pairs)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = ",".join(f"{a}-{b}" for a, b in self.pairs)
        return f"D{self.colour}({inner})"


def identity_diagram(colour) -> Diagram:
    """The unit 1_n: point i joined to 2n+1-i."""
    colour = Colour.of(colour)
    n = colour.n
    return Diagram(colour, [(i, 2 * n + 1 - i) for i in range(1, n + 1)],
                   _validated=True)


def _matchings(points: tuple) -> list:
    """All non-crossing matchings of an ordered run of points (sorted lists of pairs)."""
    if not points:
        return [[]]
    out = []
    first = points[0]
    # first can only pair inside the run at odd offsets (even block enclosed)
    for j in range(1, len(points), 2):
        inside = _matchings(points[1:j])
        outside = _matchings(points[j + 1:])
        for ins in inside:
            for outs in outside:
                out.append([(first, points[j])] + ins + outs)
    return out


@lru_cache(maxsize=None)
def _enumerate_cached(n: int):
    pts = tuple(range(1, 2 * n + 1))
    return tuple(Diagram(n, m, _validated=True) for m in _matchings(pts))


def enumerate_diagrams(colour) -> tuple:
    """All diagrams of the given colour in lexicographic order; Catalan(n) many."""
    colour = Colour.of(colour)
    if colour.n > config.COLOUR_CAP:
        raise PreconditionError(
            f"colour {colour.n} exceeds the configured cap {config.COLOUR_CAP}")
    if colour.n == 0:
        return (Diagram(colour, (), _validated=True),)
    return _enumerate_cached(colour.n)
