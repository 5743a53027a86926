"""Projective 2x2 matrices over the fraction field of a quadratic ring.

A projective matrix is stored by an integral representative (four QuadInt
entries); scalars never matter, so inverses are adjugates and no
denominators are ever introduced.  Equality is decided by a total, exact
canonical form: divide by the gcd of the entries, then scale by the unit
that maximises the (a, b) pair of the first nonzero entry
lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .quadint import QuadInt, from_int, quad_gcd, square_units, units


@dataclass(frozen=True)
class ProjMatrix:
    entries: tuple[QuadInt, QuadInt, QuadInt, QuadInt]
    canonical: bool = False

    def __post_init__(self):
        e = self.entries
        if len(e) != 4:
            raise ValueError("need exactly 4 entries")
        d = e[0].d
        if any(x.d != d for x in e):
            raise ValueError("mixed discriminants in matrix")
        if self.det().is_zero():
            raise ValueError("projective matrix must have nonzero determinant")

    # -- basics ----------------------------------------------------------

    @property
    def disc(self) -> int:
        return self.entries[0].d

    def det(self) -> QuadInt:
        a, b, c, e = self.entries
        return a * e - b * c

    def trace(self) -> QuadInt:
        return self.entries[0] + self.entries[3]

    def __mul__(self, other: "ProjMatrix") -> "ProjMatrix":
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return ProjMatrix((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))

    def inverse(self) -> "ProjMatrix":
        a, b, c, d = self.entries
        return ProjMatrix((d, -b, -c, a))

    def scale(self, s: QuadInt) -> "ProjMatrix":
        return ProjMatrix(tuple(s * x for x in self.entries))

    # -- canonical form ----------------------------------------------------

    def canonicalize(self) -> "ProjMatrix":
        if self.canonical:
            return self
        e = list(self.entries)
        d = self.disc
        g = None
        for x in e:
            if x:
                g = x if g is None else quad_gcd(g, x)
        e = [x.exact_div(g) for x in e]
        first = next(x for x in e if x)
        best_u, best_key = None, None
        for u in units(d):
            y = u * first
            key = (y.a, y.b)
            if best_key is None or key > best_key:
                best_key, best_u = key, u
        e = [best_u * x for x in e]
        return ProjMatrix(tuple(e), canonical=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        return self.canonicalize().entries == other.canonicalize().entries

    def __hash__(self):
        c = self.canonicalize()
        return hash(tuple((x.a, x.b) for x in c.entries) + (self.disc,))

    def key(self):
        c = self.canonicalize()
        return tuple((x.a, x.b) for x in c.entries)

    def is_identity(self) -> bool:
        c = self.canonicalize()
        a, b, cc, d = c.entries
        return (not b) and (not cc) and a == d

    def in_projective_group(self) -> bool:
        """Whether this projective class contains an SL2 representative.

        The canonical form of an SL2(O) matrix differs from one by a unit, so
        its determinant is a square of a unit.  Nonintegral classes never
        canonicalize to that.
        """
        return self.canonicalize().det() in square_units(self.disc)

    def sl2_representative(self) -> "ProjMatrix":
        """A representative with determinant exactly 1 (up to overall sign)."""
        c = self.canonicalize()
        dt = c.det()
        for u in units(self.disc):
            if u * u * dt == from_int(1, self.disc):
                return c.scale(u)
        raise ValueError("matrix class has no SL2 representative")

    def __repr__(self):
        a, b, c, d = self.entries
        return f"[[{a},{b}],[{c},{d}]]"


def proj_identity(d: int) -> ProjMatrix:
    one, zero = from_int(1, d), from_int(0, d)
    return ProjMatrix((one, zero, zero, one))


def from_ints(rows: list[list[int]], d: int = 0) -> ProjMatrix:
    (a, b), (c, e) = rows
    return ProjMatrix((from_int(a, d), from_int(b, d), from_int(c, d), from_int(e, d)))


def from_pairs(rows, d: int) -> ProjMatrix:
    """Build from entries given as (a, b) integer pairs meaning a + b*w."""
    (a, b), (c, e) = rows
    return ProjMatrix(
        (QuadInt(*a, d), QuadInt(*b, d), QuadInt(*c, d), QuadInt(*e, d))
    )


def from_fractions(rows, d: int) -> ProjMatrix:
    """Build from entries given as pairs of Fractions (a, b) meaning a + b*w.

    Denominators are cleared; only the projective class survives anyway.
    """
    fracs = []
    for row in rows:
        for a, b in row:
            fracs.append((Fraction(a), Fraction(b)))
    lcm = 1
    for fa, fb in fracs:
        for f in (fa, fb):
            q = f.denominator
            lcm = lcm * q // _gcd_int(lcm, q)
    ents = [QuadInt(int(fa * lcm), int(fb * lcm), d) for fa, fb in fracs]
    return ProjMatrix(tuple(ents))


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
