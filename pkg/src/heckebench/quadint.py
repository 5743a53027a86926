"""Exact arithmetic in Z and the five Euclidean imaginary quadratic orders.

Elements are written a + b*w where w depends on the discriminant tag d:

    d = 0           w is irrelevant (the ring is Z, b must stay 0)
    d in {1, 2}     w = sqrt(-d),        w^2 = -d
    d in {3, 7, 11} w = (1+sqrt(-d))/2,  w^2 = w - (1+d)/4

All five quadratic rings are norm-Euclidean, which is what the matrix
rewriting and gcd routines rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

EUCLIDEAN_DISCS = (0, 1, 2, 3, 7, 11)


def _check_disc(d: int) -> None:
    if d not in EUCLIDEAN_DISCS:
        raise ValueError(f"unsupported discriminant {d}; need one of {EUCLIDEAN_DISCS}")


def omega_square_coeffs(d: int) -> tuple[int, int]:
    """Coefficients (p, q) with w^2 = p + q*w."""
    if d in (1, 2):
        return (-d, 0)
    return (-(1 + d) // 4, 1)


@dataclass(frozen=True)
class QuadInt:
    """Element a + b*w of the ring of integers tagged by discriminant d."""

    a: int
    b: int
    d: int

    def __post_init__(self):
        _check_disc(self.d)
        if self.d == 0 and self.b != 0:
            raise ValueError("d=0 means the ring Z; b must be 0")

    # -- ring structure ------------------------------------------------

    def _same(self, other: "QuadInt") -> None:
        if self.d != other.d:
            raise ValueError(f"mixed discriminants {self.d} and {other.d}")

    def __add__(self, other: "QuadInt") -> "QuadInt":
        self._same(other)
        return QuadInt(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        self._same(other)
        return QuadInt(self.a - other.a, self.b - other.b, self.d)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.a, -self.b, self.d)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadInt(self.a * other, self.b * other, self.d)
        self._same(other)
        p, q = omega_square_coeffs(self.d)
        bb = self.b * other.b
        return QuadInt(
            self.a * other.a + p * bb,
            self.a * other.b + self.b * other.a + q * bb,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadInt":
        if self.d in (1, 2):
            return QuadInt(self.a, -self.b, self.d)
        # conj(w) = 1 - w for the half-integer generators
        return QuadInt(self.a + self.b, -self.b, self.d)

    def norm(self) -> int:
        if self.d in (1, 2):
            return self.a * self.a + self.d * self.b * self.b
        m = (1 + self.d) // 4
        return self.a * self.a + self.a * self.b + m * self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self):
        if self.d == 0 or self.b == 0:
            return f"{self.a}"
        return f"({self.a}{self.b:+d}w{self.d})"

    # -- Euclidean structure -------------------------------------------

    def divmod(self, other: "QuadInt") -> tuple["QuadInt", "QuadInt"]:
        """Division with remainder of strictly smaller norm."""
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in quadratic ring")
        nc = other.norm()
        num = self * other.conjugate()
        q0 = Fraction(num.a, nc)
        q1 = Fraction(num.b, nc)
        m0, n0 = round(q0), round(q1)
        best = None
        moves = (0,) if self.d == 0 else (0, -1, 1)
        for dm in (0, -1, 1):
            for dn in moves:
                q = QuadInt(m0 + dm, n0 + dn, self.d)
                r = self - q * other
                nr = r.norm()
                if best is None or nr < best[0]:
                    best = (nr, q, r)
        nr, q, r = best
        assert nr < nc, "Euclidean division failed; ring not norm-Euclidean?"
        return q, r

    def __mod__(self, other: "QuadInt") -> "QuadInt":
        return self.divmod(other)[1]

    def exact_div(self, other: "QuadInt") -> "QuadInt":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError(f"{self} is not divisible by {other}")
        return q


def quad_gcd(x: QuadInt, y: QuadInt) -> QuadInt:
    """A gcd via the Euclidean algorithm (determined up to a unit)."""
    while not y.is_zero():
        x, y = y, x % y
    return x


def units(d: int) -> list[QuadInt]:
    _check_disc(d)
    if d == 1:
        i = QuadInt(0, 1, 1)
        return [QuadInt(1, 0, 1), i, QuadInt(-1, 0, 1), -i]
    if d == 3:
        w = QuadInt(0, 1, 3)
        ws = w * w
        return [QuadInt(1, 0, 3), w, ws, QuadInt(-1, 0, 3), -w, -ws]
    return [QuadInt(1, 0, d), QuadInt(-1, 0, d)]


def square_units(d: int) -> list[QuadInt]:
    """The set {u^2 : u a unit}; determinants of canonical group elements."""
    seen = []
    for u in units(d):
        s = u * u
        if s not in seen:
            seen.append(s)
    return seen


def from_int(n: int, d: int) -> QuadInt:
    return QuadInt(n, 0, d)


def omega(d: int) -> QuadInt:
    _check_disc(d)
    if d == 0:
        raise ValueError("d=0 has no generator w")
    return QuadInt(0, 1, d)
