"""Arithmetic in the finite quotient O/(N) of a quadratic ring.

Residues are canonicalized through the Hermite form of the lattice
Z*coords(N) + Z*coords(N*w) inside Z^2, so they are usable as dict keys.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quadint import QuadInt, omega, quad_gcd, units


def _hnf_2d(rows: list[tuple[int, int]]) -> tuple[int, int, int]:
    """Hermite form of the sublattice of Z^2 spanned by rows.

    Returns (d0, k, d1) meaning basis [(d0, 0), (k, d1)] with d0, d1 > 0 and
    0 <= k < d0.  Requires full rank.
    """
    rows = [list(r) for r in rows if r != (0, 0)]
    # clear the second coordinate of all but one row via gcd steps
    while True:
        nz = [r for r in rows if r[1] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda r: abs(r[1]))
        base = nz[0]
        for r in nz[1:]:
            q = r[1] // base[1]
            r[0] -= q * base[0]
            r[1] -= q * base[1]
        rows = [r for r in rows if r != [0, 0]]
    second = next((r for r in rows if r[1] != 0), None)
    if second is None:
        raise ValueError("lattice not of full rank")
    firsts = [r[0] for r in rows if r[1] == 0]
    if not firsts:
        raise ValueError("lattice not of full rank")
    d0 = 0
    for x in firsts:
        d0 = _gcd(d0, x)
    d0 = abs(d0)
    k, d1 = second
    if d1 < 0:
        k, d1 = -k, -d1
    k %= d0
    return d0, k, d1


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass(frozen=True)
class ResidueRing:
    """O/(N) for a nonzero nonunit modulus N."""

    modulus: QuadInt

    def __post_init__(self):
        if self.modulus.is_zero() or self.modulus.is_unit():
            raise ValueError("modulus must have norm >= 2")

    @property
    def disc(self) -> int:
        return self.modulus.d

    def _hnf(self) -> tuple[int, int, int]:
        N = self.modulus
        if self.disc == 0:
            n = abs(N.a)
            return n, 0, 1  # second coordinate unused over Z
        Nw = N * omega(self.disc)
        return _hnf_2d([(N.a, N.b), (Nw.a, Nw.b)])

    def reduce(self, z: QuadInt) -> tuple[int, int]:
        """Canonical coordinates of z mod (N)."""
        if z.d != self.disc:
            raise ValueError("discriminant mismatch")
        d0, k, d1 = self._hnf()
        a, b = z.a, z.b
        t = b // d1
        a -= t * k
        b -= t * d1
        a %= d0
        return (a, b)

    def size(self) -> int:
        d0, _, d1 = self._hnf()
        return d0 * d1  # = norm of the modulus

    def elements(self) -> list[tuple[int, int]]:
        d0, _, d1 = self._hnf()
        if self.disc == 0:
            return [(a, 0) for a in range(d0)]
        return [(a, b) for b in range(d1) for a in range(d0)]

    def lift(self, coords: tuple[int, int]) -> QuadInt:
        return QuadInt(coords[0], coords[1], self.disc)

    def add(self, x, y):
        return self.reduce(self.lift(x) + self.lift(y))

    def mul(self, x, y):
        return self.reduce(self.lift(x) * self.lift(y))

    def is_coprime(self, z: QuadInt) -> bool:
        """Whether (z) + (N) is the whole ring."""
        g = quad_gcd(z, self.modulus)
        return g.is_unit()

    def unit_residues(self) -> list[tuple[int, int]]:
        return [c for c in self.elements() if self.is_coprime(self.lift(c))]

    def ring_units_mod(self) -> list[tuple[int, int]]:
        """Images of the global ring units in O/(N)."""
        out = []
        for u in units(self.disc):
            c = self.reduce(u)
            if c not in out:
                out.append(c)
        return out
