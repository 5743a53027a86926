"""Coset tables for congruence subgroups, built by exact reduction mod N.

A table stores, for each ambient generator, the permutation induced by left
multiplication on the left cosets g*Delta.  Coset 0 is the subgroup itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .projmatrix import proj_identity
from .quadint import QuadInt, quad_gcd
from .residues import ResidueRing
from .words import Presentation, Word


@dataclass(frozen=True)
class CosetTable:
    index: int
    action: tuple[tuple[int, ...], ...]  # one permutation per generator

    def __post_init__(self):
        for perm in self.action:
            if sorted(perm) != list(range(self.index)):
                raise ValueError("generator action is not a permutation")

    def apply_gen(self, g: int, e: int, coset: int) -> int:
        perm = self.action[g]
        if e == 1:
            return perm[coset]
        return perm.index(coset)

    def apply_word(self, w: Word, coset: int) -> int:
        # matrix products act on the left; the rightmost letter acts first
        for g, e in reversed(w.letters):
            coset = self.apply_gen(g, e, coset)
        return coset

    def is_transitive(self) -> bool:
        seen = {0}
        frontier = [0]
        while frontier:
            c = frontier.pop()
            for g in range(len(self.action)):
                for e in (1, -1):
                    nxt = self.apply_gen(g, e, c)
                    if nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
        return len(seen) == self.index

    def relators_act_trivially(self, relators) -> bool:
        return all(
            all(self.apply_word(r, c) == c for c in range(self.index))
            for r in relators
        )


def _p1_canonical(ring: ResidueRing, unit_res, c, d) -> tuple:
    return min((ring.mul(u, c), ring.mul(u, d)) for u in unit_res)


def _p1_points(ring: ResidueRing) -> list[tuple]:
    """Canonical representatives of P^1(O/N): unimodular rows mod unit scaling."""
    N = ring.modulus
    elements = ring.elements()
    unit_res = ring.unit_residues()
    seen = set()
    points = []
    for c in elements:
        for d in elements:
            zc, zd = ring.lift(c), ring.lift(d)
            if not quad_gcd(quad_gcd(zc, zd), N).is_unit():
                continue
            rep = _p1_canonical(ring, unit_res, c, d)
            if rep not in seen:
                seen.add(rep)
                points.append(rep)
    return sorted(points)


def coset_table_congruence(kind: str, level: QuadInt, ambient: Presentation) -> CosetTable:
    """Coset table of Gamma_0(N) or Gamma(N) inside the ambient group.

    Left cosets are labelled by exact data mod N: for Gamma_0 the point of
    P^1(O/N) carried by the bottom row of the inverse representative, for
    the congruence kernel the representative itself in SL2(O/N)/{+-1}.
    """
    if kind not in ("gamma0", "gamma_full"):
        raise ValueError(f"unknown congruence kind {kind!r}")
    if level.d != ambient.disc:
        raise ValueError("level and ambient live over different rings")
    if level.norm() < 2:
        if level.is_zero():
            raise ValueError("level must be nonzero")
        table = CosetTable(1, tuple((0,) for _ in range(ambient.ngens)))
    elif kind == "gamma0":
        table = _gamma0_table(ResidueRing(level), ambient)
    else:
        table = _gamma_full_table(ResidueRing(level), ambient)
    if not table.is_transitive():
        raise ValueError("congruence coset action is not transitive")
    if not table.relators_act_trivially(ambient.relators):
        raise ValueError("ambient relators do not act trivially on cosets")
    return table


def _gamma0_table(ring: ResidueRing, ambient: Presentation) -> CosetTable:
    unit_res = ring.unit_residues()
    points = _p1_points(ring)
    zero = ring.reduce(QuadInt(0, 0, ring.disc))
    one = ring.reduce(QuadInt(1, 0, ring.disc))
    base = _p1_canonical(ring, unit_res, zero, one)
    order = [base] + [p for p in points if p != base]
    lookup = {p: i for i, p in enumerate(order)}
    perms = []
    for img in ambient.images:
        a, b, c, d = img.inverse().canonicalize().entries
        perm = [0] * len(order)
        for p, i in lookup.items():
            zc, zd = ring.lift(p[0]), ring.lift(p[1])
            nc = ring.reduce(zc * a + zd * c)
            nd = ring.reduce(zc * b + zd * d)
            perm[i] = lookup[_p1_canonical(ring, unit_res, nc, nd)]
        perms.append(tuple(perm))
    return CosetTable(len(order), tuple(perms))


def _gamma_full_table(ring: ResidueRing, ambient: Presentation) -> CosetTable:
    signs = []
    for s in (QuadInt(1, 0, ring.disc), QuadInt(-1, 0, ring.disc)):
        c = ring.reduce(s)
        if c not in signs:
            signs.append(c)

    def canonical(mm) -> tuple:
        return min(tuple(ring.mul(s, x) for x in mm) for s in signs)

    def mul(mm, nn):
        a, b, c, d = (ring.lift(x) for x in mm)
        e, f, g, h = (ring.lift(x) for x in nn)
        return (
            ring.reduce(a * e + b * g),
            ring.reduce(a * f + b * h),
            ring.reduce(c * e + d * g),
            ring.reduce(c * f + d * h),
        )

    def adjugate(mm):
        a, b, c, d = (ring.lift(x) for x in mm)
        return (ring.reduce(d), ring.reduce(-b), ring.reduce(-c), ring.reduce(a))

    gens_mod = [tuple(ring.reduce(x) for x in img.sl2_representative().entries)
                for img in ambient.images]
    ident = canonical(tuple(ring.reduce(x) for x in proj_identity(ring.disc).entries))
    lookup = {ident: 0}
    order = [ident]
    frontier = [ident]
    while frontier:
        cur = frontier.pop(0)
        for gm in gens_mod:
            for g in (gm, adjugate(gm)):
                nxt = canonical(mul(g, cur))
                if nxt not in lookup:
                    lookup[nxt] = len(order)
                    order.append(nxt)
                    frontier.append(nxt)
    perms = []
    for gm in gens_mod:
        perm = [0] * len(order)
        for mm, i in lookup.items():
            perm[i] = lookup[canonical(mul(gm, mm))]
        perms.append(tuple(perm))
    return CosetTable(len(order), tuple(perms))
