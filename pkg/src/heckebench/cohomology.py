"""Abelianization, integral cocycles, and low-degree (co)homology data."""

from __future__ import annotations

from dataclasses import dataclass, field

from .projmatrix import ProjMatrix
from .smith import diagonal, identity, mat_mul, mat_transpose, smith_normal_form
from .subgroup import SubgroupModel
from .words import Presentation, Word


@dataclass(frozen=True)
class AbelianInvariants:
    """Finitely generated abelian group Z^rank + sum Z/d_i, with coordinates.

    free_projection maps generator-exponent vectors to coordinates on the
    free part; it consists of rows of a unimodular transform, so it is
    surjective and admits the integral section free_section.
    """

    free_rank: int
    divisors: tuple[int, ...]
    free_projection: tuple[tuple[int, ...], ...] = ()
    free_section: tuple[tuple[int, ...], ...] = ()
    aspherical_assumed: bool = False

    def __post_init__(self):
        for a, b in zip(self.divisors, self.divisors[1:]):
            if b % a:
                raise ValueError("elementary divisors must form a divisibility chain")
        if any(d < 2 for d in self.divisors):
            raise ValueError("divisors are the entries >= 2")

    def free_coords(self, exponents) -> tuple[int, ...]:
        return tuple(
            sum(r * e for r, e in zip(row, exponents)) for row in self.free_projection
        )

    def lift_free(self, coords) -> tuple[int, ...]:
        """An exponent vector whose free coordinates are the given ones."""
        if not self.free_section:
            return tuple()
        return tuple(
            sum(self.free_section[k][j] * coords[k] for k in range(self.free_rank))
            for j in range(len(self.free_section[0]))
        )

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.divisors]
        return " + ".join(parts) if parts else "0"


def abelianization(pres: Presentation) -> AbelianInvariants:
    """Smith-normal-form abelianization of a finite presentation.

    H1 = Z^g / (row space of the relator matrix).  The projection to the
    free part consists of the rows of the unimodular transform acting on the
    generator side that correspond to zero diagonal entries.
    """
    g = pres.ngens
    rows = [r.exponent_vector(g) for r in pres.relators]
    if not rows:
        rows = [[0] * g] if g else []
    if g == 0:
        return AbelianInvariants(0, ())
    # SNF of the transpose: columns of A^T are relator images in Z^g
    At = mat_transpose(rows)
    D, P, Q = smith_normal_form(At)
    diag = diagonal(D)
    divisors = tuple(d for d in diag if d >= 2)
    rank_part = sum(1 for d in diag if d != 0)
    free_rows = list(range(rank_part, g))
    proj = tuple(tuple(P[i]) for i in free_rows)
    # section: columns of P^-1 at the free positions; P^-1 = Q' from inverting
    Pinv = _unimodular_inverse(P)
    section = tuple(tuple(Pinv[j][i] for j in range(g)) for i in free_rows)
    return AbelianInvariants(g - rank_part, divisors, proj, section)


def _unimodular_inverse(P):
    """Exact inverse of a unimodular integer matrix via its SNF transforms."""
    n = len(P)
    D, L, R = smith_normal_form(P)
    if diagonal(D) != [1] * n:
        raise ValueError("matrix is not unimodular")
    # L P R = I  =>  P^-1 = R L
    return mat_mul(R, L)


def h2_from_presentation(pres: Presentation) -> AbelianInvariants:
    """H^2 of the presentation 2-complex (exact only when it is aspherical).

    Cellular cochains give H^2 = Z^relators / image of the transposed
    boundary, i.e. the cokernel of the relator matrix acting on exponent
    vectors.  Free presentations get the trivial group.
    """
    r = len(pres.relators)
    g = pres.ngens
    if r == 0:
        return AbelianInvariants(0, (), aspherical_assumed=True)
    A = [rel.exponent_vector(g) for rel in pres.relators]
    # delta^1: Z^gens -> Z^relators is the relator matrix itself; H^2 is its cokernel
    D, _, _ = smith_normal_form(A)
    diag = diagonal(D)
    rank_part = sum(1 for d in diag if d != 0)
    divisors = tuple(d for d in diag if d >= 2)
    return AbelianInvariants(r - rank_part, divisors, aspherical_assumed=True)


@dataclass(frozen=True)
class Cocycle:
    """Element of Hom(Gamma, Z): integer coordinates against the dual basis
    of the free part of the abelianization."""

    subgroup: SubgroupModel
    invariants: AbelianInvariants
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.invariants.free_rank:
            raise ValueError("coordinate length must equal the free rank")

    def evaluate_word(self, w: Word) -> int:
        e = w.exponent_vector(self.subgroup.presentation.ngens)
        fc = self.invariants.free_coords(e)
        return sum(a * b for a, b in zip(self.coords, fc))

    def evaluate(self, m: ProjMatrix) -> int:
        return self.evaluate_word(self.subgroup.rewrite_matrix(m))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(
            self.subgroup,
            self.invariants,
            tuple(a + b for a, b in zip(self.coords, other.coords)),
        )

    def scale(self, k: int) -> "Cocycle":
        return Cocycle(self.subgroup, self.invariants, tuple(k * c for c in self.coords))


def evaluate_cocycle(c: Cocycle, m: ProjMatrix) -> int:
    return c.evaluate(m)


def h1_basis(sub: SubgroupModel) -> list[Cocycle]:
    """Dual basis of Hom(Gamma, Z) = Z^rank for the subgroup presentation."""
    inv = abelianization(sub.presentation)
    basis = []
    for k in range(inv.free_rank):
        coords = tuple(1 if i == k else 0 for i in range(inv.free_rank))
        basis.append(Cocycle(sub, inv, coords))
    return basis


def homology_basis(sub: SubgroupModel) -> list[Word]:
    """Subgroup words whose classes form the dual basis of the free part of H1."""
    inv = abelianization(sub.presentation)
    words = []
    for k in range(inv.free_rank):
        coords = tuple(1 if i == k else 0 for i in range(inv.free_rank))
        expo = inv.lift_free(coords)
        w = Word()
        for j, e in enumerate(expo):
            w = w * Word.power(j, e)
        words.append(w)
    return words


def schreier_transfer(sub: SubgroupModel, gamma: ProjMatrix):
    """All pairs (image coset, s_i(gamma)) of the transfer decomposition.

    s_i is defined by  gamma * rep_i = rep_{gamma(i)} * s_i(gamma).
    Returned subgroup elements are words in the Schreier generators.
    """
    from .rewriting import rewrite_to_ambient_word

    word = rewrite_to_ambient_word(gamma, sub.ambient)
    out = []
    for i in range(sub.index):
        j = sub.table.apply_word(word, i)
        conj = sub.transversal[j].inverse() * word * sub.transversal[i]
        out.append((j, sub.rewrite_ambient_word(conj)))
    return out


def surface_data(sub: SubgroupModel):
    """(genus, cusps, torsion_free, rank) for a subgroup of the modular group.

    The ambient presentation must carry roles S and T1 with the standard
    order-2 / parabolic images; U = S*T1 is the order-3 rotation.  A
    finite-index subgroup is torsion-free iff both S and U act without fixed
    points on the cosets; cusps are the T1-orbits and the genus comes from
    the Euler characteristic -index/6 of the quotient surface.
    """
    pres = sub.ambient
    if pres.disc != 0:
        raise ValueError("surface data requires the modular group over Z")
    s = pres.role_index("S")
    t = pres.role_index("T1")
    table = sub.table
    sigma_s = [table.apply_gen(s, 1, i) for i in range(sub.index)]
    sigma_u = [
        table.apply_word(Word.gen(s, 1) * Word.gen(t, 1), i) for i in range(sub.index)
    ]
    torsion_free = all(sigma_s[i] != i for i in range(sub.index)) and all(
        sigma_u[i] != i for i in range(sub.index)
    )
    if not torsion_free:
        return (None, _cycle_count([table.apply_gen(t, 1, i) for i in range(sub.index)]),
                False, None)
    sigma_t = [table.apply_gen(t, 1, i) for i in range(sub.index)]
    cusps = _cycle_count(sigma_t)
    if sub.index % 6:
        raise ValueError("torsion-free modular subgroups have index divisible by 6")
    chi = -(sub.index // 6)
    genus2 = 2 - chi - cusps
    if genus2 % 2:
        raise ValueError("inconsistent Euler characteristic data")
    genus = genus2 // 2
    rank = 2 * genus + cusps - 1
    return (genus, cusps, True, rank)


def _cycle_count(perm) -> int:
    seen = [False] * len(perm)
    count = 0
    for i in range(len(perm)):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return count
