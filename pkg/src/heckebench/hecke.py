"""Double-coset decompositions and Hecke operators on H^1 and H_1.

For a commensurating element g, the double coset Gamma g^-1 Gamma splits as
a disjoint union of left cosets g_i Gamma with g_i = delta_i g^-1 and the
delta_i a transversal of Gamma / Gamma_{g^-1}.  Left multiplication by
gamma permutes the g_i Gamma and produces the factor system

    gamma g_i = g_{gamma(i)} t_i(gamma),        t_i(gamma) in Gamma,

out of which the operators on cocycles and on abelianized classes are built.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cohomology import Cocycle, abelianization, h1_basis, homology_basis
from .projmatrix import ProjMatrix, proj_identity
from .subgroup import SubgroupModel
from .words import Word


class CapExceeded(RuntimeError):
    """The coset search hit its iteration cap."""


class DecompositionError(RuntimeError):
    """A coset lookup failed; the decomposition is inconsistent."""


@dataclass(frozen=True)
class HeckeElement:
    matrix: ProjMatrix
    label: str = ""

    @property
    def disc(self) -> int:
        return self.matrix.disc


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    subgroup: SubgroupModel
    element: HeckeElement
    deltas: tuple[ProjMatrix, ...]

    @property
    def degree(self) -> int:
        return len(self.deltas)

    @property
    def reps(self) -> list[tuple[ProjMatrix, ProjMatrix]]:
        ginv = self.element.matrix.inverse()
        return [(d, (d * ginv).canonicalize()) for d in self.deltas]

    def in_stabilized_subgroup(self, delta: ProjMatrix) -> bool:
        """Membership in Gamma_{g^-1} = {delta : g delta g^-1 in Gamma}."""
        g = self.element.matrix
        conj = (g * delta * g.inverse()).canonicalize()
        return conj.in_projective_group() and self.subgroup.contains(conj)

    def same_coset(self, d1: ProjMatrix, d2: ProjMatrix) -> bool:
        return self.in_stabilized_subgroup(d1.inverse() * d2)

    def verify(self) -> None:
        reps = self.reps
        for i in range(len(reps)):
            for j in range(len(reps)):
                gi, gj = reps[i][1], reps[j][1]
                inside = (gi.inverse() * gj).canonicalize()
                member = inside.in_projective_group() and self.subgroup.contains(inside)
                if member != (i == j):
                    raise DecompositionError("coset representatives are not pairwise disjoint")
        # completeness: generator multiples stay inside the listed cosets
        for w in self.subgroup.schreier_words:
            gamma = self.subgroup.ambient.evaluate(w)
            for i in range(self.degree):
                self.apply(i, gamma)

    def apply(self, i: int, gamma: ProjMatrix) -> tuple[int, ProjMatrix]:
        """(gamma(i), t_i(gamma)) with gamma g_i = g_{gamma(i)} t_i(gamma)."""
        g = self.element.matrix
        ginv = g.inverse()
        gi = self.deltas[i] * ginv
        target = gamma * gi
        for j, dj in enumerate(self.deltas):
            gj = dj * ginv
            t = (gj.inverse() * target).canonicalize()
            if t.in_projective_group() and self.subgroup.contains(t):
                return j, t
        raise DecompositionError("no coset absorbs the translate; decomposition corrupt")


def double_coset_reps(
    sub: SubgroupModel, g: HeckeElement, cap: int = 10_000
) -> DoubleCosetDecomposition:
    """BFS transversal of Gamma / Gamma_{g^-1} over the subgroup generators.

    The generator order is fixed (Schreier order, then inverses) so reruns
    are reproducible; correctness does not depend on it.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    if g.disc != sub.disc:
        raise ValueError("Hecke element lives over the wrong ring")
    gens = [sub.ambient.evaluate(w) for w in sub.schreier_words]
    gens += [m.inverse() for m in gens]
    gmat = g.matrix

    def in_stabilizer(delta: ProjMatrix) -> bool:
        conj = (gmat * delta * gmat.inverse()).canonicalize()
        return conj.in_projective_group() and sub.contains(conj)

    deltas = [proj_identity(sub.disc)]
    frontier = [deltas[0]]
    steps = 0
    while frontier:
        cur = frontier.pop(0)
        for gen in gens:
            steps += 1
            if steps > cap:
                raise CapExceeded(
                    f"coset search exceeded {cap} steps; element may not commensurate"
                )
            cand = (gen * cur).canonicalize()
            if any(in_stabilizer(d.inverse() * cand) for d in deltas):
                continue
            deltas.append(cand)
            frontier.append(cand)
            if len(deltas) > cap:
                raise CapExceeded(f"more than {cap} cosets found")
    result = DoubleCosetDecomposition(sub, g, tuple(deltas))
    result.verify()
    return result


def hecke_cocycle(dec: DoubleCosetDecomposition, i: int, gamma: ProjMatrix):
    """The pair (gamma(i), t_i(gamma)); gamma must lie in the subgroup."""
    if not dec.subgroup.contains(gamma):
        raise ValueError("element is not in the subgroup")
    return dec.apply(i, gamma)


def hecke_on_cocycle(dec: DoubleCosetDecomposition, c: Cocycle) -> Cocycle:
    """(T_g c)(gamma) = sum_i c(t_i(gamma)), expressed in the dual basis."""
    if c.subgroup is not dec.subgroup:
        raise ValueError("cocycle belongs to a different subgroup")
    sub = dec.subgroup

    def transformed(gamma: ProjMatrix) -> int:
        return sum(c.evaluate(dec.apply(i, gamma)[1]) for i in range(dec.degree))

    hwords = homology_basis(sub)
    coords = tuple(transformed(sub.evaluate_subgroup_word(w)) for w in hwords)
    out = Cocycle(sub, c.invariants, coords)
    # the values must agree on every Schreier generator, otherwise the
    # transformed map is not the homomorphism with these dual coordinates
    for w in sub.schreier_words:
        gamma = sub.ambient.evaluate(w)
        if out.evaluate(gamma) != transformed(gamma):
            raise DecompositionError("transformed cocycle is not well defined")
    return out


@dataclass(frozen=True)
class HeckeMatrix:
    matrix: tuple[tuple[int, ...], ...]
    side: str  # "cohomology" | "homology"
    label: str
    convention: str = "double coset of the inverse element"

    @property
    def size(self) -> int:
        return len(self.matrix)

    def __mul__(self, other: "HeckeMatrix") -> "HeckeMatrix":
        A, B = self.matrix, other.matrix
        n = len(A)
        prod = tuple(
            tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        return HeckeMatrix(prod, self.side, f"{self.label}*{other.label}")

    def transpose(self) -> tuple[tuple[int, ...], ...]:
        n = len(self.matrix)
        return tuple(tuple(self.matrix[j][i] for j in range(n)) for i in range(n))

    def char_poly(self) -> list[int]:
        """Characteristic polynomial coefficients, leading first (exact)."""
        n = len(self.matrix)
        # Faddeev-LeVerrier over exact integers via fractions
        A = [[Fraction(x) for x in row] for row in self.matrix]
        coeffs = [Fraction(1)]
        M = [[Fraction(0)] * n for _ in range(n)]
        for k in range(1, n + 1):
            # M = A*M + c_{k-1} I ; c_k = -tr(A*M)/k
            AM = [
                [sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)
            ]
            for i in range(n):
                AM[i][i] += coeffs[-1]
            M = AM
            tr = sum(
                sum(A[i][t] * M[t][i] for t in range(n)) for i in range(n)
            )
            coeffs.append(-tr / k)
        out = []
        for c in coeffs:
            assert c.denominator == 1
            out.append(int(c))
        return out

    def integer_eigenvalues(self) -> list[int] | None:
        """The eigenvalue multiset when the characteristic polynomial splits
        over Z; None otherwise."""
        poly = self.char_poly()
        roots: list[int] = []
        while len(poly) > 1:
            const = poly[-1]
            if const == 0:
                root = 0
            else:
                root = None
                for cand in _divisors_signed(const):
                    if _poly_eval(poly, cand) == 0:
                        root = cand
                        break
                if root is None:
                    return None
            roots.append(root)
            poly = _poly_divide_linear(poly, root)
        return sorted(roots)


def _divisors_signed(n: int):
    n = abs(n)
    out = []
    for k in range(1, n + 1):
        if n % k == 0:
            out += [k, -k]
    return out


def _poly_eval(poly, x):
    acc = 0
    for c in poly:
        acc = acc * x + c
    return acc


def _poly_divide_linear(poly, root):
    out = [poly[0]]
    for c in poly[1:-1]:
        out.append(c + root * out[-1])
    return out


def hecke_matrix(dec: DoubleCosetDecomposition, basis) -> HeckeMatrix:
    """Matrix of T_g in the given basis (cocycles or homology words)."""
    if basis and isinstance(basis[0], Cocycle):
        return hecke_matrix_cohomology(dec, basis)
    return hecke_matrix_homology(dec, basis)


def hecke_matrix_cohomology(dec: DoubleCosetDecomposition, basis: list[Cocycle]) -> HeckeMatrix:
    """Matrix of T_g on coordinate vectors of cocycles in the given basis."""
    sub = dec.subgroup
    hwords = homology_basis(sub)
    gammas = [sub.evaluate_subgroup_word(w) for w in hwords]
    pair = [[c.evaluate(gm) for c in basis] for gm in gammas]  # rows: homology
    cols = []
    for c in basis:
        tc = hecke_on_cocycle(dec, c)
        vals = [tc.evaluate(gm) for gm in gammas]
        cols.append(_solve_integer(pair, vals))
    n = len(basis)
    mat = tuple(tuple(cols[k][j] for k in range(n)) for j in range(n))
    return HeckeMatrix(mat, "cohomology", dec.element.label)


def hecke_matrix_homology(dec: DoubleCosetDecomposition, basis_words: list[Word]) -> HeckeMatrix:
    """Matrix of T_g[gamma] = sum_i [t_i(gamma)] on the free part of H_1."""
    sub = dec.subgroup
    inv = abelianization(sub.presentation)
    ngens = sub.presentation.ngens
    cols = []
    for w in basis_words:
        gamma = sub.evaluate_subgroup_word(w)
        total = [0] * inv.free_rank
        for i in range(dec.degree):
            _, t = dec.apply(i, gamma)
            tw = sub.rewrite_matrix(t)
            fc = inv.free_coords(tw.exponent_vector(ngens))
            total = [a + b for a, b in zip(total, fc)]
        cols.append(total)
    n = len(basis_words)
    mat = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return HeckeMatrix(mat, "homology", dec.element.label)


def _solve_integer(A, b):
    """Solve A^T x = b ... precisely: sum_k x_k A[j][k] = b[j]; integral solution."""
    n = len(b)
    M = [[Fraction(A[j][k]) for k in range(n)] + [Fraction(b[j])] for j in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise DecompositionError("cocycle basis does not span")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    out = []
    for r in range(n):
        val = M[r][n]
        if val.denominator != 1:
            raise DecompositionError("transformed cocycle is not integral in this basis")
        out.append(int(val))
    return out


def covariant_rep_factor(dec: DoubleCosetDecomposition, gamma: ProjMatrix):
    """Factorisation data of the covariant representation of gamma.

    Returns (tau, diag) where tau is the permutation i -> gamma(i) and diag
    the list [t_k(gamma)]; the operator is the monomial matrix with
    tau[k]-th row carrying the unitary of diag[k].
    """
    if not dec.subgroup.contains(gamma):
        raise ValueError("element is not in the subgroup")
    tau = [0] * dec.degree
    diag: list[ProjMatrix] = [None] * dec.degree
    for i in range(dec.degree):
        j, t = dec.apply(i, gamma)
        tau[i] = j
        diag[i] = t
    return tuple(tau), tuple(diag)


def monomial_multiply(fac1, fac2):
    """Product of two monomial factorisations (tau, diag).

    (tau1, d1) * (tau2, d2) = (tau1 o tau2, k -> d1[tau2(k)] * d2[k]).
    """
    tau1, d1 = fac1
    tau2, d2 = fac2
    tau = tuple(tau1[tau2[k]] for k in range(len(tau1)))
    diag = tuple(d1[tau2[k]] * d2[k] for k in range(len(d2)))
    return tau, diag
