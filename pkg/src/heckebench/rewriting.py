"""Rewrite group-element matrices as words in role-tagged generators.

The algorithm is elementary-matrix decomposition over a norm-Euclidean
ring: repeated division with remainder clears the bottom-left entry, upper
unitriangular pieces become powers of the translations T1 (and Tw over a
quadratic ring), and unit-diagonal leftovers are expanded through the
identity  diag(u, u^-1) ~ E(u) F(-u^-1) E(u) S^-1.
"""

from __future__ import annotations

from .projmatrix import ProjMatrix, proj_identity
from .quadint import QuadInt, from_int
from .words import Presentation, Word


class RewriteError(ValueError):
    pass


def _translation_word(pres: Presentation, z: QuadInt) -> Word:
    """Word for the upper elementary matrix E(z) = [[1, z], [0, 1]]."""
    t1 = pres.role_index("T1")
    w = Word.power(t1, z.a)
    if z.b:
        tw = pres.role_index("Tw")
        w = w * Word.power(tw, z.b)
    return w


def _lower_word(pres: Presentation, z: QuadInt) -> Word:
    """Word for the lower elementary matrix F(z) = [[1, 0], [z, 1]] = S^-1 E(-z) S."""
    s = pres.role_index("S")
    return Word.gen(s, -1) * _translation_word(pres, -z) * Word.gen(s, 1)


def _unit_diag_word(pres: Presentation, u: QuadInt) -> Word:
    """Word for diag(u, u^-1) up to projective sign."""
    d = u.d
    if u == from_int(1, d) or u == from_int(-1, d):
        return Word()
    uinv = u.conjugate()  # norm-1 unit
    s = pres.role_index("S")
    return (
        _translation_word(pres, u)
        * _lower_word(pres, -uinv)
        * _translation_word(pres, u)
        * Word.gen(s, -1)
    )


def rewrite_to_ambient_word(m: ProjMatrix, ambient: Presentation) -> Word:
    """A word in the ambient generators evaluating to m projectively.

    Requires m to lie in the ambient projective group: integral canonical
    form whose determinant is the square of a ring unit.
    """
    if m.disc != ambient.disc:
        raise RewriteError("matrix and presentation live over different rings")
    if not m.in_projective_group():
        raise RewriteError(f"matrix {m} is not in PSL2 of the ring (determinant obstruction)")
    d = m.disc
    mat = m.sl2_representative()
    s_idx = ambient.role_index("S")
    prefix: list[Word] = []  # left factors already peeled off
    a, b, c, e = mat.entries
    guard = 0
    while not c.is_zero():
        guard += 1
        if guard > 10_000:
            raise RewriteError("Euclidean reduction failed to terminate")
        if a.norm() >= c.norm():
            q, _ = a.divmod(c)
            # E(-q) * M has top-left entry a - q c of norm < N(c)
            prefix.append(_translation_word(ambient, q))
            a, b = a - q * c, b - q * e
        else:
            # S * M = [[-c, -e], [a, b]] moves the small entry down-left
            prefix.append(Word.gen(s_idx, -1))
            a, b, c, e = -c, -e, a, b
    # now the matrix is [[a, b], [0, e]] with a*e = 1
    word = Word()
    for piece in prefix:
        word = word * piece
    word = word * _unit_diag_word(ambient, a)
    word = word * _translation_word(ambient, a.conjugate() * b)
    if not (ambient.evaluate(word) == m):
        raise RewriteError("rewriting produced a word with the wrong evaluation")
    return word
