"""Finite-index subgroups: transversals, Schreier generators, presentations.

The model is driven entirely by the coset table.  Membership is decided
either by the congruence condition (exact arithmetic mod N) or, for
table-defined subgroups, by rewriting to an ambient word and checking that
it stabilises the base coset.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cosets import CosetTable, coset_table_congruence
from .projmatrix import ProjMatrix
from .quadint import QuadInt, from_int, units
from .residues import ResidueRing
from .rewriting import rewrite_to_ambient_word
from .words import Presentation, Word


@dataclass(frozen=True)
class SubgroupModel:
    ambient: Presentation
    table: CosetTable
    kind: str = "table"  # "gamma0" | "gamma_full" | "table"
    level: QuadInt | None = None
    transversal: tuple[Word, ...] = field(init=False)
    schreier_words: tuple[Word, ...] = field(init=False)
    schreier_labels: tuple[tuple[int, int], ...] = field(init=False)
    presentation: Presentation = field(init=False)

    def __post_init__(self):
        transversal = _schreier_transversal(self.ambient, self.table)
        object.__setattr__(self, "transversal", transversal)
        labels, words = _schreier_generators(self.ambient, self.table, transversal)
        object.__setattr__(self, "schreier_labels", labels)
        object.__setattr__(self, "schreier_words", words)
        object.__setattr__(
            self, "_schreier_lookup", {lab: k for k, lab in enumerate(labels)}
        )
        object.__setattr__(
            self, "presentation", _reidemeister_schreier(self, labels, words)
        )
        for w in words:
            mat = self.ambient.evaluate(w)
            if not self.contains(mat):
                raise ValueError("Schreier generator fails the membership predicate")

    # -- membership ------------------------------------------------------

    @property
    def index(self) -> int:
        return self.table.index

    @property
    def disc(self) -> int:
        return self.ambient.disc

    def contains(self, m: ProjMatrix) -> bool:
        if m.disc != self.disc:
            return False
        if not m.in_projective_group():
            return False
        if self.kind == "gamma0":
            if self.level is None or self.level.norm() < 2:
                return True
            ring = ResidueRing(self.level)
            c = m.canonicalize().entries[2]
            return ring.reduce(c) == ring.reduce(from_int(0, self.disc))
        if self.kind == "gamma_full":
            if self.level is None or self.level.norm() < 2:
                return True
            ring = ResidueRing(self.level)
            cm = m.canonicalize()
            one = from_int(1, self.disc)
            for u in units(self.disc):
                cand = cm.scale(u)
                if cand.det() != one:
                    continue
                for sgn in (1, -1):
                    a, b, c, d = (x * sgn for x in cand.entries)
                    if (
                        ring.reduce(b) == ring.reduce(from_int(0, self.disc))
                        and ring.reduce(c) == ring.reduce(from_int(0, self.disc))
                        and ring.reduce(a - one) == ring.reduce(from_int(0, self.disc))
                        and ring.reduce(d - one) == ring.reduce(from_int(0, self.disc))
                    ):
                        return True
            return False
        word = rewrite_to_ambient_word(m, self.ambient)
        return self.table.apply_word(word, 0) == 0

    # -- Schreier rewriting ------------------------------------------------

    def schreier_index(self, gen: int, coset: int) -> int | None:
        """Index of the Schreier generator for (gen, coset); None on tree edges."""
        return self._schreier_lookup.get((gen, coset))

    def rewrite_ambient_word(self, w: Word) -> Word:
        """Rewrite an ambient word lying in the subgroup as a subgroup word."""
        if self.table.apply_word(w, 0) != 0:
            raise ValueError("word does not lie in the subgroup")
        coset = 0
        out: list[tuple[int, int]] = []
        for g, e in reversed(w.letters):
            if e == 1:
                nxt = self.table.apply_gen(g, 1, coset)
                idx = self.schreier_index(g, coset)
                if idx is not None:
                    out.append((idx, 1))
            else:
                nxt = self.table.apply_gen(g, -1, coset)
                idx = self.schreier_index(g, nxt)
                if idx is not None:
                    out.append((idx, -1))
            coset = nxt
        out.reverse()
        return Word(tuple(out))

    def rewrite_matrix(self, m: ProjMatrix) -> Word:
        """Rewrite a subgroup element given as a matrix into a subgroup word."""
        if not self.contains(m):
            raise ValueError(f"matrix {m} is not in the subgroup")
        return self.rewrite_ambient_word(rewrite_to_ambient_word(m, self.ambient))

    def evaluate_subgroup_word(self, w: Word) -> ProjMatrix:
        from .projmatrix import proj_identity

        m = proj_identity(self.disc)
        for g, e in w.letters:
            img = self.ambient.evaluate(self.schreier_words[g])
            m = m * (img if e == 1 else img.inverse())
        return m


def _schreier_transversal(pres: Presentation, table: CosetTable) -> tuple[Word, ...]:
    """Prefix-closed coset representative words via BFS; coset 0 gets the empty word."""
    words: dict[int, Word] = {0: Word()}
    frontier = [0]
    while frontier:
        c = frontier.pop(0)
        for g in range(pres.ngens):
            for e in (1, -1):
                nxt = table.apply_gen(g, e, c)
                if nxt not in words:
                    words[nxt] = Word.gen(g, e) * words[c]
                    frontier.append(nxt)
    if len(words) != table.index:
        raise ValueError("coset table is not transitive")
    return tuple(words[i] for i in range(table.index))


def _schreier_generators(pres, table, transversal):
    """Nontrivial Schreier generators s(g, i) = rep(g i)^-1 g rep(i)."""
    labels: list[tuple[int, int]] = []
    words: list[Word] = []
    for g in range(pres.ngens):
        for i in range(table.index):
            j = table.apply_gen(g, 1, i)
            w = transversal[j].inverse() * Word.gen(g, 1) * transversal[i]
            if w:
                labels.append((g, i))
                words.append(w)
    return tuple(labels), tuple(words)


def _reidemeister_schreier(sub: SubgroupModel, labels, words) -> Presentation:
    """Subgroup presentation on the Schreier generators.

    Relators: every transversal conjugate of every ambient relator, rewritten
    through the coset scan.  Tree generators are trivial and already removed,
    so the relator count is index * (ambient relator count).
    """
    pres = sub.ambient
    table = sub.table
    relators = []
    for rel in pres.relators:
        for i in range(table.index):
            # read the relator loop based at coset i: the scan starts at the
            # base coset, walks out along rep_i, loops, and walks back
            u = sub.transversal[i]
            conj = u.inverse() * rel * u
            relators.append(sub.rewrite_ambient_word(conj))
    names = tuple(f"y{k}" for k in range(len(words)))
    images = tuple(pres.evaluate(w) for w in words)
    return Presentation(names, images, tuple(relators))
