"""Free-group words over a named generating set, and group presentations."""

from __future__ import annotations

from dataclasses import dataclass, field

from .projmatrix import ProjMatrix, proj_identity

# A word is a tuple of (generator index, +1 | -1), freely reduced.
Letter = tuple[int, int]


def free_reduce(letters) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in letters:
        if e not in (1, -1):
            raise ValueError("letters carry exponent +1 or -1")
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def exponent_vector(self, ngens: int) -> list[int]:
        v = [0] * ngens
        for g, e in self.letters:
            v[g] += e
        return v

    @staticmethod
    def gen(i: int, e: int = 1) -> "Word":
        return Word(((i, e),))

    @staticmethod
    def power(i: int, n: int) -> "Word":
        if n == 0:
            return Word()
        e = 1 if n > 0 else -1
        return Word(tuple((i, e) for _ in range(abs(n))))


@dataclass(frozen=True)
class Presentation:
    """Finite presentation whose generators carry matrix images.

    roles maps role names ("S", "T1", "Tw") to generator indices; the
    rewriting of matrices into words needs the inversion S and the
    translations.
    """

    names: tuple[str, ...]
    images: tuple[ProjMatrix, ...]
    relators: tuple[Word, ...]
    roles: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.names) != len(self.images):
            raise ValueError("one matrix image per generator name")
        for r in self.relators:
            if not self.evaluate(r).is_identity():
                raise ValueError(f"relator {self.word_str(r)} does not evaluate to the identity")

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def disc(self) -> int:
        return self.images[0].disc

    def evaluate(self, w: Word) -> ProjMatrix:
        m = proj_identity(self.disc)
        for g, e in w.letters:
            img = self.images[g]
            m = m * (img if e == 1 else img.inverse())
        return m

    def word_str(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        for g, e in w.letters:
            parts.append(self.names[g] if e == 1 else f"{self.names[g]}^-1")
        return " ".join(parts)

    def parse_word(self, text: str) -> Word:
        letters = []
        for tok in text.split():
            if "^" in tok:
                name, exp = tok.split("^")
                exp = int(exp)
            else:
                name, exp = tok, 1
            if name not in self.names:
                raise ValueError(f"unknown generator {name!r}")
            letters.extend(Word.power(self.names.index(name), exp).letters)
        return Word(tuple(letters))

    def role_index(self, role: str) -> int:
        if role not in self.roles:
            raise ValueError(f"presentation lacks a generator with role {role!r}")
        return self.roles[role]
