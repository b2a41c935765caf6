"""Words and finite presentations."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class Word:
    """Freely reduced word; ``letters`` is a tuple of (generator, nonzero exponent)."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce_syllables(self.letters))

    @classmethod
    def from_letters(cls, seq: Iterable[tuple[str, int]]) -> "Word":
        return cls(tuple(seq))

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "Word":
        return cls(((name, exp),))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.letters * n)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def expand(self) -> list[tuple[str, int]]:
        """Letter-by-letter expansion with exponents +-1."""
        out = []
        for g, e in self.letters:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            if e == 1:
                parts.append(g)
            elif e > 0:
                parts.append(f"{g}^{e}")
            else:
                parts.append(f"{g}^{{{e}}}")
        return "".join(parts)


def _reduce_syllables(letters) -> tuple:
    stack: list[list] = []
    for g, e in letters:
        if not isinstance(e, int) or e == 0:
            if e == 0:
                continue
            raise WordError(f"exponent must be an integer, got {e!r}")
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a^-1 b^-1 a b."""
    return a.inverse() * b.inverse() * a * b


@dataclass
class FpPresentation:
    generators: list[str]
    relators: list[Word] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise WordError("generator names must be unique")
        for r in self.relators:
            bad = r.generators() - set(self.generators)
            if bad:
                raise WordError(f"relator {r} uses undeclared generators {sorted(bad)}")

    def parse(self, text: str) -> Word:
        return parse_word(text, self)

    def word(self, text: str) -> Word:
        return parse_word(text, self)


@dataclass
class SubgroupSpec:
    """Subgroup generated by ``generator_words`` together with the normal
    closure of ``normal_words``.

    ``closure_mode="normal-closure"`` asks for the normal closure of all the
    generator words.
    """

    generator_words: list[Word] = field(default_factory=list)
    closure_mode: str = "as-given"
    normal_words: list[Word] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        if self.closure_mode not in ("as-given", "normal-closure"):
            raise WordError(f"unknown closure mode {self.closure_mode!r}")

    def plain_words(self) -> list[Word]:
        return [] if self.closure_mode == "normal-closure" else list(self.generator_words)

    def closure_words(self) -> list[Word]:
        extra = list(self.generator_words) if self.closure_mode == "normal-closure" else []
        return extra + list(self.normal_words)

    def validate(self, pres: FpPresentation) -> None:
        gens = set(pres.generators)
        for w in list(self.generator_words) + list(self.normal_words):
            bad = w.generators() - gens
            if bad:
                raise WordError(f"subgroup word {w} uses undeclared generators {sorted(bad)}")


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _gen_pattern(names: Sequence[str]):
    names = sorted(names, key=len, reverse=True)
    return re.compile("|".join(re.escape(n) for n in names)) if names else None


def parse_word(text: str, pres: FpPresentation | Sequence[str]) -> Word:
    """Parse notation like ``b^3z^{-2}b^{-1}z^2`` or ``(b^{-2}z)^3``.

    Juxtaposition is product, ``*`` and whitespace are optional separators,
    ``[u,v]`` is the commutator u^-1 v^-1 u v.  Empty input is the identity.
    """
    names = pres.generators if isinstance(pres, FpPresentation) else list(pres)
    p = _WordParser(text, names)
    return p.parse()


class _WordParser:
    def __init__(self, text: str, names: Sequence[str]):
        self.s = text
        self.i = 0
        self.names = list(names)
        self.gen_re = _gen_pattern(self.names)

    def error(self, msg):
        raise WordError(f"{msg} at position {self.i + 1} in {self.s!r}")

    def skip(self):
        while self.i < len(self.s) and self.s[self.i] in " \t*.":
            self.i += 1

    def parse(self) -> Word:
        w = self.product(stop="")
        self.skip()
        if self.i != len(self.s):
            self.error("unexpected character")
        return w

    def product(self, stop: str) -> Word:
        w = Word()
        while True:
            self.skip()
            if self.i >= len(self.s) or self.s[self.i] in stop or self.s[self.i] in ")],":
                return w
            w = w * self.factor()

    def factor(self) -> Word:
        self.skip()
        c = self.s[self.i]
        if c == "(":
            self.i += 1
            base = self.product(stop=")")
            self.expect(")")
        elif c == "[":
            self.i += 1
            a = self.product(stop=",")
            self.expect(",")
            b = self.product(stop="]")
            self.expect("]")
            base = commutator(a, b)
        elif c == "1" and not self._gen_here():
            self.i += 1
            base = Word()
        else:
            m = self.gen_re.match(self.s, self.i) if self.gen_re else None
            if not m:
                self.error("unknown symbol")
            self.i = m.end()
            base = Word.gen(m.group(0))
        return base ** self.exponent()

    def _gen_here(self):
        return bool(self.gen_re and self.gen_re.match(self.s, self.i))

    def expect(self, ch):
        self.skip()
        if self.i >= len(self.s) or self.s[self.i] != ch:
            self.error(f"expected {ch!r}")
        self.i += 1

    def exponent(self) -> int:
        if self.i >= len(self.s) or self.s[self.i] != "^":
            return 1
        self.i += 1
        m = re.compile(r"\{\s*(-?\s*\d+)\s*\}|\(\s*(-?\s*\d+)\s*\)|(-?\d+)").match(self.s, self.i)
        if not m:
            self.error("malformed exponent")
        self.i = m.end()
        txt = next(g for g in m.groups() if g is not None)
        return int(txt.replace(" ", ""))


# ---------------------------------------------------------------------------
# presentation files
# ---------------------------------------------------------------------------


@dataclass
class PresentationFile:
    presentation: FpPresentation
    subgroups: dict[str, list[Word]]
    words: dict[str, Word]


def read_presentation_text(text: str) -> PresentationFile:
    """Plain-text format::

        gens: z b
        rel: z^7
        rel: (b^{-2}z)^3
        sub X: b^3; zb^3z; bz^2b^{-1}z
        word t1: b^3
    """
    gens: list[str] | None = None
    rels: list[str] = []
    subs: dict[str, list[str]] = {}
    words: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, val = line.partition(":")
        key = key.strip()
        val = val.strip()
        if key == "gens":
            gens = val.replace(",", " ").split()
        elif key == "rel":
            rels.append(val)
        elif key.startswith("sub "):
            subs[key[4:].strip()] = [v.strip() for v in val.split(";") if v.strip()]
        elif key.startswith("word "):
            words[key[5:].strip()] = val
        else:
            raise WordError(f"line {lineno}: unknown entry {key!r}")
    if gens is None:
        raise WordError("missing 'gens:' line")
    pres = FpPresentation(gens, [parse_word(r, gens) for r in rels])
    return PresentationFile(
        pres,
        {k: [parse_word(w, gens) for w in v] for k, v in subs.items()},
        {k: parse_word(v, gens) for k, v in words.items()},
    )


def format_presentation(pres: FpPresentation, subgroups: dict[str, list[Word]] | None = None) -> str:
    lines = ["gens: " + " ".join(pres.generators)]
    lines += [f"rel: {r}" for r in pres.relators]
    for name, ws in (subgroups or {}).items():
        lines.append(f"sub {name}: " + "; ".join(map(str, ws)))
    return "\n".join(lines) + "\n"
