"""Todd-Coxeter coset enumeration (HLT with lookahead, or Felsch)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .words import FpPresentation, SubgroupSpec, Word

DEFAULT_LIMIT = 10**6


class EnumerationOverflow(RuntimeError):
    """Coset budget exhausted before the table closed."""


def letters_to_columns(word: Word, gens: list[str]) -> list[int]:
    """Column indices: generator i is column 2i, its inverse 2i+1."""
    index = {g: i for i, g in enumerate(gens)}
    cols = []
    for g, e in word.letters:
        c = 2 * index[g] + (0 if e > 0 else 1)
        cols.extend([c] * abs(e))
    return cols


@dataclass
class CosetTable:
    """Complete (or overflowed) coset table; coset 0 is the subgroup itself.

    ``rows[c][2i]`` is c*g_i and ``rows[c][2i+1]`` is c*g_i^-1.
    """

    generators: list[str]
    rows: list[list[int]]
    status: str = "complete"
    defined: int = 0  # total cosets defined during enumeration
    strategy: str = "hlt"
    relator_cols: list[list[int]] = field(default_factory=list)
    subgroup_cols: list[list[int]] = field(default_factory=list)

    @property
    def index(self) -> int:
        return len(self.rows)

    def is_complete(self) -> bool:
        return self.status == "complete"

    def act(self, coset: int, word: Word) -> int:
        for c in letters_to_columns(word, self.generators):
            coset = self.rows[coset][c]
        return coset

    def act_cols(self, coset: int, cols) -> int:
        for c in cols:
            coset = self.rows[coset][c]
        return coset

    def permutation(self, gen_index: int) -> tuple[int, ...]:
        return tuple(row[2 * gen_index] for row in self.rows)

    def check(self, relators: list[Word] | None = None) -> list[str]:
        """Return a list of problems (empty when the table is closed and sane)."""
        problems = []
        n = self.index
        ncols = 2 * len(self.generators)
        for c, row in enumerate(self.rows):
            for x in range(ncols):
                d = row[x]
                if not (0 <= d < n):
                    problems.append(f"entry ({c},{x}) undefined")
                elif self.rows[d][x ^ 1] != c:
                    problems.append(f"entry ({c},{x}) not inverted")
        if problems:
            return problems
        rels = self.relator_cols if relators is None else [letters_to_columns(r, self.generators) for r in relators]
        for k, r in enumerate(rels):
            for c in range(n):
                if self.act_cols(c, r) != c:
                    problems.append(f"relator {k} is not closed at coset {c}")
                    break
        for k, w in enumerate(self.subgroup_cols):
            if self.act_cols(0, w) != 0:
                problems.append(f"subgroup word {k} does not fix coset 0")
        return problems


class _Enumerator:
    def __init__(self, ncols: int, relators: list[list[int]], subgroup: list[list[int]], limit: int):
        self.ncols = ncols
        self.rels = [r for r in relators if r]
        self.sub = [w for w in subgroup if w]
        self.limit = limit
        self.table: list[list[int]] = [[-1] * ncols]
        self.parent = [0]
        self.live = 1
        self.defined = 1
        self.queue: list[int] = []
        self.deductions: list[tuple[int, int]] = []
        self.record_deductions = False

    # union-find -------------------------------------------------------

    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    # basic operations ---------------------------------------------------

    def define(self, c: int, x: int) -> int:
        if self.live >= self.limit:
            raise EnumerationOverflow(f"coset budget {self.limit} exhausted")
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.defined += 1
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        if self.record_deductions:
            self.deductions.append((c, x))
        return d

    def assign(self, c: int, x: int, d: int):
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        if self.record_deductions:
            self.deductions.append((c, x))

    def merge(self, a: int, b: int):
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.live -= 1
        self.queue.append(b)

    def coincidence(self, a: int, b: int):
        self.merge(a, b)
        q = self.queue
        i = 0
        table = self.table
        while i < len(q):
            e = q[i]
            i += 1
            row = table[e]
            for x in range(self.ncols):
                d = row[x]
                if d < 0:
                    continue
                xi = x ^ 1
                if table[d][xi] == e:
                    table[d][xi] = -1
                mu = self.rep(e)
                nu = self.rep(d)
                if table[mu][x] >= 0:
                    self.merge(nu, table[mu][x])
                elif table[nu][xi] >= 0:
                    self.merge(mu, table[nu][xi])
                else:
                    self.assign(mu, x, nu)
        self.queue = []

    def scan_and_fill(self, a: int, w: list[int]):
        table = self.table
        f, b = a, a
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                self.assign(f, w[i], b)
                return
            self.define(f, w[i])

    def scan(self, a: int, w: list[int]):
        """Scan without defining; record a deduction or coincidence if found."""
        table = self.table
        f, b = a, a
        i, j = 0, len(w) - 1
        while i <= j and table[f][w[i]] >= 0:
            f = table[f][w[i]]
            i += 1
        if i > j:
            if f != a:
                self.coincidence(f, a)
            return
        while j >= i and table[b][w[j] ^ 1] >= 0:
            b = table[b][w[j] ^ 1]
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif j == i:
            self.assign(f, w[i], b)

    def lookahead(self):
        for c in range(len(self.table)):
            if not self.alive(c):
                continue
            for r in self.rels:
                if not self.alive(c):
                    break
                self.scan(c, r)

    # strategies -----------------------------------------------------------

    def run_hlt(self):
        for w in self.sub:
            self.scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            if self.alive(c):
                try:
                    for r in self.rels:
                        if not self.alive(c):
                            break
                        self.scan_and_fill(c, r)
                    if self.alive(c):
                        for x in range(self.ncols):
                            if self.table[c][x] < 0:
                                self.define(c, x)
                except EnumerationOverflow:
                    before = self.live
                    self.lookahead()
                    if self.live >= before or self.live >= self.limit:
                        raise
                    continue  # retry the same coset with the freed budget
            c += 1

    def run_felsch(self):
        self.record_deductions = True
        conj: list[list[list[int]]] = [[] for _ in range(self.ncols)]
        for r in self.rels:
            for k in range(len(r)):
                rot = r[k:] + r[:k]
                if rot not in conj[rot[0]]:
                    conj[rot[0]].append(rot)
        for w in self.sub:
            self.scan_and_fill(0, w)
        self.process_deductions(conj)
        c = 0
        while c < len(self.table):
            if self.alive(c):
                for x in range(self.ncols):
                    if self.alive(c) and self.table[c][x] < 0:
                        self.define(c, x)
                        self.process_deductions(conj)
            c += 1

    def process_deductions(self, conj):
        while self.deductions:
            a, x = self.deductions.pop()
            if not self.alive(a):
                continue
            for w in conj[x]:
                self.scan(a, w)
                if not self.alive(a):
                    break
            if not self.alive(a):
                continue
            b = self.table[a][x]
            if b >= 0 and self.alive(b):
                for w in conj[x ^ 1]:
                    self.scan(b, w)
                    if not self.alive(b):
                        break

    # output ---------------------------------------------------------------

    def compact_standard(self) -> list[list[int]]:
        """Renumber live cosets in breadth-first order from coset 0."""
        order = [0]
        index = {0: 0}
        k = 0
        while k < len(order):
            c = order[k]
            k += 1
            for x in range(self.ncols):
                d = self.table[c][x]
                if d >= 0:
                    d = self.rep(d)
                    if d not in index:
                        index[d] = len(order)
                        order.append(d)
        rows = []
        for c in order:
            row = []
            for x in range(self.ncols):
                d = self.table[c][x]
                row.append(index[self.rep(d)] if d >= 0 else -1)
            rows.append(row)
        return rows


def coset_enumerate(
    pres: FpPresentation,
    sub: SubgroupSpec | list[Word] | None = None,
    limit: int = DEFAULT_LIMIT,
    strategy: str = "hlt",
    raise_on_overflow: bool = False,
) -> CosetTable:
    """Enumerate the cosets of ``sub`` in the group presented by ``pres``.

    Words to be normally closed are enumerated as extra relators: the cosets
    of H in G coincide with those of H/N in G/N when N lies inside H, and the
    extra relators make every conjugate of N act trivially on each coset.
    """
    if limit <= 0:
        raise ValueError("coset limit must be positive")
    if sub is None:
        sub = SubgroupSpec([])
    elif not isinstance(sub, SubgroupSpec):
        sub = SubgroupSpec(list(sub))
    sub.validate(pres)
    gens = list(pres.generators)
    rel_cols = [letters_to_columns(r, gens) for r in pres.relators]
    closure_cols = [letters_to_columns(w, gens) for w in sub.closure_words()]
    sub_cols = [letters_to_columns(w, gens) for w in sub.plain_words()]
    en = _Enumerator(2 * len(gens), rel_cols + closure_cols, sub_cols, limit)
    if strategy not in ("hlt", "felsch"):
        raise ValueError(f"unknown strategy {strategy!r}")
    status = "complete"
    try:
        en.run_hlt() if strategy == "hlt" else en.run_felsch()
    except EnumerationOverflow:
        if raise_on_overflow:
            raise
        status = "overflow"
    rows = en.compact_standard()
    if status == "complete" and any(d < 0 for row in rows for d in row):
        status = "overflow"
    return CosetTable(
        gens,
        rows,
        status=status,
        defined=en.defined,
        strategy=strategy,
        relator_cols=rel_cols + closure_cols,
        subgroup_cols=sub_cols + closure_cols,
    )


def group_order(pres: FpPresentation, limit: int = DEFAULT_LIMIT, strategy: str = "hlt") -> int:
    table = coset_enumerate(pres, None, limit, strategy, raise_on_overflow=True)
    return table.index


def index(pres: FpPresentation, sub, limit: int = DEFAULT_LIMIT, strategy: str = "hlt") -> int:
    table = coset_enumerate(pres, sub, limit, strategy, raise_on_overflow=True)
    return table.index


def is_normal(pres: FpPresentation, sub, limit: int = DEFAULT_LIMIT, table: CosetTable | None = None) -> bool:
    """True iff g s g^-1 and g^-1 s g fix coset 0 for all generators g, s."""
    if not isinstance(sub, SubgroupSpec):
        sub = SubgroupSpec(list(sub))
    if table is None:
        table = coset_enumerate(pres, sub, limit, raise_on_overflow=True)
    if not table.is_complete():
        raise EnumerationOverflow("incomplete coset table")
    if sub.closure_mode == "normal-closure" and not sub.normal_words:
        return True
    words = list(sub.generator_words) if sub.closure_mode == "as-given" else []
    # normal-closure parts are normal by construction
    for s in words:
        s_cols = letters_to_columns(s, table.generators)
        for gi in range(len(table.generators)):
            for x in (2 * gi, 2 * gi + 1):
                # coset 0 * x * s * x^-1
                c = table.rows[0][x]
                c = table.act_cols(c, s_cols)
                c = table.rows[c][x ^ 1]
                if c != 0:
                    return False
    return True
