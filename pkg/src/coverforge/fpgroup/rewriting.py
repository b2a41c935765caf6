"""Reidemeister-Schreier rewriting, Tietze simplification and abelianization."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exactalg.snf import abelian_invariants_sparse
from .todd_coxeter import CosetTable, DEFAULT_LIMIT, coset_enumerate
from .words import FpPresentation, SubgroupSpec, Word, commutator


@dataclass
class AbelianInvariants:
    torsion: list[int]
    free_rank: int

    def __post_init__(self):
        self.torsion = [int(d) for d in self.torsion if abs(d) != 1]
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariants {self.torsion} do not form a divisor chain")

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "trivial"


def abelian_invariants(pres: FpPresentation) -> AbelianInvariants:
    index = {g: i for i, g in enumerate(pres.generators)}
    rows = []
    for r in pres.relators:
        row: dict[int, int] = {}
        for g, e in r.letters:
            k = index[g]
            row[k] = row.get(k, 0) + e
        rows.append(row)
    torsion, free = abelian_invariants_sparse(rows, len(pres.generators))
    return AbelianInvariants(sorted(torsion), free)


# ---------------------------------------------------------------------------
# Reidemeister-Schreier
# ---------------------------------------------------------------------------


@dataclass
class SchreierData:
    """Spanning tree and Schreier generators attached to a coset table."""

    table: CosetTable
    transversal: list[list[int]]  # coset -> column word from coset 0
    tree: set  # (coset, gen index) edges used by the tree
    edges: list[tuple[int, int]]  # Schreier generator k <-> edge (coset, gen index)
    edge_index: dict = field(default_factory=dict)

    def generator_word(self, k: int) -> Word:
        """Ambient word rep(c) g rep(c*g)^-1 of Schreier generator k."""
        c, i = self.edges[k]
        gens = self.table.generators
        d = self.table.rows[c][2 * i]
        return _cols_to_word(self.transversal[c], gens) * Word.gen(gens[i]) * _cols_to_word(self.transversal[d], gens).inverse()

    def rewrite_cols(self, start: int, cols) -> list[int]:
        """Signed Schreier-generator letters (k+1 or -(k+1)) for a path."""
        rows = self.table.rows
        out = []
        c = start
        for x in cols:
            i = x >> 1
            if x & 1:
                d = rows[c][x]
                k = self.edge_index.get((d, i))
                if k is not None:
                    out.append(-(k + 1))
                c = d
            else:
                k = self.edge_index.get((c, i))
                if k is not None:
                    out.append(k + 1)
                c = rows[c][x]
        return _free_reduce(out)


def _cols_to_word(cols, gens) -> Word:
    return Word(tuple((gens[x >> 1], -1 if x & 1 else 1) for x in cols))


def schreier_data(table: CosetTable) -> SchreierData:
    if not table.is_complete():
        raise ValueError("coset table is incomplete")
    n = table.index
    ngens = len(table.generators)
    transversal: list[list[int] | None] = [None] * n
    transversal[0] = []
    tree = set()
    queue = [0]
    for c in queue:
        for x in range(2 * ngens):
            d = table.rows[c][x]
            if transversal[d] is None:
                transversal[d] = transversal[c] + [x]
                queue.append(d)
                # the edge is labelled by its positive generator and source coset
                tree.add((c, x >> 1) if not x & 1 else (d, x >> 1))
    edges = [(c, i) for c in range(n) for i in range(ngens) if (c, i) not in tree]
    data = SchreierData(table, transversal, tree, edges)
    data.edge_index = {e: k for k, e in enumerate(edges)}
    return data


def _free_reduce(letters: list[int]) -> list[int]:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return out


def _cyclic_reduce(letters: list[int]) -> list[int]:
    w = _free_reduce(letters)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i : j + 1]


def _int_word(letters: list[int], names: list[str]) -> Word:
    return Word(tuple((names[abs(a) - 1], 1 if a > 0 else -1) for a in letters))


@dataclass
class SubgroupPresentation:
    presentation: FpPresentation
    generator_words: list[Word]  # ambient words of the presentation generators
    schreier_count: int  # number of Schreier generators before simplification


def subgroup_presentation(
    pres: FpPresentation,
    table: CosetTable,
    simplify: bool = True,
    max_relator_length: int = 200,
) -> SubgroupPresentation:
    """Reidemeister-Schreier presentation of the coset-0 stabiliser.

    Relators are the ambient relators rewritten from every coset.  With
    ``simplify`` a best-effort Tietze pass removes generators; it never
    changes the group.
    """
    data = schreier_data(table)
    from .todd_coxeter import letters_to_columns

    rels = []
    for r in pres.relators:
        cols = letters_to_columns(r, pres.generators)
        for c in range(table.index):
            w = _cyclic_reduce(data.rewrite_cols(c, cols))
            if w:
                rels.append(w)
    ngen = len(data.edges)
    alive = list(range(1, ngen + 1))
    if simplify:
        alive, rels = tietze(alive, rels, max_relator_length)
    renumber = {g: k + 1 for k, g in enumerate(alive)}
    names = [f"s{k}" for k in range(len(alive))]
    out_rels = []
    for r in rels:
        w = [renumber[a] if a > 0 else -renumber[-a] for a in r]
        out_rels.append(_int_word(w, names))
    gen_words = [data.generator_word(g - 1) for g in alive]
    return SubgroupPresentation(FpPresentation(names, out_rels), gen_words, ngen)


def tietze(gens: list[int], rels: list[list[int]], max_len: int = 200, growth: float = 1.5):
    """Eliminate generators occurring exactly once in some relator.

    Candidates are tried shortest relator first.  A substitution is skipped
    when it would push a relator past ``max_len`` or the total relator length
    past ``growth`` times its initial value.  Returns the surviving
    generators and relators.
    """
    import heapq

    gens = list(gens)
    store: dict[int, tuple] = {}
    seen: set = set()
    occ: dict[int, set] = {}
    heap: list = []
    next_id = 0

    def add(w):
        nonlocal next_id
        t = tuple(w)
        if not t or t in seen:
            return
        seen.add(t)
        k = next_id
        next_id += 1
        store[k] = t
        counts: dict[int, int] = {}
        for a in t:
            g = abs(a)
            counts[g] = counts.get(g, 0) + 1
            occ.setdefault(g, set()).add(k)
        for g, c in counts.items():
            if c == 1:
                heapq.heappush(heap, (len(t), k, g))

    def remove(k):
        t = store.pop(k)
        seen.discard(t)
        for a in t:
            occ[abs(a)].discard(k)

    for r in rels:
        add(_cyclic_reduce(r))
    total = sum(len(t) for t in store.values())
    total_cap = growth * max(total, 1)

    while heap:
        _, k, g = heapq.heappop(heap)
        if k not in store:
            continue
        r = list(store[k])
        pos = next(i for i, a in enumerate(r) if abs(a) == g)
        u, v = r[:pos], r[pos + 1 :]
        if r[pos] > 0:  # u g v = 1, so g = u^-1 v^-1
            expr = _free_reduce([-a for a in reversed(u)] + [-a for a in reversed(v)])
        else:  # u g^-1 v = 1, so g = v u
            expr = _free_reduce(v + u)
        inv_expr = [-a for a in reversed(expr)]
        touched = [j for j in occ.get(g, ()) if j != k]
        replaced = []
        ok = True
        delta = -len(r)
        for j in touched:
            t = []
            for a in store[j]:
                if a == g:
                    t.extend(expr)
                elif a == -g:
                    t.extend(inv_expr)
                else:
                    t.append(a)
            t = _cyclic_reduce(t)
            if len(t) > max_len:
                ok = False
                break
            delta += len(t) - len(store[j])
            replaced.append(t)
        if not ok or total + delta > total_cap:
            continue
        remove(k)
        for j in touched:
            remove(j)
        for t in replaced:
            add(t)
        total += delta
        gens.remove(g)
    return gens, [list(store[k]) for k in sorted(store)]


def _dedupe(rels):
    seen = set()
    out = []
    for r in rels:
        key = tuple(r)
        if r and key not in seen:
            seen.add(key)
            out.append(r)
    return out


# ---------------------------------------------------------------------------
# derived subgroups
# ---------------------------------------------------------------------------


def subgroup_generators(pres: FpPresentation, table: CosetTable, simplify: bool = True) -> list[Word]:
    """Ambient words generating the coset-0 stabiliser (Schreier generators,
    optionally thinned by Tietze elimination)."""
    return subgroup_presentation(pres, table, simplify=simplify).generator_words


def derived_subgroup_spec(
    pres: FpPresentation,
    sub: SubgroupSpec,
    ambient_table: CosetTable | None = None,
    method: str = "schreier",
    limit: int = DEFAULT_LIMIT,
) -> SubgroupSpec:
    """Normal-closure spec whose closure is the derived subgroup of ``sub``.

    Commutators of a generating set of H generate H' as a normal subgroup of
    H.  Enumerating their normal closure in the ambient group gives H' exactly
    when H' is normal in the ambient group, which callers confirm by comparing
    indices: [G : closure] = [G : H] * |H^ab|.
    """
    if method == "given":
        gens = list(sub.generator_words)
    elif method == "schreier":
        if ambient_table is None:
            ambient_table = coset_enumerate(pres, sub, limit, raise_on_overflow=True)
        gens = subgroup_generators(pres, ambient_table)
    else:
        raise ValueError(f"unknown method {method!r}")
    comms = [commutator(gens[i], gens[j]) for i in range(len(gens)) for j in range(i + 1, len(gens))]
    comms = [c for c in comms if not c.is_identity()]
    return SubgroupSpec(comms, "normal-closure", name=(sub.name + "'") if sub.name else "")


# ---------------------------------------------------------------------------
# working inside a finite-index subgroup
# ---------------------------------------------------------------------------


@dataclass
class SubgroupContext:
    """A finite-index subgroup H of ``pres`` with its own presentation, and a
    map sending ambient words that lie in H to words in that presentation."""

    ambient: FpPresentation
    table: CosetTable
    data: SchreierData
    presentation: FpPresentation

    def contains(self, word: Word) -> bool:
        from .todd_coxeter import letters_to_columns

        return self.table.act_cols(0, letters_to_columns(word, self.ambient.generators)) == 0

    def rewrite(self, word: Word) -> Word:
        from .todd_coxeter import letters_to_columns

        if not self.contains(word):
            raise ValueError(f"{word} is not in the subgroup")
        cols = letters_to_columns(word, self.ambient.generators)
        return _int_word(self.data.rewrite_cols(0, cols), self.presentation.generators)

    def rewrite_spec(self, sub: SubgroupSpec) -> SubgroupSpec:
        """Translate a subgroup of the ambient group contained in H.

        Only plain generator words can be translated: a normal closure taken
        in the ambient group is generally larger than the one taken in H, so
        callers pass the stabiliser generators of the ambient enumeration."""
        if sub.closure_mode != "as-given" or sub.normal_words:
            raise ValueError("only as-given subgroups without extra normal words can be rewritten")
        return SubgroupSpec([self.rewrite(w) for w in sub.generator_words], "as-given", name=sub.name)


def subgroup_context(pres: FpPresentation, sub: SubgroupSpec, limit: int = DEFAULT_LIMIT) -> SubgroupContext:
    table = coset_enumerate(pres, sub, limit, raise_on_overflow=True)
    data = schreier_data(table)
    sp = subgroup_presentation(pres, table, simplify=False)
    return SubgroupContext(pres, table, data, sp.presentation)
