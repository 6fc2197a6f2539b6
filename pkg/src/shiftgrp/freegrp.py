"""Free-group words and endomorphisms, folded subgroup graphs, positive
basis reduction, and abelianization matrices with their idempotent powers.

Group words are freely reduced sequences of (generator, +-1) syllables;
generator names are arbitrary nonempty strings, so the words of a code can
serve directly as generators.  Subgroups are represented by their folded
core graphs, canonically relabeled so that graph equality is value equality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .codes import Code
from .errors import InputError, StructuralError


@dataclass(frozen=True)
class GroupWord:
    """Freely reduced word over generators and their inverses."""

    syllables: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for g, e in self.syllables:
            if e not in (1, -1) or not g:
                raise InputError("bad syllable (%r, %r)" % (g, e))
        for (g1, e1), (g2, e2) in zip(self.syllables, self.syllables[1:]):
            if g1 == g2 and e1 == -e2:
                raise InputError("word is not freely reduced at %r" % (g1,))

    @staticmethod
    def reduce(items: Iterable[tuple[str, int]]) -> "GroupWord":
        """Freely reduced form of a raw syllable sequence; the normal form
        is unique."""
        stack: list[tuple[str, int]] = []
        for g, e in items:
            if e not in (1, -1) or not g:
                raise InputError("bad syllable (%r, %r)" % (g, e))
            if stack and stack[-1][0] == g and stack[-1][1] == -e:
                stack.pop()
            else:
                stack.append((g, e))
        return GroupWord(tuple(stack))

    @classmethod
    def positive(cls, letters: Iterable[str]) -> "GroupWord":
        """Positive word; a plain string is read letter by letter."""
        return cls.reduce((g, 1) for g in letters)

    @classmethod
    def from_tokens(cls, text: str) -> "GroupWord":
        """Parse whitespace-separated generator tokens, inverses marked by
        a ^-1 suffix: "γ β α^-1 γ α β"."""
        items = []
        for tok in text.split():
            if tok.endswith("^-1"):
                name = tok[:-3]
                if not name:
                    raise InputError("empty generator in token %r" % (tok,))
                items.append((name, -1))
            elif "^" in tok:
                raise InputError("unsupported exponent in token %r" % (tok,))
            else:
                items.append((tok, 1))
        return cls.reduce(items)

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    @property
    def is_positive(self) -> bool:
        return all(e == 1 for _, e in self.syllables)

    def __len__(self) -> int:
        return len(self.syllables)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord.reduce(self.syllables + other.syllables)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.syllables)))

    def generators_used(self) -> set[str]:
        return {g for g, _ in self.syllables}

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(g if e == 1 else g + "^-1" for g, e in self.syllables)


IDENTITY_WORD = GroupWord(())


@dataclass(frozen=True)
class FreeEndo:
    """Homomorphism of free groups given by generator images; an
    endomorphism when every image stays over the same generators."""

    generators: tuple[str, ...]
    images: tuple[GroupWord, ...]

    def __post_init__(self):
        if len(self.generators) != len(set(self.generators)):
            raise InputError("duplicate generators: %r" % (self.generators,))
        if len(self.images) != len(self.generators):
            raise InputError("need one image per generator")

    @classmethod
    def make(cls, mapping: Mapping[str, GroupWord | str],
             generators: Sequence[str] | None = None) -> "FreeEndo":
        gens = tuple(generators) if generators is not None else tuple(sorted(mapping))
        images = []
        for g in gens:
            img = mapping[g]
            images.append(GroupWord.from_tokens(img) if isinstance(img, str) else img)
        return cls(gens, tuple(images))

    @classmethod
    def identity(cls, generators: Sequence[str]) -> "FreeEndo":
        return cls(tuple(generators), tuple(GroupWord(((g, 1),)) for g in generators))

    @cached_property
    def table(self) -> dict[str, GroupWord]:
        return dict(zip(self.generators, self.images))

    def image(self, g: str) -> GroupWord:
        try:
            return self.table[g]
        except KeyError:
            raise InputError("generator %r not in %r" % (g, self.generators)) from None

    @property
    def is_endomorphism(self) -> bool:
        gens = set(self.generators)
        return all(w.generators_used() <= gens for w in self.images)

    def as_dict(self) -> dict:
        return {"generators": list(self.generators),
                "images": {g: str(w) for g, w in zip(self.generators, self.images)}}


def endo_apply(endo: FreeEndo, w: GroupWord) -> GroupWord:
    """Homomorphic extension to a reduced word."""
    out: list[tuple[str, int]] = []
    for g, e in w.syllables:
        img = endo.image(g)
        out.extend(img.syllables if e == 1 else img.inverse().syllables)
    return GroupWord.reduce(out)


def endo_compose(outer: FreeEndo, inner: FreeEndo) -> FreeEndo:
    """The homomorphism x |-> outer(inner(x)) on inner's generators."""
    return FreeEndo(inner.generators,
                    tuple(endo_apply(outer, w) for w in inner.images))


def endo_power(endo: FreeEndo, k: int) -> FreeEndo:
    if k < 0:
        raise InputError("exponent must be >= 0")
    if not endo.is_endomorphism:
        raise InputError("cannot iterate: images leave the generator set")
    out = FreeEndo.identity(endo.generators)
    for _ in range(k):
        out = endo_compose(endo, out)
    return out


# ---------------------------------------------------------------------------
# Folded subgroup graphs


@dataclass(frozen=True)
class SubgroupGraph:
    """Folded core graph of a finitely generated subgroup of a free group.

    Vertices are 0..n-1 with base 0; edges carry positive letters and are
    deterministic in both directions.  Vertices are relabeled by a fixed
    breadth-first rule, so equal subgroups yield equal values.
    """

    alphabet: tuple[str, ...]
    n_vertices: int
    edges: tuple[tuple[int, str, int], ...]

    @cached_property
    def out(self) -> dict[tuple[int, str], int]:
        table = {}
        for u, letter, v in self.edges:
            if (u, letter) in table:
                raise StructuralError("graph is not folded on out-edges")  # pragma: no cover
            table[(u, letter)] = v
        return table

    @cached_property
    def inn(self) -> dict[tuple[int, str], int]:
        table = {}
        for u, letter, v in self.edges:
            if (v, letter) in table:
                raise StructuralError("graph is not folded on in-edges")  # pragma: no cover
            table[(v, letter)] = u
        return table

    @property
    def rank(self) -> int:
        return len(self.edges) - self.n_vertices + 1

    @property
    def is_whole_group(self) -> bool:
        return (self.n_vertices == 1
                and {letter for _, letter, _ in self.edges} == set(self.alphabet))

    def membership(self, w: "GroupWord | tuple[tuple[str, int], ...]") -> bool:
        """True iff the word traces a loop at the base vertex."""
        v = 0
        out, inn = self.out, self.inn
        for g, e in (w.syllables if isinstance(w, GroupWord) else w):
            if g not in self.alphabet:
                raise InputError("letter %r not in ambient alphabet" % (g,))
            v = (out if e == 1 else inn).get((v, g))
            if v is None:
                return False
        return v == 0

    def basis(self) -> tuple[GroupWord, ...]:
        """Free basis from a spanning tree: one word per non-tree edge."""
        parent_word = {0: IDENTITY_WORD}
        tree_edges: set[tuple[int, str, int]] = set()
        queue = [0]
        while queue:
            v = queue.pop(0)
            for letter in self.alphabet:
                w = self.out.get((v, letter))
                if w is not None and w not in parent_word:
                    parent_word[w] = parent_word[v] * GroupWord(((letter, 1),))
                    tree_edges.add((v, letter, w))
                    queue.append(w)
                w = self.inn.get((v, letter))
                if w is not None and w not in parent_word:
                    parent_word[w] = parent_word[v] * GroupWord(((letter, -1),))
                    tree_edges.add((w, letter, v))
                    queue.append(w)
        out = []
        for u, letter, v in self.edges:
            if (u, letter, v) not in tree_edges:
                word = parent_word[u] * GroupWord(((letter, 1),)) * parent_word[v].inverse()
                out.append(word)
        return tuple(out)


def _as_group_words(generators: Iterable[GroupWord | str]) -> list[GroupWord]:
    out = []
    for g in generators:
        out.append(GroupWord.positive(g) if isinstance(g, str) else g)
    return out


def fold(generators: Iterable[GroupWord | str],
         alphabet: Sequence[str]) -> SubgroupGraph:
    """Stallings folding of the bouquet of the given reduced words.

    Repeatedly identifies the endpoints of equally labeled edges sharing a
    source or a target, prunes non-base vertices of degree one, and
    relabels breadth-first from the base with edge letters visited in
    alphabet order (outgoing before incoming).
    """
    alphabet = tuple(alphabet)
    if len(alphabet) != len(set(alphabet)):
        raise InputError("duplicate letters in alphabet")
    words = [w for w in _as_group_words(generators) if not w.is_identity]
    for w in words:
        extra = w.generators_used() - set(alphabet)
        if extra:
            raise InputError("generators use letters %r outside the alphabet" % (sorted(extra),))

    edges: list[tuple[int, str, int]] = []
    n = 1
    for w in words:
        cur = 0
        for i, (g, e) in enumerate(w.syllables):
            nxt = 0 if i == len(w.syllables) - 1 else n
            if i < len(w.syllables) - 1:
                n += 1
            edges.append((cur, g, nxt) if e == 1 else (nxt, g, cur))
            cur = nxt

    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> bool:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        # keep the base vertex as a root
        if ry == 0 or (rx != 0 and ry < rx):
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    changed = True
    while changed:
        changed = False
        by_source: dict[tuple[int, str], int] = {}
        by_target: dict[tuple[int, str], int] = {}
        for u, g, v in edges:
            ru, rv = find(u), find(v)
            other = by_source.get((ru, g))
            if other is None:
                by_source[(ru, g)] = rv
            elif find(other) != rv:
                union(other, rv)
                changed = True
            other = by_target.get((rv, g))
            if other is None:
                by_target[(rv, g)] = ru
            elif find(other) != ru:
                union(other, ru)
                changed = True

    folded = {(find(u), g, find(v)) for u, g, v in edges}

    # core: prune non-base leaves
    degree: dict[int, int] = {}
    for u, g, v in folded:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    pruning = True
    while pruning:
        pruning = False
        for u, g, v in list(folded):
            for leaf, keep in ((u, v), (v, u)):
                if leaf != 0 and degree.get(leaf, 0) == 1:
                    folded.discard((u, g, v))
                    degree[leaf] -= 1
                    degree[keep] -= 1
                    pruning = True
                    break

    return _canonicalize(folded, alphabet)


def _canonicalize(edge_set: set[tuple[int, str, int]],
                  alphabet: tuple[str, ...]) -> SubgroupGraph:
    out = {(u, g): v for u, g, v in edge_set}
    inn = {(v, g): u for u, g, v in edge_set}
    label = {0: 0}  # the base vertex survives folding and pruning
    order = [0]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for g in alphabet:
            for table in (out, inn):
                w = table.get((v, g))
                if w is not None and w not in label:
                    label[w] = len(order)
                    order.append(w)
    edges = tuple(sorted((label[u], g, label[v]) for u, g, v in edge_set
                         if u in label and v in label))
    return SubgroupGraph(alphabet, max(len(label), 1), edges)


def membership(graph: SubgroupGraph, w: GroupWord) -> bool:
    return graph.membership(w)


def subgroup_rank(graph: SubgroupGraph) -> int:
    return graph.rank


def is_whole_group(graph: SubgroupGraph) -> bool:
    return graph.is_whole_group


def is_automorphism(endo: FreeEndo) -> bool:
    """Surjectivity of the induced endomorphism; free groups of finite rank
    are Hopfian, so surjective implies bijective."""
    return fold(endo.images, endo.generators).is_whole_group


# ---------------------------------------------------------------------------
# Positive basis reduction


@dataclass(frozen=True)
class PositiveReduction:
    words: tuple[str, ...]
    is_basis: bool


def positive_basis_reduction(xs: Iterable[str],
                             alphabet: Sequence[str] | None = None) -> PositiveReduction:
    """Exhaustively replace a word by its remainder whenever another member
    is a proper prefix or suffix of it; the total length strictly drops, so
    the process terminates.  The flag reports whether the irreducible set is
    a free basis of the subgroup it generates (it need not be when the
    original set was not part of a positive automorphism image)."""
    cur = set(xs)
    if not cur or any(not w for w in cur):
        raise InputError("positive words required")
    changed = True
    while changed:
        changed = False
        for u in sorted(cur, key=lambda w: (-len(w), w)):
            for x in sorted(cur, key=lambda w: (len(w), w)):
                if x == u or len(x) >= len(u):
                    continue
                if u.startswith(x):
                    cur.remove(u)
                    cur.add(u[len(x):])
                    changed = True
                    break
                if u.endswith(x):
                    cur.remove(u)
                    cur.add(u[:-len(x)])
                    changed = True
                    break
            if changed:
                break
    words = tuple(sorted(cur, key=lambda w: (len(w), w)))
    letters = tuple(alphabet) if alphabet is not None else tuple(sorted({c for w in words for c in w}))
    graph = fold(words, letters)
    return PositiveReduction(words, graph.rank == len(words))


def code_transform(code: Code, c: str, d: str) -> tuple[Code, FreeEndo]:
    """Replace d by cd in the code and return the isomorphism of free groups
    that sends d to c^-1 . (cd) and fixes every other generator."""
    if c == d:
        raise InputError("the two code words must be distinct")
    if c not in code.words or d not in code.words:
        raise InputError("both words must belong to the code")
    cd = c + d
    remaining = [w for w in code.words if w != d]
    if cd in remaining:
        raise StructuralError("transformed word %r collides with the code" % (cd,))
    new_code = Code.make(remaining + [cd])
    images = {w: GroupWord(((w, 1),)) for w in remaining}
    images[d] = GroupWord(((c, -1), (cd, 1)))
    eps = FreeEndo.make(images, generators=code.words)
    return new_code, eps


# ---------------------------------------------------------------------------
# Abelianization


def _require_prime(p: int) -> None:
    if p < 2 or any(p % q == 0 for q in range(2, int(math.isqrt(p)) + 1)):
        raise InputError("%r is not prime" % (p,))


def abelianization_matrix(endo: FreeEndo, p: int = 0) -> np.ndarray:
    """Column j is the exponent-sum vector of the image of generator j,
    over the integers (p = 0) or mod a prime p."""
    if p != 0:
        _require_prime(p)
    n = len(endo.generators)
    idx = {g: i for i, g in enumerate(endo.generators)}
    m = np.zeros((n, n), dtype=np.int64)
    for j, w in enumerate(endo.images):
        for g, e in w.syllables:
            if g not in idx:
                raise InputError("image uses %r outside the generator set" % (g,))
            m[idx[g], j] += e
    return m % p if p else m


@dataclass(frozen=True)
class MatrixOmegaPower:
    matrix: np.ndarray
    exponent: int
    period: int
    preperiod: int


def matrix_omega_power(m: np.ndarray, p: int) -> MatrixOmegaPower:
    """Idempotent power of a square matrix in the finite monoid of matrices
    mod a prime p, via cycle detection on the power sequence."""
    _require_prime(p)
    m = np.asarray(m, dtype=np.int64) % p
    powers = [m]
    seen = {m.tobytes(): 1}
    while True:
        nxt = (powers[-1] @ m) % p
        key = nxt.tobytes()
        if key in seen:
            pre = seen[key]
            period = len(powers) + 1 - pre
            k = period * math.ceil(max(pre, 1) / period)
            e = powers[k - 1]
            if ((e @ e) % p != e).any():
                raise StructuralError("omega power is not idempotent")  # pragma: no cover
            return MatrixOmegaPower(e, k, period, pre)
        seen[key] = len(powers) + 1
        powers.append(nxt)


def rank_mod_p(m: np.ndarray, p: int) -> int:
    """Rank over the field with p elements by Gaussian elimination."""
    _require_prime(p)
    a = (np.asarray(m, dtype=np.int64) % p).tolist()
    rows, cols = len(a), len(a[0]) if a else 0
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r][col] % p), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = pow(a[rank][col], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for r in range(rows):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank
