"""Small finite groups as explicit multiplication tables.

Elements are indices into a fixed enumeration: the identity comes first,
then the designated generators, then products in breadth-first closure
order.  Products compose left to right (in uv, u applies first); for
permutations this means (p * q)(x) = q(p(x)).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import InputError, ResourceLimitError, StructuralError
from .freegrp import GroupWord

MAX_CLOSURE = 100_000
RANK_ORDER_CAP = 360


class FiniteGroup:
    """Finite group with explicit multiplication and inverse tables."""

    def __init__(self, label: str, mult: Sequence[Sequence[int]],
                 names: Sequence[str], named: dict[str, int] | None = None):
        self.label = label
        self.mult = tuple(tuple(row) for row in mult)
        self.order = len(self.mult)
        self.names = tuple(names)
        self.named = dict(named or {})
        self.identity = 0
        if self.mult[0] != tuple(range(self.order)):
            raise InputError("element 0 must be the identity")
        inv = [None] * self.order
        for i, row in enumerate(self.mult):
            inv[i] = row.index(0)
        self.inv = tuple(inv)

    def mul(self, i: int, j: int) -> int:
        return self.mult[i][j]

    def inverse(self, i: int) -> int:
        return self.inv[i]

    def element(self, name: str) -> int:
        if name in self.named:
            return self.named[name]
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError("no element named %r in %s" % (name, self.label)) from None

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return "<FiniteGroup %s order %d>" % (self.label, self.order)


def _closure_group(label: str, identity, generators: Sequence[tuple[object, str]],
                   op: Callable, namer: Callable[[object], str],
                   max_order: int = MAX_CLOSURE) -> FiniteGroup:
    """Breadth-first closure of the generators; discovery order fixes the
    element enumeration (identity, generators, then products)."""
    elems = [identity]
    index = {identity: 0}
    gens = [g for g, _ in generators]
    i = 0
    while i < len(elems):
        x = elems[i]
        i += 1
        for g in gens:
            y = op(x, g)
            if y not in index:
                if len(elems) >= max_order:
                    raise ResourceLimitError(
                        "closure of %s exceeded cap %d" % (label, max_order))
                index[y] = len(elems)
                elems.append(y)
    mult = [[index[op(x, y)] for y in elems] for x in elems]
    names = [namer(x) for x in elems]
    named = {name: index[g] for g, name in generators if name}
    return FiniteGroup(label, mult, names, named)


# ---------------------------------------------------------------------------
# Constructors


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InputError("cyclic group order must be >= 1")
    mult = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["1"] + ["g" if k == 1 else "g^%d" % k for k in range(1, n)]
    named = {"g": 1} if n > 1 else {}
    return FiniteGroup("C%d" % n, mult, names, named)


def elem_abelian(p: int, k: int) -> FiniteGroup:
    """Direct power of the cyclic group of prime order p."""
    from .freegrp import _require_prime
    _require_prime(p)
    if k < 1:
        raise InputError("exponent must be >= 1")
    units = [tuple(int(i == j) for i in range(k)) for j in range(k)]
    return _closure_group(
        "C%d^%d" % (p, k), tuple([0] * k),
        [(u, "g%d" % (j + 1)) for j, u in enumerate(units)],
        lambda x, y: tuple((a + b) % p for a, b in zip(x, y)),
        lambda x: "(%s)" % ",".join(map(str, x)))


def perm_mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Left-to-right composition: p acts first."""
    return tuple(q[p[i]] for i in range(len(p)))


def perm_from_cycles(cycles: Iterable[Iterable[int]], degree: int) -> tuple[int, ...]:
    """Permutation from disjoint cycles in 1-based notation."""
    img = list(range(degree))
    for cycle in cycles:
        cycle = list(cycle)
        for a in cycle:
            if not 1 <= a <= degree:
                raise InputError("point %r outside 1..%d" % (a, degree))
        for i, a in enumerate(cycle):
            img[a - 1] = cycle[(i + 1) % len(cycle)] - 1
    return tuple(img)


def cycle_notation(p: tuple[int, ...]) -> str:
    seen: set[int] = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        part = []
        cur = i
        while cur not in seen:
            seen.add(cur)
            part.append(str(cur + 1))
            cur = p[cur]
        parts.append("(" + " ".join(part) + ")")
    return "".join(parts) if parts else "e"


def perm_group(perms: Sequence[tuple[int, ...]], label: str | None = None,
               max_order: int = MAX_CLOSURE) -> FiniteGroup:
    if not perms:
        raise InputError("need at least one generator permutation")
    degree = len(perms[0])
    for p in perms:
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise InputError("%r is not a permutation of 0..%d" % (p, degree - 1))
    return _closure_group(
        label or "perm<%s>" % ", ".join(cycle_notation(p) for p in perms),
        tuple(range(degree)),
        [(p, cycle_notation(p)) for p in perms],
        perm_mul, cycle_notation, max_order)


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        raise InputError("alternating group needs degree >= 3")
    three = perm_from_cycles([(1, 2, 3)], n)
    if n == 3:
        gens = [three]
    elif n % 2:
        gens = [three, perm_from_cycles([tuple(range(1, n + 1))], n)]
    else:
        gens = [three, perm_from_cycles([tuple(range(2, n + 1))], n)]
    return perm_group(gens, "A%d" % n)


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise InputError("symmetric group needs degree >= 1")
    if n == 1:
        return perm_group([(0,)], "S1")
    gens = [perm_from_cycles([(1, 2)], n)]
    if n > 2:
        gens.append(perm_from_cycles([tuple(range(1, n + 1))], n))
    return perm_group(gens, "S%d" % n)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    label = "%sx%s" % (g.label, h.label)
    order = g.order * h.order
    if order > MAX_CLOSURE:
        raise ResourceLimitError("direct product order %d exceeds cap" % order)
    mult = [[g.mul(a, c) * h.order + h.mul(b, d)
             for c in range(g.order) for d in range(h.order)]
            for a in range(g.order) for b in range(h.order)]
    names = ["(%s,%s)" % (g.names[a], h.names[b])
             for a in range(g.order) for b in range(h.order)]
    return FiniteGroup(label, mult, names)


def h18() -> FiniteGroup:
    """Order-18 semidirect product: C3 x C3 extended by an inverting
    involution.  Elements (i, j, e) multiply as
    (i, j, e)(i', j', e') = (i + (-1)^e i', j + (-1)^e j', e + e')."""
    def op(x, y):
        s = -1 if x[2] else 1
        return ((x[0] + s * y[0]) % 3, (x[1] + s * y[1]) % 3, (x[2] + y[2]) % 2)

    def namer(x):
        if x == (0, 0, 0):
            return "1"
        out = ""
        if x[0]:
            out += "b" if x[0] == 1 else "b^2"
        if x[1]:
            out += "c" if x[1] == 1 else "c^2"
        if x[2]:
            out += "a"
        return out

    return _closure_group("H18", (0, 0, 0),
                          [((0, 0, 1), "a"), ((1, 0, 0), "b"), ((0, 1, 0), "c")],
                          op, namer)


# ---------------------------------------------------------------------------
# Evaluation, generation, rank


@dataclass(frozen=True)
class EvalMap:
    """A choice of group element for every letter of a generator alphabet."""

    letters: tuple[str, ...]
    group: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.letters) != len(self.images):
            raise InputError("one image per letter required")

    def image(self, letter: str) -> int:
        try:
            return self.images[self.letters.index(letter)]
        except ValueError:
            raise InputError("letter %r not in domain" % (letter,)) from None

    def as_names(self) -> tuple[str, ...]:
        return tuple(self.group.names[i] for i in self.images)


def evaluate(w, f: EvalMap) -> int:
    """Left-to-right product of the letter images; group-word inverses are
    resolved through the inverse table."""
    group = f.group
    if isinstance(w, GroupWord):
        syllables: Iterable[tuple[str, int]] = w.syllables
    else:
        syllables = ((c, 1) for c in w)
    acc = group.identity
    for g, e in syllables:
        x = f.image(g)
        if e == -1:
            x = group.inverse(x)
        acc = group.mul(acc, x)
    return acc


def closure(group: FiniteGroup, elems: Iterable[int]) -> frozenset[int]:
    """Subgroup generated by the elements (multiplicative closure; finite,
    so inverses come for free)."""
    current = set(elems)
    current.add(group.identity)
    frontier = list(current)
    while frontier:
        x = frontier.pop()
        for y in tuple(current):
            for z in (group.mul(x, y), group.mul(y, x)):
                if z not in current:
                    current.add(z)
                    frontier.append(z)
    return frozenset(current)


def generates(group: FiniteGroup, elems: Iterable[int]) -> bool:
    return len(closure(group, elems)) == group.order


def group_rank(group: FiniteGroup, size_cap: int = RANK_ORDER_CAP) -> int:
    """Minimal size of a generating set, brute force by increasing size."""
    if group.order > size_cap:
        raise ResourceLimitError(
            "order %d exceeds the rank search cap %d" % (group.order, size_cap))
    if group.order == 1:
        return 0
    non_identity = range(1, group.order)
    for k in range(1, group.order + 1):
        for subset in itertools.combinations(non_identity, k):
            if generates(group, subset):
                return k
    raise StructuralError("no generating subset found")  # pragma: no cover
