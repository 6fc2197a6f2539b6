"""The dual transformation on letter-to-group maps and the finite-image
decision procedure.

For a substitution or free-group endomorphism t and a finite group S, the
dual transformation sends f: letters -> S to the map evaluating each letter
image under the homomorphic extension of f.  A finite group is a continuous
image of the presented group exactly when some generating f is periodic
under this transformation; periodicity is decided by scanning the
functional graph on all |S|^|letters| maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InputError, ResourceLimitError
from .fingrp import EvalMap, FiniteGroup, closure, evaluate, generates, group_rank
from .freegrp import FreeEndo, abelianization_matrix, matrix_omega_power, rank_mod_p
from .words import Substitution, orbit_idempotent

ENUMERATION_CAP = 10_000_000


def _letter_images(target) -> tuple[tuple[str, ...], tuple[tuple[tuple[str, int], ...], ...]]:
    """Common view of a substitution or endomorphism: generator letters and
    their images as syllable sequences."""
    if isinstance(target, Substitution):
        letters = target.alphabet.letters
        return letters, tuple(tuple((c, 1) for c in w) for w in target.images)
    if isinstance(target, FreeEndo):
        return target.generators, tuple(w.syllables for w in target.images)
    raise InputError("expected a Substitution or FreeEndo, got %r" % (type(target),))


def bar_map(target, group: FiniteGroup, f: EvalMap) -> EvalMap:
    """One step of the dual transformation: evaluate every letter image."""
    letters, images = _letter_images(target)
    if f.letters != letters:
        raise InputError("map domain %r does not match %r" % (f.letters, letters))
    table = dict(zip(letters, f.images))
    out = []
    for syllables in images:
        acc = group.identity
        for g, e in syllables:
            x = table[g]
            if e == -1:
                x = group.inverse(x)
            acc = group.mul(acc, x)
        out.append(acc)
    return EvalMap(letters, group, tuple(out))


@dataclass(frozen=True)
class OrbitOmega:
    """Idempotent-power point of a dual-transformation orbit."""

    map: EvalMap
    exponent: int
    period: int
    preperiod: int


def orbit_omega(target, group: FiniteGroup, f: EvalMap) -> OrbitOmega:
    """Iterate the dual transformation from f to its idempotent-power point:
    the k-th iterate for the least k >= max(preperiod, 1) divisible by the
    detected cycle length."""
    letters, images = _letter_images(target)
    if f.letters != letters:
        raise InputError("map domain %r does not match %r" % (f.letters, letters))

    def step(t: tuple[int, ...]) -> tuple[int, ...]:
        return bar_map(target, group, EvalMap(letters, group, t)).images

    value, k, period, pre = orbit_idempotent(step, f.images)
    return OrbitOmega(EvalMap(letters, group, value), k, period, pre)


@dataclass(frozen=True)
class Witness:
    """A generating periodic point of the dual transformation."""

    map: EvalMap
    period: int

    def as_dict(self) -> dict:
        return {"images": dict(zip(self.map.letters, self.map.as_names())),
                "period": self.period}


def _compiled_step(target, group: FiniteGroup):
    """letters, and a step function on image tuples, with letter lookups
    resolved to positions once."""
    letters, images = _letter_images(target)
    pos = {c: i for i, c in enumerate(letters)}
    for syll in images:
        for g, _ in syll:
            if g not in pos:
                raise InputError("image letter %r outside the generator set" % (g,))
    compiled = tuple(tuple((pos[g], e) for g, e in syll) for syll in images)
    mul, inv, ident = group.mult, group.inv, group.identity

    def step(t: tuple[int, ...]) -> tuple[int, ...]:
        out = []
        for syll in compiled:
            acc = ident
            for i, e in syll:
                x = t[i]
                if e == -1:
                    x = inv[x]
                acc = mul[acc][x]
            out.append(acc)
        return tuple(out)

    return letters, step


def is_image(target, group: FiniteGroup,
             enumeration_cap: int = ENUMERATION_CAP) -> Witness | None:
    """Decide whether the finite group is an image of the group presented by
    the idempotent power of the target's induced endomorphism.

    Scans the whole functional graph of the dual transformation, marking
    the maps that lie on cycles, then returns the lexicographically least
    generating periodic map together with its exact period; None when no
    periodic map generates.
    """
    letters, step = _compiled_step(target, group)
    n = group.order
    total = n ** len(letters)
    if total > enumeration_cap:
        raise ResourceLimitError(
            "|S|^|letters| = %d exceeds the enumeration cap %d" % (total, enumeration_cap))

    strides = [n ** (len(letters) - 1 - i) for i in range(len(letters))]

    def decode(v: int) -> tuple[int, ...]:
        return tuple((v // s) % n for s in strides)

    def encode(t: tuple[int, ...]) -> int:
        v = 0
        for x in t:
            v = v * n + x
        return v

    def next_node(v: int) -> int:
        return encode(step(decode(v)))

    UNKNOWN, ON_PATH, TRANSIENT, PERIODIC = 0, 1, 2, 3
    status = bytearray(total)
    for start in range(total):
        if status[start]:
            continue
        path: list[int] = []
        pos: dict[int, int] = {}
        v = start
        while status[v] == UNKNOWN:
            status[v] = ON_PATH
            pos[v] = len(path)
            path.append(v)
            v = next_node(v)
        if status[v] == ON_PATH:
            cut = pos[v]
            for u in path[cut:]:
                status[u] = PERIODIC
            for u in path[:cut]:
                status[u] = TRANSIENT
        else:
            for u in path:
                status[u] = TRANSIENT

    generating_sets: dict[frozenset[int], bool] = {}
    for v in range(total):
        if status[v] != PERIODIC:
            continue
        digits = decode(v)
        key = frozenset(digits)
        ok = generating_sets.get(key)
        if ok is None:
            ok = generates(group, digits)
            generating_sets[key] = ok
        if not ok:
            continue
        period, u = 1, next_node(v)
        while u != v:
            u = next_node(u)
            period += 1
        return Witness(EvalMap(letters, group, digits), period)
    return None


# ---------------------------------------------------------------------------
# Abelianized quotients


def abelian_rank(endo: FreeEndo, p: int) -> int:
    """Rank of the largest elementary abelian p quotient of the presented
    group: |X| minus the mod-p rank of (M^omega - I) for the abelianized
    image matrix M."""
    m = abelianization_matrix(endo, p)
    omega = matrix_omega_power(m, p)
    n = len(endo.generators)
    delta = (omega.matrix - np.eye(n, dtype=np.int64)) % p
    return n - rank_mod_p(delta, p)


def kp_iterate_check(p: int, n: int, endo: FreeEndo | None = None) -> bool:
    """Closed-form check for the commutative exponent-p quotient of the
    three-generator endomorphism, with the last two generators identified.

    Working in C_p x C_p with x = (1,0), y = (0,1), the n-th dual iterate of
    (x, y, y) must equal (x . y^(2(4^n - 1)/3), y^(4^n), y^(4^n))."""
    if n < 0:
        raise InputError("n must be >= 0")
    if endo is None:
        from .pipeline import reduced_three_generator_endo
        endo = reduced_three_generator_endo()
    from .fingrp import elem_abelian
    group = elem_abelian(p, 2)
    x = group.element("g1")
    y = group.element("g2")
    f = EvalMap(endo.generators, group, (x, y, y))
    for _ in range(n):
        f = bar_map(endo, group, f)
    e1 = 2 * (4 ** n - 1) // 3
    e2 = 4 ** n
    def pw(base: int, k: int) -> int:
        acc = group.identity
        for _ in range(k % _element_order(group, base)):
            acc = group.mul(acc, base)
        return acc
    expected = (group.mul(x, pw(y, e1)), pw(y, e2), pw(y, e2))
    return f.images == expected


def _element_order(group: FiniteGroup, x: int) -> int:
    acc, k = x, 1
    while acc != group.identity:
        acc = group.mul(acc, x)
        k += 1
    return k


# ---------------------------------------------------------------------------
# Catalog survey


@dataclass(frozen=True)
class SurveyRow:
    group: str
    verdict: str  # "image" | "not-image" | "resource-limit"
    witness: Witness | None = None
    rank: int | None = None
    error: str | None = None

    def as_dict(self) -> dict:
        out = {"group": self.group, "verdict": self.verdict,
               "witness": self.witness.as_dict() if self.witness else None,
               "rank": self.rank}
        if self.error:
            out["error"] = self.error
        return out


@dataclass(frozen=True)
class SurveyReport:
    rows: tuple[SurveyRow, ...]
    rank_lower_bound: int

    def as_dict(self) -> dict:
        return {"rows": [r.as_dict() for r in self.rows],
                "rank_lower_bound": self.rank_lower_bound}


def image_survey(target, catalog: Iterable[FiniteGroup],
                 enumeration_cap: int = ENUMERATION_CAP,
                 rank_cap: int = 360) -> SurveyReport:
    """Per-group image verdicts with witnesses; the maximum rank over the
    confirmed images is a lower bound for the rank of the presented group.
    Per-entry resource errors are reported inline, never raised."""
    rows = []
    bound = 0
    for group in catalog:
        try:
            witness = is_image(target, group, enumeration_cap)
        except ResourceLimitError as exc:
            rows.append(SurveyRow(group.label, "resource-limit", error=str(exc)))
            continue
        if witness is None:
            rows.append(SurveyRow(group.label, "not-image"))
            continue
        try:
            rank = group_rank(group, rank_cap)
        except ResourceLimitError:
            rank = None
        rows.append(SurveyRow(group.label, "image", witness, rank))
        if rank is not None:
            bound = max(bound, rank)
    return SurveyReport(tuple(rows), bound)
