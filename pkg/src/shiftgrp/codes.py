"""Uniquely decodable codes: the Sardinas-Patterson test, unique
factorization, and a bounded verification of the delay property.

The delay property quantifies over an infinite family of equalities, so it
is only ever semi-verified here: the report carries the exact bounds used,
and a counterexample carries a replayable irreducible equality.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import FactorizationError, InputError
from .words import SubshiftLanguage


@dataclass(frozen=True)
class Code:
    """A finite set of nonempty words, kept sorted length-lexicographically."""

    words: tuple[str, ...]

    def __post_init__(self):
        if not self.words:
            raise InputError("a code must be nonempty")
        if len(set(self.words)) != len(self.words):
            raise InputError("duplicate words in code: %r" % (self.words,))
        if any(not w for w in self.words):
            raise InputError("code words must be nonempty")

    @classmethod
    def make(cls, ws: Iterable[str]) -> "Code":
        return cls(tuple(sorted(set(ws), key=lambda w: (len(w), w))))

    @cached_property
    def total_length(self) -> int:
        return sum(len(w) for w in self.words)

    @cached_property
    def by_length_desc(self) -> tuple[str, ...]:
        return tuple(sorted(self.words, key=lambda w: (-len(w), w)))

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)


@dataclass(frozen=True)
class Ambiguity:
    """A word with two distinct factorizations over the code."""

    word: str
    left: tuple[str, ...]
    right: tuple[str, ...]


@dataclass(frozen=True)
class CodeVerdict:
    is_code: bool
    witness: Ambiguity | None = None

    def __bool__(self) -> bool:
        return self.is_code


def is_code(code: Code) -> CodeVerdict:
    """Sardinas-Patterson test with witness reconstruction.

    States are dangling suffixes s together with the two partial
    factorizations (A, B) satisfying concat(A) + s == concat(B); reaching
    the empty suffix yields a word with two distinct factorizations.
    Termination: dangling suffixes are suffixes of code words, a finite set,
    and each is expanded once.
    """
    words = code.words
    queue: deque[tuple[str, tuple[str, ...], tuple[str, ...]]] = deque()
    seen: set[str] = set()
    for u in words:
        for v in words:
            if u != v and v.startswith(u):
                s = v[len(u):]
                if s not in seen:
                    seen.add(s)
                    queue.append((s, (u,), (v,)))
    while queue:
        s, left, right = queue.popleft()
        if not s:
            word = "".join(left)
            return CodeVerdict(False, Ambiguity(word, left, right))
        for c in words:
            if c.startswith(s):
                t = c[len(s):]
                if t not in seen or not t:
                    seen.add(t)
                    queue.append((t, right, left + (c,)))
            elif s.startswith(c):
                t = s[len(c):]
                if t not in seen or not t:
                    seen.add(t)
                    queue.append((t, left + (c,), right))
    return CodeVerdict(True)


def parse(code: Code, w: str) -> tuple[str, ...]:
    """The factorization of w over the code, longest prefix first with
    backtracking; unique when the code passes is_code."""
    if not w:
        raise InputError("cannot parse the empty word")
    candidates = code.by_length_desc
    dead: set[int] = set()  # positions with no completion
    path: list[str] = []
    iters = [iter(candidates)]
    pos = 0
    while True:
        if pos == len(w):
            return tuple(path)
        advanced = False
        for c in iters[-1]:
            nxt = pos + len(c)
            if nxt not in dead and w.startswith(c, pos):
                path.append(c)
                pos = nxt
                iters.append(iter(candidates))
                advanced = True
                break
        if advanced:
            continue
        dead.add(pos)
        iters.pop()
        if not path:
            raise FactorizationError(
                "word %r is not a product of code words %r" % (w, code.words))
        pos -= len(path.pop())


def factorization_count(code: Code, w: str) -> int:
    """Number of distinct factorizations of w over the code (may exceed 1
    for non-codes); dynamic programming over prefixes."""
    ways = [0] * (len(w) + 1)
    ways[0] = 1
    for k in range(1, len(w) + 1):
        ways[k] = sum(ways[k - len(c)] for c in code.words
                      if len(c) <= k and w.startswith(c, k - len(c)))
    return ways[len(w)]


def _all_factorizations(w: str, code: Code) -> tuple[tuple[str, ...], ...]:
    """Every factorization of w into code words, in sorted order."""
    n = len(w)
    table: list[list[tuple[str, ...]] | None] = [None] * (n + 1)
    table[n] = [()]

    def at(pos: int) -> list[tuple[str, ...]]:
        got = table[pos]
        if got is None:
            got = [(c,) + tail
                   for c in code.words if w.startswith(c, pos)
                   for tail in at(pos + len(c))]
            got.sort()
            table[pos] = got
        return got

    return tuple(at(0))


# ---------------------------------------------------------------------------
# Bounded-delay verification


@dataclass(frozen=True)
class DelayWitness:
    """An irreducible equality: both sides spell `word`, the left side is
    u . codes . (v) and the right side is codes (. v), and the two
    factorizations share no interior cut point."""

    word: str
    form: int  # 1: u c1..cm v = c'1..c'n ; 2: u c1..cm = c'1..c'n v
    u: str
    left_codes: tuple[str, ...]
    v: str
    right_codes: tuple[str, ...]

    @property
    def left_side(self) -> tuple[str, ...]:
        side = (self.u,) + self.left_codes
        return side + ((self.v,) if self.form == 1 else ())

    @property
    def right_side(self) -> tuple[str, ...]:
        return self.right_codes + (() if self.form == 1 else (self.v,))


@dataclass(frozen=True)
class DelayReport:
    verdict: str  # "verified_up_to_bound" | "counterexample"
    delay_bound: int
    length_bound: int
    witness: DelayWitness | None = None

    @property
    def verified(self) -> bool:
        return self.verdict == "verified_up_to_bound"

    def as_dict(self) -> dict:
        out = {"verdict": self.verdict, "delay_bound": self.delay_bound,
               "length_bound": self.length_bound}
        if self.witness is not None:
            out["witness"] = {
                "word": self.witness.word,
                "left": list(self.witness.left_side),
                "right": list(self.witness.right_side),
            }
        return out


def _reducible(left: Sequence[str], right: Sequence[str]) -> bool:
    """An equality of products reduces iff the two factorizations share an
    interior cut point, i.e. a common proper tail length."""
    def tails(side: Sequence[str]) -> set[int]:
        total = sum(len(x) for x in side)
        out = set()
        for x in side[:-1]:
            total -= len(x)
            out.add(total)
        return out

    return bool(tails(left) & tails(right))


def _language_words(language, length_bound: int) -> list[str]:
    if isinstance(language, SubshiftLanguage):
        return language.words_up_to(length_bound)
    return sorted((w for w in language if 0 < len(w) <= length_bound),
                  key=lambda w: (len(w), w))


def bounded_delay_check(code: Code, language, delay_bound: int,
                        length_bound: int) -> DelayReport:
    """Search for irreducible equalities with more than delay_bound code
    factors and sides of length at most length_bound.

    u ranges over nonempty suffixes and v over nonempty prefixes of code
    words (full code words included).  Words are scanned in sorted order,
    so a reported counterexample is the first in that order.
    """
    if delay_bound < 1:
        raise InputError("delay bound must be >= 1")
    suffixes = sorted({w[i:] for w in code.words for i in range(len(w))})
    prefixes = sorted({w[:i + 1] for w in code.words for i in range(len(w))})

    for w in _language_words(language, length_bound):
        pure = _all_factorizations(w, code)
        u_side = [(u, rest)
                  for u in suffixes if w.startswith(u)
                  for rest in (_all_factorizations(w[len(u):], code) if len(u) < len(w) else ((),))]
        v_side = [(lead, v)
                  for v in prefixes if w.endswith(v)
                  for lead in (_all_factorizations(w[:-len(v)], code) if len(v) < len(w) else ((),))]
        # form 1: u c1..cm v = c'1..c'n
        for u, mid_and_v in _uv_split(w, suffixes, prefixes, code):
            mid, v = mid_and_v
            for rhs in pure:
                if len(mid) + len(rhs) > delay_bound:
                    if not _reducible((u,) + mid + (v,), rhs):
                        return DelayReport("counterexample", delay_bound, length_bound,
                                           DelayWitness(w, 1, u, mid, v, rhs))
        # form 2: u c1..cm = c'1..c'n v
        for u, lhs in u_side:
            for rhs, v in v_side:
                if len(lhs) + len(rhs) > delay_bound:
                    if not _reducible((u,) + lhs, rhs + (v,)):
                        return DelayReport("counterexample", delay_bound, length_bound,
                                           DelayWitness(w, 2, u, lhs, v, rhs))
    return DelayReport("verified_up_to_bound", delay_bound, length_bound)


def _uv_split(w: str, suffixes: list[str], prefixes: list[str], code: Code):
    """Decompositions w = u . mid . v with mid a (possibly empty) product of
    code words, yielded in sorted (u, v) order."""
    for u in suffixes:
        if not w.startswith(u):
            continue
        for v in prefixes:
            if len(u) + len(v) > len(w) or not w.endswith(v):
                continue
            middle = w[len(u):len(w) - len(v)]
            if middle:
                for mid in _all_factorizations(middle, code):
                    yield u, (mid, v)
            else:
                yield u, ((), v)
