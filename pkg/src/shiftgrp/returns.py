"""Return words of a block in a substitutive minimal subshift.

A return word of u is a nonempty v with vu in the language, u a prefix of
vu, and u occurring in vu only as that prefix and suffix.  Completeness of
the harvested set rests on the recurrence bound K: every factor of length K
contains u, so no return word is longer than K, and scanning consecutive
occurrences of u inside all factors of length 2K + 2|u| finds them all.
"""
from __future__ import annotations

from dataclasses import dataclass

from .codes import Code
from .errors import InputError, ResourceLimitError, StructuralError
from .words import (MAX_ITERATIONS, MAX_WORD_LENGTH, Substitution,
                    SubshiftLanguage, connections, factors)


@dataclass(frozen=True)
class ReturnData:
    block: str
    recurrence_bound: int
    returns: tuple[str, ...]
    language: SubshiftLanguage

    def as_dict(self) -> dict:
        return {"block": self.block, "recurrence_bound": self.recurrence_bound,
                "returns": list(self.returns)}


def _occurrences(w: str, u: str) -> list[int]:
    out, i = [], w.find(u)
    while i != -1:
        out.append(i)
        i = w.find(u, i + 1)
    return out


def recurrence_bound(subst: Substitution, u: str, window_cap: int = 4096,
                     max_word_length: int = MAX_WORD_LENGTH,
                     max_iterations: int = MAX_ITERATIONS) -> int:
    """Least K such that every length-K factor of the language contains u.

    Exists for weakly primitive substitutions; the search widens the
    generated language geometrically and fails with a resource error at
    window_cap.
    """
    if not u:
        raise InputError("the block must be nonempty")
    subst.alphabet.check_word(u)
    window = max(4 * len(u), 8)
    checked_to = len(u) - 1
    while window <= window_cap:
        lang = factors(subst, window, max_word_length, max_iterations)
        if u not in lang:
            raise InputError("block %r is not a factor of the language" % (u,))
        for k in range(checked_to + 1, window + 1):
            if all(u in f for f in lang.factors_of_length(k)):
                return k
        checked_to = window
        window *= 2
    raise ResourceLimitError(
        "no recurrence bound for %r below window cap %d" % (u, window_cap))


def return_words(subst: Substitution, u: str, window_cap: int = 4096,
                 max_word_length: int = MAX_WORD_LENGTH,
                 max_iterations: int = MAX_ITERATIONS) -> ReturnData:
    """The complete set of return words of u, harvested as gaps between
    consecutive occurrences of u inside every factor of length 2K + 2|u|."""
    bound = recurrence_bound(subst, u, window_cap, max_word_length, max_iterations)
    width = 2 * bound + 2 * len(u)
    lang = factors(subst, width, max_word_length, max_iterations)
    candidates: set[str] = set()
    for f in lang.factors_of_length(width):
        occ = _occurrences(f, u)
        for i, j in zip(occ, occ[1:]):
            candidates.add(f[i:j])
    validated = []
    for v in candidates:
        vu = v + u
        if vu not in lang:
            continue
        if _occurrences(vu, u) == [0, len(v)]:
            validated.append(v)
    out = subst.alphabet.sorted_words(validated)
    if any(len(v) > bound for v in out):
        raise StructuralError("return word longer than the recurrence bound")  # pragma: no cover
    return ReturnData(u, bound, out, lang)


def x_set(subst: Substitution, connection: str, window_cap: int = 4096,
          max_word_length: int = MAX_WORD_LENGTH,
          max_iterations: int = MAX_ITERATIONS) -> Code:
    """Generator code of the connection: strip the leading letter of every
    return word of the connection and append it."""
    if connection not in connections(subst):
        raise InputError("%r is not a connection for this substitution" % (connection,))
    b = connection[0]
    data = return_words(subst, connection, window_cap, max_word_length, max_iterations)
    out = []
    for r in data.returns:
        if not r.startswith(b):
            raise StructuralError(
                "return word %r of %r does not start with %r" % (r, connection, b))  # pragma: no cover
        out.append(r[1:] + b)
    return Code(subst.alphabet.sorted_words(out))
