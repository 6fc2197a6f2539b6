"""End-to-end builders for the group presentation data of a substitutive
subshift.

A presentation consists of a generator code X, the endomorphism sending
each x in X to the parse of its image under the smallest connection-fixing
power of the substitution, and the provenance that justifies both: the
connection, the power, the code verdict, and a bounded delay report.  The
delay property is only ever verified up to a bound, and the report says so.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import codes, returns, words
from .codes import Code, DelayReport
from .errors import FactorizationError, InputError, StructuralError
from .freegrp import FreeEndo, GroupWord, is_automorphism
from .words import Substitution, WeakPrimitivity

DELAY_BOUND = 4
DELAY_LENGTH = 16


@dataclass(frozen=True)
class AnalysisReport:
    substitution: Substitution
    primitive: bool
    weakly_primitive: WeakPrimitivity
    connections: tuple[str, ...]
    ultimate_alphabet: tuple[str, ...]
    same_first_letter: str | None
    same_last_letter: str | None
    ultimately_group_invertible: bool
    free_rank: int | None

    def as_dict(self) -> dict:
        return {
            "substitution": dict(self.substitution.rules),
            "primitive": self.primitive,
            "weakly_primitive": self.weakly_primitive.verdict,
            "weak_power": self.weakly_primitive.n,
            "connections": list(self.connections),
            "ultimate_alphabet": list(self.ultimate_alphabet),
            "same_first_letter": self.same_first_letter,
            "same_last_letter": self.same_last_letter,
            "ultimately_group_invertible": self.ultimately_group_invertible,
            "free_rank": self.free_rank,
        }


def restricted_letter_endo(subst: Substitution) -> FreeEndo:
    """The induced free-group endomorphism on the letters that survive in
    the idempotent iterate."""
    surviving = words.ultimate_alphabet(subst)
    keep = set(surviving)
    images = {}
    for c in surviving:
        w = subst.image(c)
        if not set(w) <= keep:
            raise StructuralError(
                "image of %r leaves the surviving alphabet" % (c,))  # pragma: no cover
        images[c] = GroupWord.positive(w)
    return FreeEndo.make(images, generators=surviving)


def analyze(subst: Substitution, weak_cap: int = 16) -> AnalysisReport:
    """Aggregate structural facts: primitivity, weak primitivity, the
    connections, the surviving letters, and group invertibility there."""
    weak = words.is_weakly_primitive(subst, weak_cap)
    conns: tuple[str, ...] = ()
    if weak:
        conns = words.connections(subst)
    surviving = words.ultimate_alphabet(subst)
    firsts = {w[0] for w in subst.images}
    lasts = {w[-1] for w in subst.images}
    invertible = is_automorphism(restricted_letter_endo(subst))
    return AnalysisReport(
        substitution=subst,
        primitive=words.is_primitive(subst),
        weakly_primitive=weak,
        connections=conns,
        ultimate_alphabet=surviving,
        same_first_letter=firsts.pop() if len(firsts) == 1 else None,
        same_last_letter=lasts.pop() if len(lasts) == 1 else None,
        ultimately_group_invertible=invertible,
        free_rank=len(surviving) if invertible else None,
    )


@dataclass(frozen=True)
class Presentation:
    """Generator code plus the induced endomorphism, with provenance."""

    generators: tuple[str, ...]
    endo: FreeEndo
    substitution: Substitution
    connection: str
    tilde_exponent: int
    code_ok: bool
    delay: DelayReport
    kind: str  # "return-words" | "letters" | "restricted"
    free_of_rank: int | None = None
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "endomorphism": self.endo.as_dict(),
            "connection": self.connection,
            "tilde_exponent": self.tilde_exponent,
            "code": self.code_ok,
            "delay": self.delay.as_dict(),
            "kind": self.kind,
            "free_of_rank": self.free_of_rank,
            "notes": list(self.notes),
        }


def _encoding_delay_report(subst: Substitution, delay_bound: int,
                           delay_length: int) -> tuple[DelayReport, tuple[str, ...]]:
    notes: tuple[str, ...] = ()
    image_set = set(subst.images)
    if len(image_set) < len(subst.images):
        notes = ("letter images are not distinct; the substitution is not injective",)
    encoding = Code.make(image_set)
    lang = words.factors(subst, delay_length)
    return codes.bounded_delay_check(encoding, lang, delay_bound, delay_length), notes


def build_presentation(subst: Substitution, connection: str | None = None,
                       delay_bound: int = DELAY_BOUND,
                       delay_length: int = DELAY_LENGTH) -> Presentation:
    """Presentation on the return-word code of a connection.

    The generators are the connection's return words conjugated into the
    code X; the endomorphism image of x is the unique parse of the
    connection-fixing power applied to x.
    """
    if connection is None:
        available = words.connections(subst)
        if not available:
            raise StructuralError("no connection available")
        connection = available[0]
    x_code = returns.x_set(subst, connection)
    verdict = codes.is_code(x_code)
    if not verdict:
        raise StructuralError(
            "generator set %r is not a code: %r has two factorizations"
            % (x_code.words, verdict.witness.word))
    k = words.tilde_exponent(subst, connection)
    images = {}
    for x in x_code.words:
        w = words.power_apply(subst, k, x)
        try:
            parsed = codes.parse(x_code, w)
        except FactorizationError:
            raise StructuralError(
                "image of generator %r does not decompose over the code" % (x,)) from None
        images[x] = GroupWord.positive(parsed)
    endo = FreeEndo.make(images, generators=x_code.words)
    delay, notes = _encoding_delay_report(subst, delay_bound, delay_length)
    return Presentation(
        generators=x_code.words, endo=endo, substitution=subst,
        connection=connection, tilde_exponent=k, code_ok=True,
        delay=delay, kind="return-words", notes=notes)


def letter_presentation(subst: Substitution,
                        delay_bound: int = DELAY_BOUND,
                        delay_length: int = DELAY_LENGTH) -> Presentation:
    """Presentation on the letters themselves, available when all letter
    images share their first letter and share their last letter."""
    firsts = {w[0] for w in subst.images}
    lasts = {w[-1] for w in subst.images}
    if len(firsts) != 1 or len(lasts) != 1:
        offenders = sorted(firsts) if len(firsts) != 1 else sorted(lasts)
        raise InputError(
            "letter images do not share a %s letter (saw %r)"
            % ("first" if len(firsts) != 1 else "last", offenders))
    a, b = firsts.pop(), lasts.pop()
    images = {c: GroupWord.positive(subst.image(c)) for c in subst.alphabet.letters}
    endo = FreeEndo.make(images, generators=subst.alphabet.letters)
    delay, notes = _encoding_delay_report(subst, delay_bound, delay_length)
    code_ok = bool(codes.is_code(Code.make(set(subst.images))))
    return Presentation(
        generators=subst.alphabet.letters, endo=endo, substitution=subst,
        connection=b + a, tilde_exponent=1, code_ok=code_ok,
        delay=delay, kind="letters", notes=notes)


def restrict_presentation(pres: Presentation) -> Presentation:
    """Drop the generators outside the surviving alphabet; when the
    restricted endomorphism is an automorphism the relations are trivial
    and the presented group is free of the surviving rank."""
    if pres.kind != "letters":
        raise InputError("only letter presentations can be restricted")
    endo = restricted_letter_endo(pres.substitution)
    dropped = tuple(g for g in pres.generators if g not in set(endo.generators))
    invertible = is_automorphism(endo)
    notes = pres.notes
    if dropped:
        notes = notes + ("dropped generators outside the surviving alphabet: %s"
                         % ",".join(dropped),)
    if invertible:
        notes = notes + ("restricted endomorphism is an automorphism; "
                         "all relations are trivial",)
    return Presentation(
        generators=endo.generators, endo=endo, substitution=pres.substitution,
        connection=pres.connection, tilde_exponent=pres.tilde_exponent,
        code_ok=pres.code_ok, delay=pres.delay, kind="restricted",
        free_of_rank=len(endo.generators) if invertible else None,
        notes=notes)


# ---------------------------------------------------------------------------
# The three-generator reduction for the Thue-Morse presentation


THREE_GENERATORS = ("α", "β", "γ")

#: Return-word code of the aa connection of the Thue-Morse substitution,
#: in length-lexicographic order, and the short names used for the first
#: three once the last one is eliminated.
TM_X_WORDS = ("abba", "ababba", "abbaba", "ababbaba")


def reduced_three_generator_endo() -> FreeEndo:
    """The reduced endomorphism on three generators for the Thue-Morse
    presentation, after eliminating the fourth generator through the
    identity expressing it as second * first^-1 * third."""
    return FreeEndo.make(
        {
            "α": "γ α β",
            "β": "γ β α^-1 γ α β",
            "γ": "γ α β α^-1 γ β",
        },
        generators=THREE_GENERATORS,
    )


def eliminate_fourth_generator(pres: Presentation) -> FreeEndo:
    """Transport the four-generator Thue-Morse presentation onto three
    generators, replacing the eliminable generator by beta alpha^-1 gamma.

    The elimination is justified by a free-group identity over the ambient
    letters: the second code word times the inverse of the first times the
    third reduces to the fourth.
    """
    if pres.generators != TM_X_WORDS:
        raise StructuralError(
            "elimination is implemented for the Thue-Morse code %r only" % (TM_X_WORDS,))
    short, long_word = dict(zip(TM_X_WORDS[:3], THREE_GENERATORS)), TM_X_WORDS[3]
    replacement = GroupWord.from_tokens("β α^-1 γ")

    def transport(w: GroupWord) -> GroupWord:
        out: list[tuple[str, int]] = []
        for g, e in w.syllables:
            if g == long_word:
                piece = replacement if e == 1 else replacement.inverse()
                out.extend(piece.syllables)
            else:
                out.append((short[g], e))
        return GroupWord.reduce(out)

    images = {short[x]: transport(pres.endo.image(x)) for x in TM_X_WORDS[:3]}
    return FreeEndo.make(images, generators=THREE_GENERATORS)
