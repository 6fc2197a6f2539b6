import itertools

import pytest

from shiftgrp import (Code, FactorizationError, InputError, bounded_delay_check,
                      factors, is_code, parse, power_apply)
from shiftgrp.codes import factorization_count

TM_X = Code.make(["abba", "ababba", "abbaba", "ababbaba"])


def test_code_construction():
    with pytest.raises(InputError):
        Code(())
    with pytest.raises(InputError):
        Code(("a", "a"))
    assert Code.make(["ba", "a", "ab"]).words == ("a", "ab", "ba")


def test_is_code():
    assert is_code(TM_X).is_code
    assert is_code(Code.make(["a"])).is_code
    assert is_code(Code.make(["ab", "ba"])).is_code
    verdict = is_code(Code.make(["a", "ab", "ba"]))
    assert not verdict.is_code
    w = verdict.witness
    assert "".join(w.left) == "".join(w.right) == w.word
    assert w.left != w.right
    assert factorization_count(Code.make(["a", "ab", "ba"]), w.word) >= 2


def test_is_code_prefix_ambiguity():
    verdict = is_code(Code.make(["a", "ab", "bb"]))
    # a . b^2k admits two readings; the set is still a code
    assert verdict.is_code


def test_parse(tau):
    word = power_apply(tau, 2, "abba")
    assert parse(TM_X, word) == ("abbaba", "abba", "ababba")
    word = power_apply(tau, 2, "ababba")
    assert parse(TM_X, word) == ("abbaba", "ababbaba", "abba", "ababba")
    assert parse(Code.make(["ab", "ba"]), "ab") == ("ab",)
    with pytest.raises(FactorizationError):
        parse(TM_X, "ab")
    with pytest.raises(InputError):
        parse(TM_X, "")


def test_parse_backtracks_past_greedy_prefix():
    # longest-prefix alone would strand the tail; backtracking must recover
    code = Code.make(["a", "ab", "bbb"])
    assert parse(code, "abbb") == ("a", "bbb")
    assert parse(code, "abbbbbb") == ("a", "bbb", "bbb")


def test_bounded_delay_verified(tau):
    lang = factors(tau, 16)
    report = bounded_delay_check(Code.make(["ab", "ba"]), lang, 4, 16)
    assert report.verified
    assert report.witness is None


def test_bounded_delay_counterexample():
    universe = ["".join(p) for n in range(1, 13)
                for p in itertools.product("ab", repeat=n)]
    report = bounded_delay_check(Code.make(["a", "ab", "bb"]), universe, 4, 12)
    assert report.verdict == "counterexample"
    w = report.witness
    assert "".join(w.left_side) == "".join(w.right_side) == w.word
    # replay irreducibility: no common interior cut
    def cuts(side):
        total, out = sum(map(len, side)), set()
        for piece in side[:-1]:
            total -= len(piece)
            out.add(total)
        return out
    assert not (cuts(w.left_side) & cuts(w.right_side))


def test_bounded_delay_monotone_in_length_bound():
    # a counterexample at one length bound stays one at every larger bound
    for bound in (10, 12, 14):
        universe = ["".join(p) for n in range(1, bound + 1)
                    for p in itertools.product("ab", repeat=n)]
        report = bounded_delay_check(Code.make(["a", "ab", "bb"]), universe, 4, bound)
        assert report.verdict == "counterexample"


def test_bounded_delay_singleton():
    assert bounded_delay_check(Code.make(["a"]), ["a" * n for n in range(1, 9)], 1, 8).verified
