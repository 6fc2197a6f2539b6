import random

import numpy as np
import pytest

from shiftgrp import (Code, InputError, abelianization_matrix, code_transform,
                      endo_apply, endo_compose, endo_power, fold,
                      is_automorphism, matrix_omega_power,
                      positive_basis_reduction)
from shiftgrp.freegrp import FreeEndo, GroupWord, rank_mod_p


def gw(text):
    return GroupWord.from_tokens(text)


def test_reduce():
    assert str(GroupWord.reduce([("a", 1), ("b", 1), ("b", -1), ("a", 1)])) == "a a"
    assert GroupWord.reduce([("a", 1), ("a", -1)]).is_identity
    word = (GroupWord.positive("ababba") * GroupWord.positive("abba").inverse()
            * GroupWord.positive("abbaba"))
    assert word == GroupWord.positive("ababbaba")


def test_reduce_is_normal_form():
    rng = random.Random(3)
    for _ in range(100):
        raw = [(rng.choice("ab"), rng.choice((1, -1))) for _ in range(rng.randint(0, 10))]
        u = GroupWord.reduce(raw)
        v = GroupWord.reduce(u.syllables)
        assert u == v  # idempotent
    for _ in range(100):
        u = GroupWord.reduce((rng.choice("ab"), rng.choice((1, -1))) for _ in range(6))
        v = GroupWord.reduce((rng.choice("ab"), rng.choice((1, -1))) for _ in range(6))
        assert u * v == GroupWord.reduce(u.syllables + v.syllables)


def test_token_parsing():
    assert gw("γ α β").syllables == (("γ", 1), ("α", 1), ("β", 1))
    assert gw("a^-1 b").syllables == (("a", -1), ("b", 1))
    assert gw("abba ababba^-1").syllables == (("abba", 1), ("ababba", -1))
    with pytest.raises(InputError):
        gw("a^2")


def test_endo_apply_and_identities(psi):
    fixed = gw("α β^-1 α γ^-1 α")
    assert endo_apply(psi, fixed) == fixed
    lhs = endo_apply(psi, gw("α^-1 γ"))
    rhs = gw("α^-1") * endo_apply(psi, gw("β α^-1")) * gw("α")
    assert lhs == rhs
    assert endo_power(psi, 0) == FreeEndo.identity(psi.generators)


def test_endo_apply_is_homomorphism(psi):
    rng = random.Random(5)
    for _ in range(60):
        u = GroupWord.reduce((rng.choice("αβγ"), rng.choice((1, -1))) for _ in range(5))
        v = GroupWord.reduce((rng.choice("αβγ"), rng.choice((1, -1))) for _ in range(5))
        assert endo_apply(psi, u * v) == endo_apply(psi, u) * endo_apply(psi, v)


def test_endo_compose_associative(psi):
    two = endo_compose(psi, psi)
    three = endo_compose(two, psi)
    assert three == endo_compose(psi, two)
    assert endo_power(psi, 3) == three


def test_fold_whole_group():
    graph = fold(["ac", "acaac", "accac"], "ac")
    assert graph.is_whole_group and graph.rank == 2
    assert graph.n_vertices == 1


def test_fold_proper_subgroup():
    graph = fold(["ab", "ba"], "ab")
    assert not graph.is_whole_group
    assert graph.rank == 2
    single = fold(["a"], "ab")
    assert single.rank == 1 and not single.is_whole_group


def test_membership():
    graph = fold(["ac", "acaac"], "ac")
    assert graph.membership(GroupWord.positive("c"))
    assert graph.membership(GroupWord(()))
    assert not fold(["aa"], "ab").membership(GroupWord.positive("a"))
    assert not fold(["ab", "ba"], "ab").membership(GroupWord.positive("a"))


def test_basis_matches_rank():
    for gens, letters in ((["ab", "ba"], "ab"), (["aa", "ab"], "ab"),
                          (["ac", "acaac", "accac"], "ac")):
        graph = fold(gens, letters)
        basis = graph.basis()
        assert len(basis) == graph.rank
        for w in basis:
            assert graph.membership(w)


def test_is_automorphism(phi_ac):
    restricted = FreeEndo.make({"a": GroupWord.positive("ac"),
                                "c": GroupWord.positive("accac")}, "ac")
    assert is_automorphism(restricted)
    tau_endo = FreeEndo.make({"a": GroupWord.positive("ab"),
                              "b": GroupWord.positive("ba")}, "ab")
    assert not is_automorphism(tau_endo)
    assert is_automorphism(FreeEndo.identity(("a", "b")))


def test_positive_basis_reduction():
    red = positive_basis_reduction(["abba", "ababba", "abbaba", "ababbaba"])
    assert red.words == ("ab", "ba")
    assert red.is_basis
    assert positive_basis_reduction(["a", "ab"]).words == ("a", "b")
    assert positive_basis_reduction(["ab", "b"]).words == ("a", "b")


def test_positive_basis_reduction_preserves_subgroup():
    rng = random.Random(13)
    for _ in range(40):
        xs = {"".join(rng.choice("ab") for _ in range(rng.randint(1, 5)))
              for _ in range(rng.randint(1, 4))}
        red = positive_basis_reduction(xs, "ab")
        assert fold(xs, "ab") == fold(red.words, "ab")


def test_code_transform():
    code = Code.make(["x", "y"])
    new_code, eps = code_transform(code, "x", "y")
    assert new_code.words == ("x", "xy")
    assert eps.image("y") == GroupWord((("x", -1), ("xy", 1)))
    assert len(new_code) == len(code)
    with pytest.raises(InputError):
        code_transform(code, "x", "x")


def test_code_transform_preserves_subgroup():
    code = Code.make(["abba", "ababba", "abbaba", "ababbaba"])
    new_code, _ = code_transform(code, "abba", "ababba")
    assert fold(code.words, "ab") == fold(new_code.words, "ab")


def test_abelianization_matrix(psi):
    m = abelianization_matrix(psi, 0)
    assert m[:, 0].tolist() == [1, 1, 1]
    assert m[:, 1].tolist() == [0, 2, 2]
    assert m[:, 2].tolist() == [0, 2, 2]
    m2 = abelianization_matrix(psi, 2)
    assert m2[:, 0].tolist() == [1, 1, 1]
    assert m2[:, 1].tolist() == [0, 0, 0]
    assert m2[:, 2].tolist() == [0, 0, 0]
    with pytest.raises(InputError):
        abelianization_matrix(psi, 4)


def test_abelianization_multiplicative(psi):
    rng = random.Random(17)
    gens = psi.generators
    for _ in range(20):
        def rand_endo():
            return FreeEndo(gens, tuple(
                GroupWord.reduce((rng.choice(gens), rng.choice((1, -1)))
                                 for _ in range(rng.randint(1, 5)))
                for _ in gens))
        f, g = rand_endo(), rand_endo()
        left = abelianization_matrix(endo_compose(f, g), 0)
        right = abelianization_matrix(f, 0) @ abelianization_matrix(g, 0)
        assert (left == right).all()


def test_matrix_omega_power(psi):
    m5 = abelianization_matrix(psi, 5)
    om = matrix_omega_power(m5, 5)
    assert om.exponent == 2
    assert (om.matrix == (m5 @ m5) % 5).all()
    assert ((om.matrix @ om.matrix) % 5 == om.matrix).all()
    assert om.matrix[:, 1].tolist() == [0, 3, 3]
    ident = np.eye(3, dtype=np.int64)
    omi = matrix_omega_power(ident, 7)
    assert (omi.matrix == ident).all()


def test_rank_mod_p():
    assert rank_mod_p(np.array([[2, 3], [3, 2]]), 5) == 1  # det = -5
    assert rank_mod_p(np.zeros((3, 3), dtype=int), 3) == 0
    assert rank_mod_p(np.eye(3, dtype=int), 2) == 3
