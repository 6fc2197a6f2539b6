import itertools
import random

import pytest

from shiftgrp import (EvalMap, InputError, ResourceLimitError, alternating,
                      cyclic, direct_product, elem_abelian, evaluate,
                      generates, group_rank, h18, perm_from_cycles,
                      perm_group, symmetric)
from shiftgrp.freegrp import GroupWord


def test_orders():
    assert cyclic(6).order == 6
    assert elem_abelian(5, 2).order == 25
    assert symmetric(4).order == 24
    assert alternating(5).order == 60
    assert h18().order == 18
    assert direct_product(cyclic(2), cyclic(3)).order == 6


def test_group_axioms_spot_check():
    rng = random.Random(23)
    for group in (cyclic(6), symmetric(3), h18(), alternating(4)):
        n = group.order
        for i in range(n):
            assert group.mul(0, i) == i == group.mul(i, 0)
            assert group.mul(i, group.inverse(i)) == 0
            assert group.mul(group.inverse(i), i) == 0
        triples = (itertools.product(range(n), repeat=3) if n <= 60 else
                   ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                    for _ in range(2000)))
        for i, j, k in triples:
            assert group.mul(group.mul(i, j), k) == group.mul(i, group.mul(j, k))


def test_h18_relations():
    group = h18()
    a, b, c = group.element("a"), group.element("b"), group.element("c")
    mul = group.mul
    assert mul(a, a) == 0
    assert mul(mul(b, b), b) == 0
    assert mul(mul(c, c), c) == 0
    assert mul(b, c) == mul(c, b)
    assert mul(mul(a, b), a) == mul(b, b)
    assert mul(mul(a, c), a) == mul(c, c)


def test_evaluate_convention(a5):
    eta = EvalMap(("a", "b"), a5, (a5.element("(1 2 3)"), a5.element("(3 4 5)")))
    assert a5.names[evaluate("abba", eta)] == "(1 3 2 5 4)"
    assert a5.names[evaluate("ababba", eta)] == "(1 5 2)"
    assert evaluate(GroupWord(()), eta) == a5.identity


def test_evaluate_homomorphism(a5):
    rng = random.Random(31)
    eta = EvalMap(("a", "b"), a5, (a5.element("(1 2 3)"), a5.element("(3 4 5)")))
    for _ in range(80):
        u = "".join(rng.choice("ab") for _ in range(rng.randint(1, 6)))
        v = "".join(rng.choice("ab") for _ in range(rng.randint(1, 6)))
        assert evaluate(u + v, eta) == a5.mul(evaluate(u, eta), evaluate(v, eta))
        w = GroupWord.reduce((rng.choice("ab"), rng.choice((1, -1))) for _ in range(5))
        assert evaluate(w.inverse(), eta) == a5.inverse(evaluate(w, eta))


def test_generates(a5):
    assert generates(a5, (a5.element("(1 2 3)"), a5.element("(3 4 5)")))
    x = a5.names.index("(1 3 2 5 4)")
    y = a5.names.index("(1 5 2)")
    assert generates(a5, (x, y))
    assert not generates(cyclic(6), (0,))
    # monotone under superset
    assert generates(a5, (x, y, a5.element("(1 2 3)")))


def test_group_rank(a5):
    assert group_rank(h18()) == 3
    assert group_rank(a5) == 2
    assert group_rank(cyclic(6)) == 1
    assert group_rank(cyclic(1)) == 0
    assert group_rank(symmetric(3)) == 2
    with pytest.raises(ResourceLimitError):
        group_rank(a5, size_cap=10)


def test_rank_one_iff_cyclic():
    for group in (cyclic(2), cyclic(3), cyclic(5), cyclic(12)):
        assert group_rank(group) == 1
    for group in (symmetric(3), elem_abelian(2, 2), h18()):
        assert group_rank(group) > 1


def test_perm_parsing():
    p = perm_from_cycles([(1, 2, 3)], 5)
    assert p == (1, 2, 0, 3, 4)
    with pytest.raises(InputError):
        perm_from_cycles([(0, 1)], 5)
    with pytest.raises(InputError):
        perm_group([(1, 1, 0)])


def test_closure_ordering(a5):
    # identity first, then the generators in the given order
    assert a5.names[0] == "e"
    assert a5.names[1] == "(1 2 3)"
    assert a5.names[2] == "(3 4 5)"
    group = h18()
    assert group.names[:4] == ("1", "a", "b", "c")
