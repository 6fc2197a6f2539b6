import pytest

from shiftgrp import Substitution, perm_from_cycles, perm_group
from shiftgrp.pipeline import reduced_three_generator_endo


@pytest.fixture
def tau():
    return Substitution.make({"a": "ab", "b": "ba"}, "ab")


@pytest.fixture
def phi_ab():
    # a -> ab, b -> a^3 b
    return Substitution.make({"a": "ab", "b": "aaab"}, "ab")


@pytest.fixture
def phi_ac():
    # a -> ac, b -> ac a^2 c, c -> ac^2 ac
    return Substitution.make({"a": "ac", "b": "acaac", "c": "accac"}, "abc")


@pytest.fixture
def psi():
    return reduced_three_generator_endo()


@pytest.fixture
def a5():
    # ordered so that the two designated 3-cycles come right after the identity
    return perm_group([perm_from_cycles([(1, 2, 3)], 5),
                       perm_from_cycles([(3, 4, 5)], 5)], "A5")
