"""Koszul sign engine and graded module elements."""

import random
from fractions import Fraction

import pytest

from ainfty.coeff import RingElement, RingSpec
from ainfty.errors import ConfigurationError
from ainfty.graded import (
    Element,
    GradedBasis,
    koszul_sign_cyclic,
    maltese,
    rotate_word,
    substitute,
    word_shifted_degree,
)

SPEC = RingSpec(s_degree=2, t_degrees=(), cutoff=Fraction(4))
BASIS = GradedBasis(("1", "x", "y", "z"), (0, 1, 2, 3), unit=0)


def test_maltese_empty():
    assert maltese([], 0) == 0


def test_maltese_values():
    assert maltese([1, 2, 3], 2) == 1
    assert maltese([2, 2], 2) == 2


def test_maltese_out_of_range():
    with pytest.raises(ConfigurationError):
        maltese([1], 2)


def test_maltese_prefix_additivity():
    rng = random.Random(3)
    for _ in range(100):
        degs = [rng.randint(-2, 4) for _ in range(rng.randint(0, 6))]
        for i in range(len(degs) + 1):
            for j in range(len(degs) - i + 1):
                assert maltese(degs, i) + maltese(degs[i:], j) == maltese(degs, i + j)


def test_cyclic_sign_small_cases():
    assert koszul_sign_cyclic([1, 1]) == 1
    assert koszul_sign_cyclic([2, 2]) == -1
    assert koszul_sign_cyclic([5]) == 1


def test_cyclic_sign_rejects_empty():
    with pytest.raises(ConfigurationError):
        koszul_sign_cyclic([])


def test_full_rotation_is_identity():
    rng = random.Random(7)
    for _ in range(200):
        word = tuple(rng.randrange(len(BASIS)) for _ in range(rng.randint(1, 6)))
        current, sign = word, 1
        for _ in range(len(word)):
            current, s = rotate_word(BASIS, current)
            sign *= s
        assert current == word
        assert sign == 1


def test_substitute_zero_element():
    coeff = RingElement.one(SPEC)
    out = substitute(BASIS, (1, 2), coeff, 0, 1, Element.zero(BASIS))
    assert out == {}


def test_substitute_unit_insertion_sign():
    coeff = RingElement.one(SPEC)
    unit = Element.generator(BASIS, 0, RingElement.one(SPEC))
    out = substitute(BASIS, (1, 2), coeff, 0, 0, unit)
    assert out == {(0, 1, 2): RingElement.one(SPEC)}


def test_substitute_prefix_sign():
    # prefix (y) with |y| = 2 gives maltese = 1, so the sign is -1
    coeff = RingElement.one(SPEC)
    value = Element.generator(BASIS, 3, RingElement.one(SPEC))
    out = substitute(BASIS, (2, 1), coeff, 1, 1, value)
    assert out == {(2, 3): -RingElement.one(SPEC)}


def test_substitute_bilinear():
    rng = random.Random(11)
    for _ in range(50):
        word = tuple(rng.randrange(len(BASIS)) for _ in range(3))
        c1 = RingElement.monomial(SPEC, rng.randint(1, 3), lam=Fraction(1, 2))
        c2 = RingElement.monomial(SPEC, rng.randint(1, 3), lam=1)
        v1 = Element.generator(BASIS, rng.randrange(len(BASIS)), c1)
        v2 = Element.generator(BASIS, rng.randrange(len(BASIS)), c2)
        one = RingElement.one(SPEC)
        merged = substitute(BASIS, word, one, 1, 1, v1 + v2)
        split: dict = {}
        for part in (substitute(BASIS, word, one, 1, 1, v1),
                     substitute(BASIS, word, one, 1, 1, v2)):
            for key, val in part.items():
                split[key] = split[key] + val if key in split else val
        split = {k: v for k, v in split.items() if v}
        assert merged == split


def test_substitute_range_check():
    with pytest.raises(ConfigurationError):
        substitute(BASIS, (1,), RingElement.one(SPEC), 1, 2,
                   Element.generator(BASIS, 1, RingElement.one(SPEC)))


def test_word_shifted_degree():
    assert word_shifted_degree(BASIS, (1, 2, 3)) == 0 + 1 + 2


def test_element_arithmetic():
    a = Element.generator(BASIS, 1, RingElement.one(SPEC))
    b = Element.generator(BASIS, 2, RingElement.monomial(SPEC, 2, lam=1))
    total = a + b
    assert not total.is_zero()
    assert (total - a) == b
    assert total.scale(RingElement.zero(SPEC)).is_zero()


def test_element_degrees_and_valuation():
    a = Element.generator(BASIS, 1, RingElement.monomial(SPEC, 1, lam=Fraction(1, 2)))
    assert a.total_degrees() == {1}
    assert a.is_homogeneous(1)
    assert a.valuation() == Fraction(1, 2)
    mixed = a + Element.generator(BASIS, 2, RingElement.one(SPEC))
    assert mixed.total_degrees() == {1, 2}
    assert not mixed.is_homogeneous(1)


def test_unit_scalar_split():
    c = RingElement.monomial(SPEC, 3, lam=1)
    el = Element.generator(BASIS, 0, c) + Element.generator(BASIS, 1, RingElement.one(SPEC))
    scalar, rest = el.unit_scalar_split()
    assert scalar == c
    assert rest == Element.generator(BASIS, 1, RingElement.one(SPEC))


def test_unit_must_have_degree_zero():
    with pytest.raises(ConfigurationError):
        GradedBasis(("1", "x"), (1, 2), unit=0)


def test_duplicate_names_rejected():
    with pytest.raises(ConfigurationError):
        GradedBasis(("a", "a"), (0, 1), unit=0)
