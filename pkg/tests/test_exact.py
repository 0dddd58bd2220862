# ZStab - Exact asymptotic stability of numerical sheaf classes
# Copyright (C) 2025 Oleg Tokmakov
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

import random
from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from zstab.errors import PreconditionError
from zstab.models.exact import (
    I,
    ONE,
    POS_INF,
    CPoly,
    ExtReal,
    GaussianRational,
    Ordering,
    RPoly,
    as_rational,
    compare_at_infinity,
    compare_at_zero_plus,
    im_conj_product,
    lex_compare,
    sign_at_infinity,
    sign_at_zero_plus,
)
from zstab.services.oracle import random_cpoly, random_rational

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=6)
gaussians = st.builds(GaussianRational, rationals, rationals)
cpolys = st.lists(gaussians, max_size=6).map(lambda cs: CPoly(tuple(cs)))
rpolys = st.lists(rationals, max_size=9).map(lambda cs: RPoly(tuple(cs)))
extreals = st.one_of(st.just(POS_INF), st.integers(-2, 2).map(ExtReal.of))

SMALL = Fraction(1, 10**9)
LARGE = Fraction(10**9)


def evaluate(poly: CPoly, x: Fraction) -> GaussianRational:
    total = GaussianRational(0, 0)
    for c in reversed(poly.coeffs):
        total = total * x + c
    return total


def test_as_rational_refuses_floats():
    assert as_rational("3/6") == Fraction(1, 2)
    with pytest.raises(PreconditionError):
        as_rational(0.5)
    with pytest.raises(PreconditionError):
        as_rational(True)


def test_gaussian_arithmetic():
    a = GaussianRational(1, 2)
    b = GaussianRational(3, -1)
    assert a * b == GaussianRational(5, 5)
    assert (a * b) / b == a
    assert I * I == -ONE
    assert I.im_conj(ONE) == -1
    assert ONE.im_conj(I) == 1
    assert a.abs2() == 5
    with pytest.raises(ZeroDivisionError):
        a / GaussianRational(0, 0)


def test_rpoly_trims_and_orders():
    assert RPoly((1, 0, 0)).degree == 0
    assert RPoly.zero().degree == -1
    p = RPoly((0, 0, 3))
    assert p.lowest_index == 2
    assert p.lowest_coefficient == 3
    assert RPoly((1, 2)).reciprocal(2) == RPoly((0, 2, 1))
    with pytest.raises(PreconditionError):
        RPoly((1, 2, 3)).reciprocal(1)
    assert RPoly((1, 1)) * RPoly((1, -1)) == RPoly((1, 0, -1))
    assert RPoly((1, 2, 1)).evaluate(2) == 9


def test_signs_near_zero_and_infinity():
    p = RPoly((0, -1, 5))
    assert sign_at_zero_plus(p) == -1
    assert sign_at_infinity(p) == 1
    assert sign_at_zero_plus(RPoly.zero()) == 0


def test_asymptotic_comparisons():
    x = RPoly((0, 1))
    x2 = RPoly((0, 0, 1))
    assert compare_at_zero_plus(x, x2) is Ordering.GREATER
    assert compare_at_infinity(x, x2) is Ordering.LESS
    assert compare_at_zero_plus(x, x) is Ordering.EQUAL


def test_extended_reals_and_lex():
    assert ExtReal.of(100) < POS_INF
    assert lex_compare((POS_INF, ExtReal.of(1)), (POS_INF, ExtReal.of(2))) is Ordering.LESS
    assert lex_compare((ExtReal.of(3),), (ExtReal.of(3),)) is Ordering.EQUAL
    with pytest.raises(PreconditionError):
        lex_compare((POS_INF,), (POS_INF, POS_INF))


@given(cpolys, cpolys)
def test_im_conj_product_is_antisymmetric(p, q):
    assert im_conj_product(p, q) == -im_conj_product(q, p)


@given(cpolys)
def test_im_conj_product_annihilates_itself(p):
    assert im_conj_product(p, p).is_zero


@settings(max_examples=50)
@given(cpolys, cpolys, rationals)
def test_im_conj_product_matches_pointwise_value(p, q, x):
    expected = evaluate(p, x).im_conj(evaluate(q, x))
    assert im_conj_product(p, q).evaluate(x) == expected


def test_im_conj_product_on_seeded_pairs():
    rng = random.Random(7)
    for _ in range(1000):
        p, q = random_cpoly(rng), random_cpoly(rng)
        assert im_conj_product(p, q) == -im_conj_product(q, p)
        assert im_conj_product(p, p).is_zero


def ordering_at(a: RPoly, b: RPoly, point: Fraction) -> Ordering:
    difference = a.evaluate(point) - b.evaluate(point)
    return Ordering.from_sign((difference > 0) - (difference < 0))


def seeded_rpoly(rng: random.Random) -> RPoly:
    return RPoly(tuple(random_rational(rng) for _ in range(rng.randint(0, 9))))


@settings(max_examples=200)
@given(rpolys, rpolys)
def test_compare_at_zero_plus_matches_a_tiny_argument(a, b):
    assert compare_at_zero_plus(a, b) is ordering_at(a, b, SMALL)


@settings(max_examples=200)
@given(rpolys, rpolys)
def test_compare_at_infinity_matches_a_huge_argument(a, b):
    assert compare_at_infinity(a, b) is ordering_at(a, b, LARGE)


def test_asymptotic_comparisons_on_seeded_pairs():
    rng = random.Random(11)
    for _ in range(250):
        a, b = seeded_rpoly(rng), seeded_rpoly(rng)
        if rng.random() < 0.3:
            # b agrees with a below some power
            b = a + RPoly((0,) * rng.randint(1, 4) + (random_rational(rng),))
        assert compare_at_zero_plus(a, b) is ordering_at(a, b, SMALL)
        assert compare_at_infinity(a, b) is ordering_at(a, b, LARGE)


def same_length_triples(n: int):
    vectors = st.lists(extreals, min_size=n, max_size=n)
    return st.tuples(vectors, vectors, vectors)


@given(st.integers(1, 4).flatmap(same_length_triples))
def test_lex_compare_is_a_total_order(triple):
    u, v, w = triple
    assert lex_compare(u, v) == -lex_compare(v, u)
    assert (lex_compare(u, v) is Ordering.EQUAL) == (u == v)
    if lex_compare(u, v) <= 0 and lex_compare(v, w) <= 0:
        assert lex_compare(u, w) <= 0
    if lex_compare(u, v) < 0 and lex_compare(v, w) < 0:
        assert lex_compare(u, w) is Ordering.LESS


def test_lex_compare_transitivity_on_seeded_triples():
    rng = random.Random(5)
    values = [POS_INF] + [ExtReal.of(k) for k in range(-2, 3)]
    for _ in range(500):
        n = rng.randint(1, 4)
        u, v, w = ([rng.choice(values) for _ in range(n)] for _ in range(3))
        ranked = sorted([u, v, w], key=lambda x: [(e.is_infinite, e.value or 0) for e in x])
        assert lex_compare(ranked[0], ranked[1]) <= 0
        assert lex_compare(ranked[1], ranked[2]) <= 0
        assert lex_compare(ranked[0], ranked[2]) <= 0
