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
from hypothesis import given

from zstab.errors import PreconditionError
from zstab.models.exact import GaussianRational
from zstab.models.stabvec import StabilityVector
from zstab.services.oracle import random_adapted_vector
from zstab.services.presets import (
    coherent_vector,
    dhym_raw_vector,
    dhym_vector,
    leung_vector,
    vector_preset,
)
from zstab.services.stabvec import (
    adapted_characterisation,
    bayer_grid,
    classify,
    grid_values,
    halfplane_witness,
    is_adapted,
    is_adapted_coherent,
    is_bayer,
    is_stability_vector,
)


def test_constructor_conditions():
    with pytest.raises(PreconditionError):
        StabilityVector(((1, 0), (0, -1)))
    raw = StabilityVector.unnormalized(((1, 0), (0, -1)))
    assert not raw.normalized
    with pytest.raises(PreconditionError):
        StabilityVector(((1, 0), (0, 1)))
    with pytest.raises(PreconditionError):
        StabilityVector(((0, 1),))
    assert not is_stability_vector([(0, 1)])
    assert is_stability_vector([(-1, 0), (0, 1)])


def test_normalising_rotations():
    assert raw_normalises(StabilityVector.unnormalized(((1, 0), (0, -1))))
    assert raw_normalises(StabilityVector.unnormalized(((0, 1), (1, 0))))
    assert dhym_raw_vector(3).normalize() == dhym_vector(3)
    assert dhym_raw_vector(3).normalizing_factor() == GaussianRational(-1, 0)
    with pytest.raises(PreconditionError):
        coherent_vector(2).rotated(0)


def raw_normalises(vector):
    normal = vector.normalize()
    return normal.normalized and normal[normal.n].im > 0


def test_dhym_vector_entries():
    assert list(dhym_vector(3)) == [
        GaussianRational(1, 0),
        GaussianRational(0, -1),
        GaussianRational(Fraction(-1, 2), 0),
        GaussianRational(0, Fraction(1, 6)),
    ]
    assert not is_adapted(dhym_vector(3), 3)
    assert is_adapted(dhym_vector(3), 1)


def test_leung_vector_is_adapted_but_not_bayer():
    for n in range(2, 6):
        v = leung_vector(n)
        assert is_adapted(v, n)
        assert not is_bayer(v)


def test_coherent_vector_is_bayer_and_adapted():
    for n in range(1, 6):
        v = coherent_vector(n)
        assert is_bayer(v)
        assert is_adapted_coherent(v)


def test_is_adapted_range():
    with pytest.raises(PreconditionError):
        is_adapted(coherent_vector(2), 3)
    assert is_adapted(coherent_vector(2), 0)


def test_halfplane_witness():
    v = StabilityVector(((-1, 0), (0, 1)))
    witness = halfplane_witness(v)
    assert witness.rotator_index == 0
    assert witness.multiplier == GaussianRational(1, 0)
    assert dict(witness.memberships) == {0: "negative-real", 1: "upper"}
    assert halfplane_witness(v, [1]) is not None
    with pytest.raises(PreconditionError):
        halfplane_witness(v, [])
    with pytest.raises(PreconditionError):
        halfplane_witness(v, [2])


def test_no_witness_when_entries_surround_the_origin():
    v = StabilityVector(((0, -1), (-1, 0), (0, 1)))
    assert halfplane_witness(v) is None
    assert halfplane_witness(v, [1, 2]) is not None


def test_classify_report():
    report = classify(leung_vector(3))
    assert report["stability"] is True
    assert report["bayer"] is False
    assert report["adapted"]["3"] is True
    assert set(report) == {
        "stability",
        "normalized",
        "bayer",
        "adapted",
        "adapted_coherent",
        "halfplane_witness",
    }


def test_grid_sizes():
    assert len(grid_values(1)) == 3
    assert len(grid_values(2)) == 7
    assert len(list(bayer_grid(1, 1))) == 9
    with pytest.raises(PreconditionError):
        grid_values(0)
    with pytest.raises(PreconditionError):
        list(bayer_grid(0, 1))


def test_characterisation_holds_on_small_grid():
    for v in bayer_grid(2, 1):
        if not is_bayer(v):
            continue
        c = adapted_characterisation(v)
        assert c.torsion_free == c.coherent == c.witness_strict == c.witness_nonzero, v


def test_vector_presets():
    assert vector_preset("gieseker", 2) == coherent_vector(2)
    assert not vector_preset("dhym-raw", 3).normalized
    with pytest.raises(PreconditionError):
        vector_preset("nope", 2)
    with pytest.raises(PreconditionError):
        vector_preset("dhym", 0)


@given(n=st.integers(1, 4), data=st.data())
def test_random_adapted_vectors_are_adapted(n, data):
    d = data.draw(st.integers(0, n))
    rng = random.Random(data.draw(st.integers(0, 10_000)))
    assert is_adapted(random_adapted_vector(rng, n, d), d)


@given(st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=9))
def test_positive_scaling_keeps_the_classification(factor):
    v = leung_vector(3)
    scaled = v.rotated(factor)
    assert is_bayer(scaled) == is_bayer(v)
    assert is_adapted(scaled, 3)


@given(n=st.integers(1, 4), data=st.data())
def test_halfplane_witness_follows_a_global_rotation(n, data):
    rng = random.Random(data.draw(st.integers(0, 10_000)))
    v = random_adapted_vector(rng, n, data.draw(st.integers(0, n)))
    parts = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    factor = GaussianRational(data.draw(parts), data.draw(parts))
    if factor.is_zero:
        factor = GaussianRational(0, 1)
    rotated = v.rotated(factor)
    witness = halfplane_witness(rotated)
    assert (witness is None) == (halfplane_witness(v) is None)
    if witness is not None:
        for index, where in witness.memberships:
            image = witness.multiplier * rotated[index]
            assert image.im > 0 if where == "upper" else (image.im == 0 and image.re < 0)


def test_grid_slices_cover_the_grid_once():
    whole = [str(v) for v in bayer_grid(2, 1)]
    sliced = [str(v) for part in range(3) for v in bayer_grid(2, 1, part, 3)]
    assert sorted(sliced) == sorted(whole)
    assert len(set(whole)) == len(whole)
    with pytest.raises(PreconditionError):
        list(bayer_grid(2, 1, 3, 3))
