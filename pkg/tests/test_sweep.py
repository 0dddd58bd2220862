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

import time
from fractions import Fraction

import pytest

from zstab.errors import PreconditionError
from zstab.models.cohring import SheafClass
from zstab.services.sweep import grid_axis, sweep


def test_grid_axis():
    assert grid_axis(0, 1, 3) == [0, Fraction(1, 2), 1]
    assert grid_axis("-1/2", "-1/2", 1) == [Fraction(-1, 2)]
    with pytest.raises(PreconditionError):
        grid_axis(1, 0, 3)
    with pytest.raises(PreconditionError):
        grid_axis(0, 1, 0)


@pytest.fixture
def structure(p2):
    return SheafClass.from_chern(p2.unit(), "O")


def test_sweep_tracks_adaptedness_and_verdicts(slope_p2, structure, point_p2):
    rows = sweep(
        slope_p2, 0, grid_axis(-2, 2, 5), grid_axis(-1, 1, 3), [(structure, point_p2)]
    )
    assert len(rows) == 15
    assert [row.point.re for row in rows[:4]] == [-2, -2, -2, -1]
    assert [row.point.im for row in rows[:3]] == [-1, 0, 1]
    for row in rows:
        assert row.stability
        verdict, order = row.verdicts[0]
        assert (verdict == "strict") == row.adapted[2] == (row.point.re < 0)
        if row.point.re == 0:
            assert (verdict, order) == ("weak", None)
        else:
            assert order == 2


def test_sweep_marks_points_that_are_not_stability_vectors(slope_p2):
    rows = sweep(slope_p2, 2, [0], [-1, 0, 1])
    assert [row.stability for row in rows] == [False, False, True]
    assert rows[0].to_dict()["verdicts"] == []
    assert rows[2].to_dict()["adapted"] == {"0": True, "1": True, "2": True}


def test_parallel_sweep_is_deterministic(slope_p2, structure, point_p2):
    axes = (grid_axis(-2, 2, 5), grid_axis(-1, 1, 3))
    pairs = [(structure, point_p2)]
    serial = [row.to_dict() for row in sweep(slope_p2, 0, *axes, pairs)]
    parallel = [row.to_dict() for row in sweep(slope_p2, 0, *axes, pairs, workers=3)]
    assert parallel == serial


def test_sweep_preconditions(slope_p2):
    with pytest.raises(PreconditionError):
        sweep(slope_p2, 3, [0], [1])
    with pytest.raises(PreconditionError):
        sweep(slope_p2, 0, [0], [1], workers=0)


def test_ten_by_ten_sweep_is_fast(dhym3):
    pair = (dhym3.classes["O"], dhym3.classes["I_V"])
    started = time.perf_counter()
    rows = sweep(dhym3.charges["dhym"], 0, grid_axis(-2, 2, 10), grid_axis(-2, 2, 10), [pair])
    assert len(rows) == 100
    assert time.perf_counter() - started < 1.0
