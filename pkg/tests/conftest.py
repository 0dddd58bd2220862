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

"""Shared fixtures: rings, charges and hand-built lattices."""

import random
from pathlib import Path

import pytest

from zstab.models.charge import ChargeData
from zstab.models.cohring import GradedRing, SheafClass
from zstab.models.lattice import SubobjectLattice
from zstab.services.presets import (
    coherent_vector,
    dhym_fixture,
    hyperplane,
    p2_split_fixture,
    pathological_fixture,
    power_class,
    projective_space_ring,
)

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture
def samples_dir():
    return SAMPLES


@pytest.fixture
def rng():
    return random.Random(20250101)


@pytest.fixture
def p1():
    return projective_space_ring(1)


@pytest.fixture
def p2():
    return projective_space_ring(2)


@pytest.fixture
def p3():
    return projective_space_ring(3)


@pytest.fixture
def slope_p1(p1):
    """Untwisted charge on P¹ with a vector adapted to every dimension."""
    return ChargeData.untwisted(p1, hyperplane(p1), coherent_vector(1), "slope-p1")


@pytest.fixture
def slope_p2(p2):
    return ChargeData.untwisted(p2, hyperplane(p2), coherent_vector(2), "slope-p2")


@pytest.fixture
def p2_split():
    return p2_split_fixture()


@pytest.fixture
def dhym3():
    return dhym_fixture(3)


@pytest.fixture
def pathological():
    return pathological_fixture()


def p1_class(ring, rank, degree):
    return ring.make_class({0: [rank], 1: [degree]})


@pytest.fixture
def semistable_chain(p1):
    """``0 < L < E`` with ``L = O`` and ``E = O²``: equal slopes."""
    return SubobjectLattice(
        {"0": p1.zero(), "L": p1_class(p1, 1, 0), "E": p1_class(p1, 2, 0)},
        [("0", "L"), ("L", "E")],
        top="E",
        bottom="0",
        name="semistable-chain",
    )


@pytest.fixture
def split_p1(p1):
    """``O(1) ⊕ O`` on P¹ with both summands."""
    return SubobjectLattice(
        {
            "0": p1.zero(),
            "A": p1_class(p1, 1, 1),
            "B": p1_class(p1, 1, 0),
            "E": p1_class(p1, 2, 1),
        },
        [("0", "A"), ("0", "B"), ("A", "E"), ("B", "E")],
        top="E",
        bottom="0",
        name="split-p1",
    )


@pytest.fixture
def three_lines(p1):
    """``O ⊕ O`` with three rank-one sub-objects: several JH chains."""
    line = p1_class(p1, 1, 0)
    return SubobjectLattice(
        {"0": p1.zero(), "A": line, "B": line, "C": line, "E": p1_class(p1, 2, 0)},
        [("0", x) for x in "ABC"] + [(x, "E") for x in "ABC"],
        top="E",
        bottom="0",
        name="three-lines",
    )


@pytest.fixture
def torsion_p1(p1):
    """``O ⊕ O_p``: a torsion sub-object ``T`` and a line ``L``."""
    return SubobjectLattice(
        {
            "0": p1.zero(),
            "T": p1_class(p1, 0, 1),
            "L": p1_class(p1, 1, 0),
            "E": p1_class(p1, 1, 1),
        },
        [("0", "T"), ("0", "L"), ("T", "E"), ("L", "E")],
        top="E",
        bottom="0",
        name="torsion-p1",
    )


@pytest.fixture
def long_chain(p1):
    """``O(2) ⊂ O(2) ⊕ O(1) ⊂ .. ⊂ O(2) ⊕ O(1) ⊕ O ⊕ O(-1)``: HN has four steps."""
    classes = {"0": p1.zero()}
    order = []
    previous = "0"
    rank, degree = 0, 0
    for step, d in enumerate((2, 1, 0, -1), start=1):
        rank, degree = rank + 1, degree + d
        node = f"F{step}"
        classes[node] = p1_class(p1, rank, degree)
        order.append((previous, node))
        previous = node
    return SubobjectLattice(classes, order, top="F4", bottom="0", name="long-chain")


@pytest.fixture
def ideal_p2(p2):
    """``0 < I_x < O`` on P², the ideal sheaf of a point."""
    structure = p2.unit()
    ideal = structure - power_class(p2, 2)
    return SubobjectLattice(
        {"0": p2.zero(), "I": ideal, "O": structure},
        [("0", "I"), ("I", "O")],
        top="O",
        bottom="0",
        name="ideal-p2",
    )


@pytest.fixture
def point_p2(p2):
    return SheafClass.from_chern(power_class(p2, 2), "x")


@pytest.fixture
def broken_commutative_ring():
    """Two degree-1 generators with ``a·b != b·a``."""
    return GradedRing.build(
        2,
        (1, 2, 1),
        [(1, 1, 0, 0, [1]), (1, 1, 0, 1, [1]), (1, 1, 1, 0, [0]), (1, 1, 1, 1, [1])],
        [1],
        name="broken-commutativity",
    )


@pytest.fixture
def broken_associative_ring():
    """P⁴ with ``H·H = 2H²`` so ``(H·H)·H² != H·(H·H²)``."""
    products = [
        (p, q, 0, 0, [2 if (p, q) == (1, 1) else 1])
        for p in range(1, 5)
        for q in range(1, 5 - p)
    ]
    return GradedRing.build(4, (1,) * 5, products, [1], name="broken-associativity")
