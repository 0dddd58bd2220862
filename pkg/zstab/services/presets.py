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

"""Built-in geometries, stability vectors and the bundled example fixtures.

Everything here is compiled in so that the reproductions run from a bare
checkout; ``scripts/export_samples.py`` writes the fixtures out as JSON.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Sequence

from zstab.errors import PreconditionError, RingMismatchError
from zstab.models.charge import ChargeData
from zstab.models.cohring import GradedClass, GradedRing, SheafClass, cup, quotient_class
from zstab.models.exact import GaussianRational, I
from zstab.models.lattice import SubobjectLattice
from zstab.models.stabvec import StabilityVector

MAX_TODD_DEGREE = 4


@lru_cache(maxsize=None)
def projective_space_ring(n: int) -> GradedRing:
    """``ℚ[H]/(H^(n+1))`` with ``∫ H^n = 1``; cached so each ``n`` is one ring object."""
    if n < 1:
        raise PreconditionError(f"projective space needs n >= 1, got {n}")
    products = [(p, q, 0, 0, (1,)) for p in range(1, n + 1) for q in range(1, n + 1 - p)]
    return GradedRing.build(
        dim=n,
        basis_sizes=(1,) * (n + 1),
        products=products,
        integration=(1,),
        basis_names=[("1",), ("H",)] + [(f"H^{i}",) for i in range(2, n + 1)],
        name=f"P{n}",
    )


def hyperplane(ring: GradedRing, multiple=1) -> GradedClass:
    """``multiple · H`` on a projective space ring."""
    return ring.basis_class(1, 0, multiple)


def power_class(ring: GradedRing, degree: int, coefficient=1) -> GradedClass:
    """``coefficient · H^degree`` on a projective space ring."""
    return ring.basis_class(degree, 0, coefficient)


def todd_class(ring: GradedRing, chern_classes: Sequence[GradedClass]) -> GradedClass:
    """Todd class from Chern classes ``c_1, c_2, ..`` (degree ``i`` for ``c_i``).

    The Todd polynomials are known here through degree 4; higher-dimensional
    rings need ``Td(X)`` supplied directly.
    """
    if ring.dim > MAX_TODD_DEGREE:
        raise PreconditionError(
            f"Todd polynomials are built in through degree {MAX_TODD_DEGREE}; "
            f"supply Td(X) directly for dimension {ring.dim}"
        )
    cs = list(chern_classes) + [ring.zero()] * (MAX_TODD_DEGREE - len(chern_classes))
    for i, c in enumerate(cs, start=1):
        if c.ring is not ring:
            raise RingMismatchError(f"c_{i} does not live in the given ring")
        if not c.is_zero and c.pure_degree() != i:
            raise PreconditionError(f"c_{i} must be concentrated in degree {i}")
    c1, c2, c3, c4 = cs[:4]
    c1c1 = cup(c1, c1)
    td = (
        ring.unit()
        + c1.scale(Fraction(1, 2))
        + (c1c1 + c2).scale(Fraction(1, 12))
        + cup(c1, c2).scale(Fraction(1, 24))
        + (
            -cup(c1c1, c1c1)
            + cup(c1c1, c2).scale(4)
            + cup(c2, c2).scale(3)
            + cup(c1, c3)
            - c4
        ).scale(Fraction(1, 720))
    )
    return td


def projective_space_chern(n: int) -> List[GradedClass]:
    """``c_i(P^n) = C(n+1, i) H^i`` for ``i = 1..n``."""
    ring = projective_space_ring(n)
    return [power_class(ring, i, comb(n + 1, i)) for i in range(1, n + 1)]


def projective_space_todd(n: int) -> GradedClass:
    return todd_class(projective_space_ring(n), projective_space_chern(n))


def line_bundle_chern(ring: GradedRing, d: int) -> GradedClass:
    """``ch(O(d)) = exp(dH)`` on a projective space ring."""
    return ring.make_class(
        {i: [Fraction(d**i, factorial(i))] for i in range(ring.dim + 1)}
    )


# -- stability vectors ----------------------------------------------------------


def dhym_raw_vector(n: int) -> StabilityVector:
    """``ρ_k = -(-i)^k / k!`` read off ``ε^n (-exp(-i ω/ε) ∪ ch)^(n,n)``; unnormalised."""
    return StabilityVector.unnormalized(
        [-_i_power(-k) * Fraction(1, factorial(k)) for k in range(n + 1)]
    )


def dhym_vector(n: int) -> StabilityVector:
    """The dHYM vector rotated by ``-i^(n+1)``: ``ρ_k = i^(n+1-k) / k!``, so ``ρ_n = i/n!``."""
    return StabilityVector([_i_power(n + 1 - k) * Fraction(1, factorial(k)) for k in range(n + 1)])


def leung_vector(n: int) -> StabilityVector:
    """``ρ_n = i`` and ``ρ_k = (i - 1)/k!`` for ``k < n``."""
    entries = [GaussianRational(-1, 1) * Fraction(1, factorial(k)) for k in range(n)]
    return StabilityVector(entries + [I])


def coherent_vector(n: int) -> StabilityVector:
    """``ρ_j = (j - n) + i``: arguments strictly decrease with ``j`` inside ``(0, π)``.

    Adapted to coherent sheaves; with the Todd twist it extends Gieseker
    stability to every coherent sheaf.
    """
    return StabilityVector([GaussianRational(j - n, 1) for j in range(n + 1)])


def _i_power(k: int) -> GaussianRational:
    return (GaussianRational(1, 0), I, GaussianRational(-1, 0), GaussianRational(0, -1))[k % 4]


VECTOR_PRESETS = {
    "dhym": dhym_vector,
    "dhym-raw": dhym_raw_vector,
    "leung": leung_vector,
    "gieseker": coherent_vector,
    "coherent": coherent_vector,
}


def vector_preset(name: str, n: int) -> StabilityVector:
    try:
        factory = VECTOR_PRESETS[name]
    except KeyError:
        raise PreconditionError(
            f"unknown vector preset {name!r}; choose from {', '.join(sorted(VECTOR_PRESETS))}"
        ) from None
    if n < 1:
        raise PreconditionError(f"preset dimension must be at least 1, got {n}")
    return factory(n)


# -- fixtures -------------------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    """A self-contained example: named charges, classes and lattices on one ring."""

    name: str
    ring: GradedRing
    charges: Dict[str, ChargeData]
    classes: Dict[str, SheafClass]
    lattices: Dict[str, SubobjectLattice]


def p2_split_fixture() -> Fixture:
    """``O ⊕ O(1)`` on ``P²`` with the Todd twist; ``O(1)`` destabilises it."""
    ring = projective_space_ring(2)
    omega = hyperplane(ring)
    todd = projective_space_todd(2)
    gieseker = ChargeData.with_total_twist(ring, omega, todd, coherent_vector(2), "gieseker")
    o = line_bundle_chern(ring, 0)
    o1 = line_bundle_chern(ring, 1)
    split = o + o1
    lattice = SubobjectLattice(
        {"0": ring.zero(), "O": o, "O(1)": o1, "E": split},
        [("0", "O"), ("0", "O(1)"), ("O", "E"), ("O(1)", "E")],
        top="E",
        bottom="0",
        name="p2-split",
    )
    classes = {
        "O": SheafClass.from_chern(o, "O"),
        "O(1)": SheafClass.from_chern(o1, "O(1)"),
        "E": SheafClass.from_chern(split, "E"),
    }
    return Fixture("p2-split", ring, {"gieseker": gieseker}, classes, {"p2-split": lattice})


def dhym_fixture(n: int = 3) -> Fixture:
    """``O_X ⊃ I_V`` on ``P^n`` under the dHYM charge, ``V`` a codimension-3 linear subspace.

    ``ch(O_V) = (1 - exp(-H))^3`` by the Koszul resolution; on ``P³`` this
    is the class of a point.
    """
    if n < 3:
        raise PreconditionError(f"the dHYM counter-example needs n >= 3, got {n}")
    ring = projective_space_ring(n)
    omega = hyperplane(ring)
    charge = ChargeData.untwisted(ring, omega, dhym_vector(n), "dhym")
    structure = SheafClass.from_chern(ring.unit(), "O")
    koszul = ring.unit() - line_bundle_chern(ring, -1)
    subspace = SheafClass.from_chern(cup(cup(koszul, koszul), koszul), "O_V")
    ideal = quotient_class(structure, subspace, "I_V")
    lattice = SubobjectLattice(
        {"0": ring.zero(), "I_V": ideal.chern, "O": structure.chern},
        [("0", "I_V"), ("I_V", "O")],
        top="O",
        bottom="0",
        name="ideal-sheaf",
    )
    return Fixture(
        f"dhym-p{n}",
        ring,
        {"dhym": charge},
        {"O": structure, "O_V": subspace, "I_V": ideal},
        {"ideal-sheaf": lattice},
    )


def pathological_fixture() -> Fixture:
    """Two incomparable equal-slope maximisers whose join has a smaller slope.

    Classes are not additive over the join, so the lattice is loaded in
    non-strict mode; genuine sub-sheaf lattices cannot look like this.
    """
    ring = projective_space_ring(1)
    omega = hyperplane(ring)
    charge = ChargeData.untwisted(ring, omega, coherent_vector(1), "slope")
    a = ring.make_class({0: [1], 1: [1]})
    top = ring.make_class({0: [3], 1: [1]})
    lattice = SubobjectLattice(
        {"0": ring.zero(), "A": a, "B": a, "E": top},
        [("0", "A"), ("0", "B"), ("A", "E"), ("B", "E")],
        top="E",
        bottom="0",
        name="pathological",
        strict=False,
    )
    classes = {"A": SheafClass.from_chern(a, "A"), "E": SheafClass.from_chern(top, "E")}
    return Fixture("pathological", ring, {"slope": charge}, classes, {"pathological": lattice})


FIXTURES = {
    "p2-split": p2_split_fixture,
    "dhym-p3": dhym_fixture,
    "pathological": pathological_fixture,
}
