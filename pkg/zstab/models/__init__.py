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

"""Domain types for ZStab."""

from zstab.models.exact import (
    CPoly,
    ExtReal,
    GaussianRational,
    Ordering,
    RPoly,
    compare_at_infinity,
    compare_at_zero_plus,
    im_conj_product,
    lex_compare,
    sign_at_infinity,
    sign_at_zero_plus,
)
from zstab.models.cohring import (
    GradedClass,
    GradedRing,
    RingViolation,
    SheafClass,
    cup,
    integrate,
    omega_power,
    quotient_class,
    validate_ring,
)
from zstab.models.stabvec import HalfPlaneWitness, StabilityVector
from zstab.models.charge import (
    ChargeData,
    DegreeVector,
    DestabilizationReport,
    SlopeVector,
    Verdict,
)
from zstab.models.lattice import (
    ClassicalSlope,
    Filtration,
    GammaDegree,
    GammaSpec,
    GiesekerReduced,
    GradedPiece,
    LexValue,
    MuCondition,
    OrderedValue,
    PolyAtInfinity,
    PolyAtZero,
    PZd,
    SlopeLex,
    SubobjectLattice,
)

__all__ = [
    "CPoly",
    "ExtReal",
    "GaussianRational",
    "Ordering",
    "RPoly",
    "compare_at_infinity",
    "compare_at_zero_plus",
    "im_conj_product",
    "lex_compare",
    "sign_at_infinity",
    "sign_at_zero_plus",
    "GradedClass",
    "GradedRing",
    "RingViolation",
    "SheafClass",
    "cup",
    "integrate",
    "omega_power",
    "quotient_class",
    "validate_ring",
    "HalfPlaneWitness",
    "StabilityVector",
    "ChargeData",
    "DegreeVector",
    "DestabilizationReport",
    "SlopeVector",
    "Verdict",
    "ClassicalSlope",
    "Filtration",
    "GammaDegree",
    "GammaSpec",
    "GiesekerReduced",
    "GradedPiece",
    "LexValue",
    "MuCondition",
    "OrderedValue",
    "PolyAtInfinity",
    "PolyAtZero",
    "PZd",
    "SlopeLex",
    "SubobjectLattice",
]
