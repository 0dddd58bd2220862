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

"""Seeded random instances for the oracle suites and the property tests.

Generators take an explicit ``random.Random`` so every run is reproducible
from its seed.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from zstab.models.charge import ChargeData, Verdict
from zstab.models.cohring import GradedClass, GradedRing, SheafClass, quotient_class
from zstab.models.exact import CPoly, GaussianRational, sign_at_zero_plus
from zstab.models.stabvec import StabilityVector
from zstab.services.charge import (
    a_p_coefficient,
    central_charge,
    destabilizes_lex,
    destabilizes_ratio,
    destabilizes_sign,
)
from zstab.services.presets import hyperplane, projective_space_ring
from zstab.services.stabvec import grid_entries, is_adapted, is_stability_vector

logger = logging.getLogger(__name__)


def random_rational(rng: random.Random, bound: int = 10, max_denominator: int = 6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_denominator))


def random_gaussian(rng: random.Random, bound: int = 10) -> GaussianRational:
    return GaussianRational(random_rational(rng, bound), random_rational(rng, bound))


def random_cpoly(rng: random.Random, max_degree: int = 8, bound: int = 10) -> CPoly:
    return CPoly(tuple(random_gaussian(rng, bound) for _ in range(rng.randint(0, max_degree + 1))))


def random_adapted_vector(rng: random.Random, n: int, d: int, bound: int = 3) -> StabilityVector:
    """A grid stability vector adapted to sheaves of dimension ``d``."""
    entries = grid_entries(bound)
    while True:
        rho = [rng.choice(entries) for _ in range(n + 1)]
        if not is_stability_vector(rho):
            continue
        vector = StabilityVector(rho)
        if is_adapted(vector, d):
            return vector


def random_class(
    rng: random.Random, ring: GradedRing, codim: int, bound: int = 5, label: str = ""
) -> SheafClass:
    """A class of the given codimension with a positive leading coefficient."""
    components = {}
    for degree in range(codim, ring.dim + 1):
        size = ring.basis_sizes[degree]
        if degree == codim:
            components[degree] = [rng.randint(1, bound) for _ in range(size)]
        else:
            components[degree] = [random_rational(rng, bound, 3) for _ in range(size)]
    return SheafClass(ring.make_class(components), codim, label)


def random_twist(rng: random.Random, ring: GradedRing, bound: int = 3) -> Tuple[GradedClass, ...]:
    return (ring.unit(),) + tuple(
        ring.basis_class(j, 0, random_rational(rng, bound, 4)) for j in range(1, ring.dim + 1)
    )


@dataclass(frozen=True)
class OracleInstance:
    charge: ChargeData
    sheaf: SheafClass
    sub: SheafClass


def random_instance(rng: random.Random, max_dim: int = 4, rho_bound: int = 3) -> OracleInstance:
    """Equal-codimension pair on ``P^n`` with ``ρ`` adapted to their dimension."""
    n = rng.randint(1, max_dim)
    ring = projective_space_ring(n)
    codim = rng.randint(0, n)
    rho = random_adapted_vector(rng, n, n - codim, rho_bound)
    omega = hyperplane(ring, rng.randint(1, 3))
    charge = ChargeData(ring, omega, random_twist(rng, ring), rho, f"random-P{n}")
    return OracleInstance(
        charge,
        random_class(rng, ring, codim, label="E"),
        random_class(rng, ring, codim, label="F"),
    )


@dataclass
class OracleSummary:
    """Agreement counts of the three routes, the ``a_p`` sum and additivity of ``Z``."""

    instances: int = 0
    verdicts: dict = field(default_factory=lambda: {v.value: 0 for v in Verdict})
    ratio_checked: int = 0
    route_mismatches: List[int] = field(default_factory=list)
    ratio_mismatches: List[int] = field(default_factory=list)
    additivity_failures: List[int] = field(default_factory=list)
    coefficient_mismatches: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (
            self.route_mismatches
            or self.ratio_mismatches
            or self.additivity_failures
            or self.coefficient_mismatches
        )

    def to_dict(self) -> dict:
        return {
            "instances": self.instances,
            "verdicts": dict(self.verdicts),
            "ratio_checked": self.ratio_checked,
            "route_mismatches": list(self.route_mismatches),
            "ratio_mismatches": list(self.ratio_mismatches),
            "additivity_failures": list(self.additivity_failures),
            "coefficient_mismatches": [list(m) for m in self.coefficient_mismatches],
        }


@dataclass(frozen=True)
class InstanceCheck:
    """Outcome of one oracle instance.

    ``ratio_agrees`` is None when ``Im Z_ε`` of either class is not positive
    at ``0⁺`` and the ratio route does not apply.
    """

    verdict: Verdict
    lex_agrees: bool
    ratio_agrees: Optional[bool]
    additive: bool
    coefficient_mismatches: List[int]


def is_additive(cd: ChargeData, sheaf: SheafClass, sub: SheafClass) -> bool:
    """``Z(E ⊕ F) = Z(F) + Z((E ⊕ F) / F)`` with the quotient formed by subtraction."""
    extension = SheafClass.from_chern(sheaf.chern + sub.chern, "E+F")
    quotient = quotient_class(extension, sub)
    return quotient.chern == sheaf.chern and central_charge(cd, extension) == (
        central_charge(cd, sub) + central_charge(cd, quotient)
    )


def _ratio_applies(cd: ChargeData, sheaf: SheafClass, sub: SheafClass) -> bool:
    return all(
        sign_at_zero_plus(central_charge(cd, c).imag_part()) > 0 for c in (sheaf, sub)
    )


def check_instance(instance: OracleInstance) -> InstanceCheck:
    """Compare the sign, lex and ratio routes and every ``a_p`` with the product coefficient."""
    cd, sheaf, sub = instance.charge, instance.sheaf, instance.sub
    sign = destabilizes_sign(cd, sheaf, sub)
    lex = destabilizes_lex(cd, sheaf, sub)
    ratio_agrees = None
    if _ratio_applies(cd, sheaf, sub):
        ratio_agrees = destabilizes_ratio(cd, sheaf, sub).verdict is sign.verdict
    c, n = sheaf.codim, cd.dim
    bad = [
        p
        for p in range(2 * c, 2 * n + 1)
        if a_p_coefficient(cd, sheaf, sub, p) != sign.polynomial.coefficient(p)
    ]
    return InstanceCheck(
        verdict=sign.verdict,
        lex_agrees=sign.verdict is lex,
        ratio_agrees=ratio_agrees,
        additive=is_additive(cd, sheaf, sub),
        coefficient_mismatches=bad,
    )


def run_oracle(seed: int, instances: int, max_dim: int = 4, rho_bound: int = 3) -> OracleSummary:
    rng = random.Random(seed)
    summary = OracleSummary()
    for index in range(instances):
        check = check_instance(random_instance(rng, max_dim, rho_bound))
        summary.instances += 1
        summary.verdicts[check.verdict.value] += 1
        if not check.lex_agrees:
            summary.route_mismatches.append(index)
        if check.ratio_agrees is not None:
            summary.ratio_checked += 1
            if not check.ratio_agrees:
                summary.ratio_mismatches.append(index)
        if not check.additive:
            summary.additivity_failures.append(index)
        summary.coefficient_mismatches.extend((index, p) for p in check.coefficient_mismatches)
    logger.info(
        "Oracle seed=%d: %d instances, %d route mismatches, %d ratio checks",
        seed,
        summary.instances,
        len(summary.route_mismatches),
        summary.ratio_checked,
    )
    return summary
