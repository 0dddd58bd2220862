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

"""Charge data, generalised degrees, slope vectors and destabilisation verdicts."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Tuple

from zstab.errors import PreconditionError, RingMismatchError
from zstab.models.cohring import GradedClass, GradedRing
from zstab.models.exact import POS_INF, ExtReal, RPoly, sign_at_zero_plus
from zstab.models.stabvec import StabilityVector


class Verdict(str, Enum):
    """Outcome of asking whether ``F`` destabilises ``E``."""

    STRICT = "strict"
    WEAK = "weak"
    NO = "no"

    @classmethod
    def from_sign(cls, sign: int) -> "Verdict":
        if sign > 0:
            return cls.STRICT
        if sign == 0:
            return cls.WEAK
        return cls.NO

    @property
    def destabilizes(self) -> bool:
        return self is not Verdict.NO


@dataclass(frozen=True)
class ChargeData:
    """The data ``(ω, U, ρ)`` of a polynomial central charge on a ring.

    ``twist`` holds ``U_0..U_n`` with ``U_0`` the unit and ``U_j`` of pure
    degree ``j`` (or zero). The polarisation ``ω`` is user-asserted ample;
    only its degree is checked here.
    """

    ring: GradedRing
    omega: GradedClass
    twist: Tuple[GradedClass, ...]
    rho: StabilityVector
    name: str = field(default="", compare=False)

    def __post_init__(self):
        ring = self.ring
        if self.omega.ring is not ring:
            raise RingMismatchError("polarisation does not live in the charge ring")
        if self.omega.pure_degree() != 1:
            raise PreconditionError("the polarisation must be concentrated in degree 1")
        twist = tuple(self.twist)
        object.__setattr__(self, "twist", twist)
        if len(twist) != ring.dim + 1:
            raise PreconditionError(f"twist needs U_0..U_{ring.dim}, got {len(twist)} classes")
        for j, u in enumerate(twist):
            if u.ring is not ring:
                raise RingMismatchError(f"twist class U_{j} does not live in the charge ring")
            if j == 0:
                if u != ring.unit():
                    raise PreconditionError("U_0 must be the unit class")
            elif not u.is_zero and u.pure_degree() != j:
                raise PreconditionError(f"U_{j} must be concentrated in degree {j}")
        if self.rho.n != ring.dim:
            raise PreconditionError(
                f"stability vector has {len(self.rho)} entries, ring needs {ring.dim + 1}"
            )

    @classmethod
    def untwisted(
        cls, ring: GradedRing, omega: GradedClass, rho: StabilityVector, name: str = ""
    ) -> "ChargeData":
        twist = (ring.unit(),) + tuple(ring.zero() for _ in range(ring.dim))
        return cls(ring, omega, twist, rho, name)

    @classmethod
    def with_total_twist(
        cls,
        ring: GradedRing,
        omega: GradedClass,
        total: GradedClass,
        rho: StabilityVector,
        name: str = "",
    ) -> "ChargeData":
        """Split a total class such as ``Td(X)`` into its graded pieces ``U_j``."""
        return cls(ring, omega, tuple(total.part(j) for j in range(ring.dim + 1)), rho, name)

    @property
    def dim(self) -> int:
        return self.ring.dim

    def with_rho(self, rho: StabilityVector) -> "ChargeData":
        return ChargeData(self.ring, self.omega, self.twist, rho, self.name)


@dataclass(frozen=True)
class DegreeVector:
    """Generalised degrees ``deg_0..deg_n`` of a class of codimension ``codim``."""

    entries: Tuple[Fraction, ...]
    codim: int

    @property
    def rank(self) -> Fraction:
        return self.entries[self.codim]

    def entry(self, index: int) -> Fraction:
        """``deg_index``, zero outside ``0..n``."""
        if 0 <= index < len(self.entries):
            return self.entries[index]
        return Fraction(0)

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def to_list(self) -> list:
        return [str(v) for v in self.entries]


@dataclass(frozen=True)
class SlopeVector:
    """``(+inf, .., +inf, 1, μ_(c+1), .., μ_n)`` with the 1 at the codimension."""

    entries: Tuple[ExtReal, ...]

    @classmethod
    def from_degrees(cls, degrees: DegreeVector) -> "SlopeVector":
        rank = degrees.rank
        return cls(
            tuple(
                POS_INF if i < degrees.codim else ExtReal(value / rank)
                for i, value in enumerate(degrees.entries)
            )
        )

    @property
    def codim(self) -> int:
        for index, value in enumerate(self.entries):
            if not value.is_infinite:
                return index
        return len(self.entries)

    def finite_tail(self) -> Tuple[Fraction, ...]:
        return tuple(v.value for v in self.entries if not v.is_infinite)

    def __getitem__(self, index: int) -> ExtReal:
        return self.entries[index]

    def __len__(self) -> int:
        return len(self.entries)

    def to_list(self) -> list:
        return [str(v) for v in self.entries]


@dataclass(frozen=True)
class DestabilizationReport:
    """A verdict with the polynomial that decided it.

    ``order`` is the lowest power with a nonzero coefficient (``None`` for the
    zero polynomial) and ``leading_coefficient`` is that coefficient.
    """

    verdict: Verdict
    polynomial: RPoly
    method: str = "sign"

    @property
    def order(self) -> Optional[int]:
        return self.polynomial.lowest_index

    @property
    def leading_coefficient(self) -> Fraction:
        return self.polynomial.lowest_coefficient

    @classmethod
    def from_polynomial(cls, polynomial: RPoly, method: str = "sign") -> "DestabilizationReport":
        return cls(Verdict.from_sign(sign_at_zero_plus(polynomial)), polynomial, method)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "order": self.order,
            "leading_coefficient": str(self.leading_coefficient),
            "polynomial": [str(c) for c in self.polynomial.coeffs],
            "method": self.method,
        }
