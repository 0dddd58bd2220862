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

"""Stability vectors and half-plane witnesses."""

from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

from zstab.errors import PreconditionError
from zstab.models.exact import I, ONE, GaussianRational


@dataclass(frozen=True)
class StabilityVector:
    """The weights ``ρ_0..ρ_n`` of the polarisation powers in a central charge.

    The constructor enforces ``Im ρ_n > 0`` and ``Im(conj(ρ_n) ρ_{n-1}) > 0``.
    ``StabilityVector.unnormalized`` drops the first condition; such vectors
    are flagged and only the sign route accepts them.
    """

    rho: Tuple[GaussianRational, ...]
    normalized: bool = True

    def __post_init__(self):
        entries = tuple(GaussianRational.of(value) for value in self.rho)
        object.__setattr__(self, "rho", entries)
        if len(entries) < 2:
            raise PreconditionError("a stability vector needs at least ρ_0 and ρ_1")
        top, below = entries[-1], entries[-2]
        if top.im_conj(below) <= 0:
            raise PreconditionError(
                f"Im(conj(ρ_n)·ρ_(n-1)) must be positive, got {top.im_conj(below)}"
            )
        if self.normalized and top.im <= 0:
            raise PreconditionError(f"Im(ρ_n) must be positive, got {top.im}")

    @classmethod
    def unnormalized(cls, rho: Sequence) -> "StabilityVector":
        return cls(tuple(rho), normalized=False)

    @property
    def n(self) -> int:
        return len(self.rho) - 1

    def __getitem__(self, index: int) -> GaussianRational:
        return self.rho[index]

    def __len__(self) -> int:
        return len(self.rho)

    def __iter__(self) -> Iterator[GaussianRational]:
        return iter(self.rho)

    def entry(self, index: int) -> GaussianRational:
        """``ρ_index``, zero outside ``0..n``."""
        if 0 <= index <= self.n:
            return self.rho[index]
        return GaussianRational(0, 0)

    def rotated(self, factor) -> "StabilityVector":
        """Multiply every entry by a nonzero Gaussian rational."""
        factor = GaussianRational.of(factor)
        if factor.is_zero:
            raise PreconditionError("cannot rotate by zero")
        entries = tuple(factor * value for value in self.rho)
        return StabilityVector(entries, normalized=entries[-1].im > 0)

    def normalize(self) -> "StabilityVector":
        """Rotate by a power of ``i`` so that ``Im ρ_n > 0``."""
        return self.rotated(self.normalizing_factor())

    def normalizing_factor(self) -> GaussianRational:
        top = self.rho[-1]
        if top.im > 0:
            return ONE
        if top.im < 0:
            return -ONE
        # ρ_n is a nonzero real here
        return I if top.re > 0 else -I

    def to_dict(self) -> dict:
        return {
            "rho": [[str(v.re), str(v.im)] for v in self.rho],
            "normalized": self.normalized,
        }

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.rho) + ")"


@dataclass(frozen=True)
class HalfPlaneWitness:
    """A rotation ``λ = -conj(ρ_k)`` placing every used ``λρ_i`` in the closed half plane.

    ``memberships`` records, per used index, whether ``λρ_i`` landed in the
    open upper half plane (``"upper"``) or on the negative real ray
    (``"negative-real"``).
    """

    rotator_index: int
    multiplier: GaussianRational
    memberships: Tuple[Tuple[int, str], ...]

    def to_dict(self) -> dict:
        return {
            "rotator_index": self.rotator_index,
            "multiplier": [str(self.multiplier.re), str(self.multiplier.im)],
            "memberships": {str(index): where for index, where in self.memberships},
        }
