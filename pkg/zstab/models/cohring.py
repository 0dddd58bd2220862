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

"""Finite model of the even cohomology ring and numerical sheaf classes.

A ``GradedRing`` stores the degree-wise basis sizes ``b_0..b_n`` (``b_0 = 1``),
rational structure constants for every cup product landing in degree ``≤ n``
and the integration functional on the top degree. Classes are per-degree
rational coefficient vectors; components of degree above ``n`` are dropped
by the cup product.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from zstab.errors import NonEffectiveError, PreconditionError, RingMismatchError
from zstab.models.exact import RationalLike, as_rational

Vector = Tuple[Fraction, ...]
Table = Tuple[Tuple[Vector, ...], ...]


def _unit_vector(size: int, index: int) -> Vector:
    return tuple(Fraction(1) if k == index else Fraction(0) for k in range(size))


def _zero_vector(size: int) -> Vector:
    return (Fraction(0),) * size


@dataclass(frozen=True, eq=False)
class GradedRing:
    """Even cohomology ring with cup product and top-degree integration.

    Rings compare by identity: two rings are the same ring only if they are
    the same object, which is how classes detect a ring mismatch.
    """

    dim: int
    basis_sizes: Tuple[int, ...]
    cup_tables: Mapping[Tuple[int, int], Table]
    integration: Vector
    basis_names: Tuple[Tuple[str, ...], ...] = ()
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise PreconditionError(f"ring dimension must be at least 1, got {self.dim}")
        if len(self.basis_sizes) != self.dim + 1:
            raise PreconditionError("basis_sizes must list one size per degree 0..n")
        if self.basis_sizes[0] != 1 or any(b < 1 for b in self.basis_sizes):
            raise PreconditionError("basis sizes must be positive with b_0 = 1")
        if len(self.integration) != self.basis_sizes[-1]:
            raise PreconditionError("integration functional must match the top basis size")
        for (p, q), table in self.cup_tables.items():
            if p + q > self.dim:
                raise PreconditionError(f"cup table ({p}, {q}) exceeds the top degree")
            if len(table) != self.basis_sizes[p] or any(
                len(row) != self.basis_sizes[q] for row in table
            ):
                raise PreconditionError(f"cup table ({p}, {q}) has the wrong shape")
            for row in table:
                for vector in row:
                    if len(vector) != self.basis_sizes[p + q]:
                        raise PreconditionError(
                            f"cup table ({p}, {q}) result vectors must have length "
                            f"{self.basis_sizes[p + q]}"
                        )
        if not self.basis_names:
            names = tuple(
                tuple(f"e{degree}_{index}" for index in range(size))
                for degree, size in enumerate(self.basis_sizes)
            )
            object.__setattr__(self, "basis_names", names)
        object.__setattr__(self, "cup_tables", MappingProxyType(dict(self.cup_tables)))

    @classmethod
    def build(
        cls,
        dim: int,
        basis_sizes: Sequence[int],
        products: Iterable[Tuple[int, int, int, int, Sequence[RationalLike]]],
        integration: Sequence[RationalLike],
        basis_names: Optional[Sequence[Sequence[str]]] = None,
        name: str = "",
        fill_unit: bool = True,
    ) -> "GradedRing":
        """Assemble a ring from sparse ``(p, q, i, j, result)`` entries.

        Unspecified products are zero. With ``fill_unit`` the products with
        the degree-0 generator default to the identity, so the unit law only
        fails when an entry overrides them.
        """
        sizes = tuple(int(b) for b in basis_sizes)
        if len(sizes) != dim + 1:
            raise PreconditionError("basis_sizes must list one size per degree 0..n")
        cells: Dict[Tuple[int, int], List[List[Vector]]] = {}
        for p in range(dim + 1):
            for q in range(dim + 1 - p):
                rows = []
                for i in range(sizes[p]):
                    row = []
                    for j in range(sizes[q]):
                        if fill_unit and p == 0:
                            row.append(_unit_vector(sizes[q], j))
                        elif fill_unit and q == 0:
                            row.append(_unit_vector(sizes[p], i))
                        else:
                            row.append(_zero_vector(sizes[p + q]))
                    rows.append(row)
                cells[(p, q)] = rows
        for p, q, i, j, result in products:
            if (p, q) not in cells:
                raise PreconditionError(f"cup entry ({p}, {q}) exceeds the top degree {dim}")
            if not (0 <= i < sizes[p] and 0 <= j < sizes[q]):
                raise PreconditionError(f"cup entry ({p}, {q}, {i}, {j}) is out of range")
            vector = tuple(as_rational(v) for v in result)
            if len(vector) != sizes[p + q]:
                raise PreconditionError(
                    f"cup entry ({p}, {q}, {i}, {j}) must have {sizes[p + q]} coefficients"
                )
            cells[(p, q)][i][j] = vector
        tables = {key: tuple(tuple(row) for row in rows) for key, rows in cells.items()}
        names = tuple(tuple(level) for level in basis_names) if basis_names else ()
        return cls(
            dim=dim,
            basis_sizes=sizes,
            cup_tables=tables,
            integration=tuple(as_rational(v) for v in integration),
            basis_names=names,
            name=name,
        )

    def zero(self) -> "GradedClass":
        return GradedClass(self, tuple(_zero_vector(b) for b in self.basis_sizes))

    def unit(self) -> "GradedClass":
        return self.basis_class(0, 0)

    def basis_class(self, degree: int, index: int, coefficient: RationalLike = 1) -> "GradedClass":
        components = [list(_zero_vector(b)) for b in self.basis_sizes]
        components[degree][index] = as_rational(coefficient)
        return GradedClass(self, tuple(tuple(c) for c in components))

    def make_class(self, components: Mapping[int, Sequence[RationalLike]]) -> "GradedClass":
        """Build a class from a sparse ``{degree: coefficients}`` mapping."""
        out = []
        for degree, size in enumerate(self.basis_sizes):
            values = components.get(degree)
            if values is None:
                out.append(_zero_vector(size))
                continue
            vector = tuple(as_rational(v) for v in values)
            if len(vector) != size:
                raise PreconditionError(
                    f"degree {degree} component needs {size} coefficients, got {len(vector)}"
                )
            out.append(vector)
        for degree in components:
            if not 0 <= int(degree) <= self.dim:
                raise PreconditionError(f"degree {degree} is outside 0..{self.dim}")
        return GradedClass(self, tuple(out))

    def __repr__(self) -> str:
        return f"<GradedRing(name={self.name!r}, dim={self.dim}, basis_sizes={self.basis_sizes})>"


@dataclass(frozen=True, eq=False)
class GradedClass:
    """A class with one rational coefficient vector per degree ``0..n``."""

    ring: GradedRing
    components: Tuple[Vector, ...]

    def __post_init__(self):
        if len(self.components) != self.ring.dim + 1:
            raise PreconditionError("a class needs one component per degree 0..n")
        for degree, vector in enumerate(self.components):
            if len(vector) != self.ring.basis_sizes[degree]:
                raise PreconditionError(f"degree {degree} component has the wrong length")

    def _check_ring(self, other: "GradedClass") -> None:
        if other.ring is not self.ring:
            raise RingMismatchError(
                f"classes live in different rings ({self.ring.name!r} vs {other.ring.name!r})"
            )

    def component(self, degree: int) -> Vector:
        if 0 <= degree <= self.ring.dim:
            return self.components[degree]
        return ()

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for vector in self.components for v in vector)

    def degree_is_zero(self, degree: int) -> bool:
        return all(v == 0 for v in self.component(degree))

    def least_nonzero_degree(self) -> Optional[int]:
        for degree in range(self.ring.dim + 1):
            if not self.degree_is_zero(degree):
                return degree
        return None

    def pure_degree(self) -> Optional[int]:
        """The single degree carrying nonzero coefficients, if there is exactly one."""
        degrees = [d for d in range(self.ring.dim + 1) if not self.degree_is_zero(d)]
        return degrees[0] if len(degrees) == 1 else None

    def part(self, degree: int) -> "GradedClass":
        """Keep only the given degree."""
        return GradedClass(
            self.ring,
            tuple(
                vector if d == degree else _zero_vector(len(vector))
                for d, vector in enumerate(self.components)
            ),
        )

    def up_to(self, degree: int) -> "GradedClass":
        """Keep the degrees ``0..degree``."""
        return GradedClass(
            self.ring,
            tuple(
                vector if d <= degree else _zero_vector(len(vector))
                for d, vector in enumerate(self.components)
            ),
        )

    def __add__(self, other: "GradedClass") -> "GradedClass":
        self._check_ring(other)
        return GradedClass(
            self.ring,
            tuple(
                tuple(a + b for a, b in zip(u, v))
                for u, v in zip(self.components, other.components)
            ),
        )

    def __sub__(self, other: "GradedClass") -> "GradedClass":
        self._check_ring(other)
        return GradedClass(
            self.ring,
            tuple(
                tuple(a - b for a, b in zip(u, v))
                for u, v in zip(self.components, other.components)
            ),
        )

    def __neg__(self) -> "GradedClass":
        return self.scale(-1)

    def scale(self, factor: RationalLike) -> "GradedClass":
        factor = as_rational(factor)
        return GradedClass(
            self.ring, tuple(tuple(a * factor for a in vector) for vector in self.components)
        )

    def __mul__(self, other):
        if isinstance(other, GradedClass):
            return cup(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self.ring is other.ring and self.components == other.components

    def __hash__(self) -> int:
        return hash((id(self.ring), self.components))

    def __repr__(self) -> str:
        parts = []
        for degree, vector in enumerate(self.components):
            for index, value in enumerate(vector):
                if value != 0:
                    parts.append(f"{value}*{self.ring.basis_names[degree][index]}")
        return f"<GradedClass({' + '.join(parts) or '0'})>"


def cup(x: GradedClass, y: GradedClass) -> GradedClass:
    """Cup product; components above the top degree are discarded."""
    x._check_ring(y)
    ring = x.ring
    out = [[Fraction(0)] * b for b in ring.basis_sizes]
    for p, xp in enumerate(x.components):
        for q, yq in enumerate(y.components):
            if p + q > ring.dim:
                break
            table = ring.cup_tables[(p, q)]
            target = out[p + q]
            for i, a in enumerate(xp):
                if a == 0:
                    continue
                row = table[i]
                for j, b in enumerate(yq):
                    if b == 0:
                        continue
                    weight = a * b
                    for k, c in enumerate(row[j]):
                        if c != 0:
                            target[k] += weight * c
    return GradedClass(ring, tuple(tuple(v) for v in out))


def integrate(x: GradedClass) -> Fraction:
    """Apply the integration functional to the top-degree component."""
    top = x.components[x.ring.dim]
    return sum((a * w for a, w in zip(top, x.ring.integration)), Fraction(0))


def omega_power(ring: GradedRing, omega: GradedClass, power: int) -> GradedClass:
    """``power``-fold cup product of a pure degree-1 class; power 0 is the unit."""
    if omega.ring is not ring:
        raise RingMismatchError("polarisation does not live in the given ring")
    if omega.pure_degree() != 1:
        raise PreconditionError("the polarisation must be concentrated in degree 1")
    if not 0 <= power <= ring.dim:
        raise PreconditionError(f"power {power} is outside 0..{ring.dim}")
    result = ring.unit()
    for _ in range(power):
        result = cup(result, omega)
    return result


@dataclass(frozen=True)
class RingViolation:
    """One failed ring law, with the basis elements that witness it."""

    law: str
    basis: Tuple[Tuple[int, int], ...]
    detail: str = ""

    def __str__(self) -> str:
        where = ", ".join(f"e{d}_{i}" for d, i in self.basis)
        return f"{self.law} fails at ({where}){': ' + self.detail if self.detail else ''}"


def validate_ring(ring: GradedRing) -> List[RingViolation]:
    """Check the unit, commutativity and associativity laws on basis elements."""
    violations: List[RingViolation] = []
    unit = ring.unit()
    basis = [
        (degree, index, ring.basis_class(degree, index))
        for degree, size in enumerate(ring.basis_sizes)
        for index in range(size)
    ]
    for degree, index, element in basis:
        if cup(unit, element) != element or cup(element, unit) != element:
            violations.append(RingViolation("unit", ((0, 0), (degree, index))))
    for (p, i, x), (q, j, y) in product(basis, repeat=2):
        if p + q > ring.dim or (p, i) > (q, j):
            continue
        if cup(x, y) != cup(y, x):
            violations.append(RingViolation("commutativity", ((p, i), (q, j))))
    for (p, i, x), (q, j, y), (r, k, z) in product(basis, repeat=3):
        if p + q + r > ring.dim:
            continue
        left = cup(cup(x, y), z)
        right = cup(x, cup(y, z))
        if left != right:
            violations.append(
                RingViolation(
                    "associativity",
                    ((p, i), (q, j), (r, k)),
                    f"{left!r} != {right!r}",
                )
            )
    return violations


@dataclass(frozen=True, eq=False)
class SheafClass:
    """Numerical data of a sheaf: its graded Chern character and codimension."""

    chern: GradedClass
    codim: int
    label: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.chern.ring.dim
        if not 0 <= self.codim <= n:
            raise NonEffectiveError(f"codimension {self.codim} is outside 0..{n}")
        for degree in range(self.codim):
            if not self.chern.degree_is_zero(degree):
                raise NonEffectiveError(
                    f"class {self.label or '?'} has ch_{degree} != 0 below its "
                    f"codimension {self.codim}"
                )

    @classmethod
    def from_chern(cls, chern: GradedClass, label: str = "") -> "SheafClass":
        """Declare the codimension as the least degree with a nonzero component."""
        codim = chern.least_nonzero_degree()
        if codim is None:
            raise NonEffectiveError(f"class {label or '?'} is zero and is not a sheaf")
        return cls(chern, codim, label)

    @property
    def ring(self) -> GradedRing:
        return self.chern.ring

    @property
    def dimension(self) -> int:
        return self.ring.dim - self.codim

    def __eq__(self, other) -> bool:
        if not isinstance(other, SheafClass):
            return NotImplemented
        return self.codim == other.codim and self.chern == other.chern

    def __hash__(self) -> int:
        return hash((self.codim, self.chern))

    def __repr__(self) -> str:
        return f"<SheafClass(label={self.label!r}, codim={self.codim}, chern={self.chern!r})>"


def quotient_class(sheaf: SheafClass, sub: SheafClass, label: str = "") -> SheafClass:
    """Class of ``sheaf / sub`` by componentwise subtraction, re-validated."""
    return SheafClass.from_chern(
        sheaf.chern - sub.chern, label or f"{sheaf.label}/{sub.label}"
    )
