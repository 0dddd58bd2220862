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

"""Finite sub-object lattices, filtrations and the μ-conditions evaluated on them."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from zstab.errors import NonEffectiveError, PreconditionError, RingMismatchError
from zstab.models.charge import ChargeData
from zstab.models.cohring import GradedClass, GradedRing, SheafClass
from zstab.models.exact import (
    ExtReal,
    Ordering,
    RPoly,
    compare_at_infinity,
    compare_at_zero_plus,
    lex_compare,
)

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]


class SubobjectLattice:
    """A finite lattice of sub-objects of ``top``, each labelled by a class.

    The order given through ``leq`` is closed reflexively and transitively,
    and ``bottom <= x <= top`` is implied for every node. Join and meet
    tables are derived from the order; supplied tables must agree with it.
    With ``validate`` the class invariants are checked at construction:
    the bottom class is zero, every interval difference is an effective
    class, and in ``strict`` mode classes are additive over joins and meets.
    """

    def __init__(
        self,
        classes: Mapping[str, GradedClass],
        leq: Iterable[Pair],
        top: str,
        bottom: str,
        join: Optional[Mapping[Pair, str]] = None,
        meet: Optional[Mapping[Pair, str]] = None,
        name: str = "",
        strict: bool = True,
        validate: bool = True,
    ):
        self.name = name
        self.strict = strict
        self.ids: Tuple[str, ...] = tuple(classes)
        self.classes: Mapping[str, GradedClass] = MappingProxyType(dict(classes))
        self.top = top
        self.bottom = bottom
        for node in (top, bottom):
            if node not in self.classes:
                raise PreconditionError(f"lattice {name!r} has no node {node!r}")
        rings = {id(c.ring) for c in self.classes.values()}
        if len(rings) > 1:
            raise RingMismatchError(f"lattice {name!r} mixes classes from different rings")

        self._leq: FrozenSet[Pair] = self._closure(leq)
        self._join = self._bound_table(join, upper=True)
        self._meet = self._bound_table(meet, upper=False)
        if validate:
            self.validate()

    # -- order ---------------------------------------------------------------

    def _closure(self, pairs: Iterable[Pair]) -> FrozenSet[Pair]:
        relation = {(x, x) for x in self.ids}
        for x in self.ids:
            relation.add((self.bottom, x))
            relation.add((x, self.top))
        for a, b in pairs:
            if a not in self.classes or b not in self.classes:
                raise PreconditionError(f"order pair ({a}, {b}) names an unknown node")
            relation.add((a, b))
        for k in self.ids:
            for i in self.ids:
                if (i, k) not in relation:
                    continue
                for j in self.ids:
                    if (k, j) in relation:
                        relation.add((i, j))
        for a, b in relation:
            if a != b and (b, a) in relation:
                raise PreconditionError(f"order is not antisymmetric on ({a}, {b})")
        return frozenset(relation)

    def _bound_table(self, given: Optional[Mapping[Pair, str]], upper: bool) -> Dict[Pair, str]:
        label = "join" if upper else "meet"
        table: Dict[Pair, str] = {}
        for a, b in product(self.ids, repeat=2):
            if upper:
                bounds = [x for x in self.ids if self.leq(a, x) and self.leq(b, x)]
                best = [u for u in bounds if all(self.leq(u, v) for v in bounds)]
            else:
                bounds = [x for x in self.ids if self.leq(x, a) and self.leq(x, b)]
                best = [u for u in bounds if all(self.leq(v, u) for v in bounds)]
            if len(best) != 1:
                raise PreconditionError(f"nodes {a} and {b} have no {label} in the stated order")
            table[(a, b)] = best[0]
        for (a, b), c in (given or {}).items():
            if (a, b) not in table:
                raise PreconditionError(f"{label} entry ({a}, {b}) names an unknown node")
            if table[(a, b)] != c:
                raise PreconditionError(
                    f"{label}({a}, {b}) = {c} disagrees with the order, which gives {table[(a, b)]}"
                )
        return table

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self._leq

    def lt(self, a: str, b: str) -> bool:
        return a != b and (a, b) in self._leq

    def join(self, a: str, b: str) -> str:
        return self._join[(a, b)]

    def meet(self, a: str, b: str) -> str:
        return self._meet[(a, b)]

    @cached_property
    def upper_covers(self) -> Mapping[str, Tuple[str, ...]]:
        """Nodes directly above each node, with nothing in between."""
        covers = {}
        for a in self.ids:
            above = [b for b in self.ids if self.lt(a, b)]
            covers[a] = tuple(
                b for b in above if not any(self.lt(a, m) and self.lt(m, b) for m in above)
            )
        return MappingProxyType(covers)

    # -- classes -------------------------------------------------------------

    @property
    def ring(self) -> GradedRing:
        return self.classes[self.top].ring

    def class_of(self, node: str) -> GradedClass:
        try:
            return self.classes[node]
        except KeyError:
            raise PreconditionError(f"lattice {self.name!r} has no node {node!r}") from None

    def sheaf(self, node: str) -> SheafClass:
        """The class of a nonzero node as a sheaf class labelled by its id."""
        if node == self.bottom:
            raise PreconditionError("the bottom node is the zero object")
        return SheafClass.from_chern(self.class_of(node), label=node)

    def difference(self, lower: str, upper: str) -> SheafClass:
        """Class of the quotient ``upper / lower``."""
        if not self.lt(lower, upper):
            raise PreconditionError(f"{lower} is not strictly below {upper}")
        return SheafClass.from_chern(
            self.class_of(upper) - self.class_of(lower), label=f"{upper}/{lower}"
        )

    def nonzero(self) -> Tuple[str, ...]:
        return tuple(x for x in self.ids if x != self.bottom)

    def interior(self) -> Tuple[str, ...]:
        """Nodes strictly between bottom and top."""
        return tuple(x for x in self.ids if x not in (self.bottom, self.top))

    def complements(self, node: str) -> Tuple[str, ...]:
        """Direct-sum complements: meet is bottom, join is top, classes add up."""
        target = self.class_of(self.top)
        return tuple(
            c
            for c in self.ids
            if self.meet(node, c) == self.bottom
            and self.join(node, c) == self.top
            and self.class_of(node) + self.class_of(c) == target
        )

    def interval(self, lower: str, upper: str) -> "SubobjectLattice":
        """The lattice ``[lower, upper]`` with classes shifted by ``-class(lower)``."""
        if not self.leq(lower, upper):
            raise PreconditionError(f"{lower} is not below {upper}")
        shift = self.class_of(lower)
        members = [x for x in self.ids if self.leq(lower, x) and self.leq(x, upper)]
        return SubobjectLattice(
            {x: self.class_of(x) - shift for x in members},
            [(a, b) for a, b in self._leq if a in members and b in members],
            top=upper,
            bottom=lower,
            name=f"{self.name}[{lower},{upper}]",
            strict=self.strict,
            validate=False,
        )

    def renamed(self, mapping: Mapping[str, str], order: Optional[Iterable[str]] = None):
        """Copy with node ids renamed; ``order`` sets the new iteration order."""
        ids = list(order) if order is not None else [mapping[x] for x in self.ids]
        inverse = {v: k for k, v in mapping.items()}
        return SubobjectLattice(
            {x: self.class_of(inverse[x]) for x in ids},
            [(mapping[a], mapping[b]) for a, b in self._leq],
            top=mapping[self.top],
            bottom=mapping[self.bottom],
            name=self.name,
            strict=self.strict,
            validate=False,
        )

    # -- validation ----------------------------------------------------------

    def validate(self) -> None:
        """Check the class invariants; raises on the first violation."""
        if not self.class_of(self.bottom).is_zero:
            raise PreconditionError(f"bottom node {self.bottom!r} must carry the zero class")
        for a, b in sorted(self._leq):
            if a == b:
                continue
            try:
                self.difference(a, b)
            except NonEffectiveError as exc:
                raise NonEffectiveError(
                    f"quotient {b}/{a} in lattice {self.name!r} is not effective: {exc.detail}"
                ) from exc
        if self.strict:
            for a, b in product(self.ids, repeat=2):
                if a >= b:
                    continue
                joined = self.class_of(self.join(a, b)) + self.class_of(self.meet(a, b))
                if joined != self.class_of(a) + self.class_of(b):
                    raise PreconditionError(
                        f"classes are not additive over join/meet of {a} and {b} "
                        f"in lattice {self.name!r}"
                    )
        logger.debug("Lattice %r validated (%d nodes)", self.name, len(self.ids))

    def __contains__(self, node: str) -> bool:
        return node in self.classes

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self) -> Iterator[str]:
        return iter(self.ids)

    def __repr__(self) -> str:
        return f"<SubobjectLattice(name={self.name!r}, nodes={len(self.ids)}, top={self.top!r})>"


# -- ordered values -----------------------------------------------------------


class OrderedValue:
    """A μ-value in a totally ordered space; comparisons are exact."""

    kind = ""

    def compare(self, other: "OrderedValue") -> Ordering:
        raise NotImplementedError

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise PreconditionError(
                f"cannot compare a {self.kind} value with a {getattr(other, 'kind', other)!r} value"
            )

    def __lt__(self, other: "OrderedValue") -> bool:
        return self.compare(other) is Ordering.LESS

    def __le__(self, other: "OrderedValue") -> bool:
        return self.compare(other) is not Ordering.GREATER

    def __gt__(self, other: "OrderedValue") -> bool:
        return self.compare(other) is Ordering.GREATER

    def __ge__(self, other: "OrderedValue") -> bool:
        return self.compare(other) is not Ordering.LESS

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrderedValue):
            return NotImplemented
        return type(other) is type(self) and self.compare(other) is Ordering.EQUAL

    __hash__ = None

    def to_json(self):
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class LexValue(OrderedValue):
    """Vector of extended reals under the lexicographic order."""

    entries: Tuple[ExtReal, ...]
    kind = "lex"

    def compare(self, other: "LexValue") -> Ordering:
        self._check(other)
        return lex_compare(self.entries, other.entries)

    def to_json(self):
        return {"order": "lex", "entries": [str(v) for v in self.entries]}

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.entries) + ")"


@dataclass(frozen=True, eq=False)
class PolyAtInfinity(OrderedValue):
    """Polynomial ordered by its values for large arguments."""

    poly: RPoly
    kind = "at-infinity"

    def compare(self, other: "PolyAtInfinity") -> Ordering:
        self._check(other)
        return compare_at_infinity(self.poly, other.poly)

    def to_json(self):
        return {"order": "infinity", "coefficients": [str(c) for c in self.poly.coeffs]}

    def __str__(self) -> str:
        return str(self.poly).replace("x", "k")


@dataclass(frozen=True, eq=False)
class PolyAtZero(OrderedValue):
    """Polynomial ordered by its values just right of zero."""

    poly: RPoly
    kind = "at-zero"

    def compare(self, other: "PolyAtZero") -> Ordering:
        self._check(other)
        return compare_at_zero_plus(self.poly, other.poly)

    def to_json(self):
        return {"order": "zero+", "coefficients": [str(c) for c in self.poly.coeffs]}

    def __str__(self) -> str:
        return str(self.poly).replace("x", "ε")


# -- μ-conditions -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GammaSpec:
    """Blocks ``Γ_(k,j)`` (``1 <= k <= n``, ``0 <= j < d_k``) of an ``ℝ[ε]``-valued degree.

    Missing blocks are zero. ``omega`` supplies the generalised rank used to
    reduce the degree.
    """

    ring: GradedRing
    omega: GradedClass
    block_degrees: Tuple[int, ...]
    gammas: Mapping[Tuple[int, int], GradedClass] = field(default_factory=dict)

    def __post_init__(self):
        n = self.ring.dim
        degrees = tuple(int(d) for d in self.block_degrees)
        object.__setattr__(self, "block_degrees", degrees)
        if len(degrees) != n:
            raise PreconditionError(f"need block degrees d_1..d_{n}, got {len(degrees)}")
        if any(d < 1 for d in degrees):
            raise PreconditionError("block degrees must be positive")
        if self.omega.ring is not self.ring:
            raise RingMismatchError("polarisation does not live in the Γ ring")
        for (k, j), gamma in self.gammas.items():
            if not 1 <= k <= n or not 0 <= j < degrees[k - 1]:
                raise PreconditionError(f"Γ_({k},{j}) is outside the block layout")
            if gamma.ring is not self.ring:
                raise RingMismatchError(f"Γ_({k},{j}) does not live in the Γ ring")
        object.__setattr__(self, "gammas", MappingProxyType(dict(self.gammas)))

    def gamma(self, k: int, j: int) -> GradedClass:
        gamma = self.gammas.get((k, j))
        return self.ring.zero() if gamma is None else gamma

    def offset(self, k: int) -> int:
        """``d_1 + ... + d_(k-1)``."""
        return sum(self.block_degrees[: k - 1])


@dataclass(frozen=True)
class SlopeLex:
    """Slope vectors of a charge under the lexicographic order."""

    charge: ChargeData
    kind = "slope-lex"


@dataclass(frozen=True)
class GiesekerReduced:
    """Reduced Hilbert polynomials (the charge twist is ``Td(X)``) at infinity."""

    charge: ChargeData
    kind = "gieseker"


@dataclass(frozen=True)
class GammaDegree:
    """Reduced ``Γ``-degree polynomials at ``0⁺``."""

    spec: GammaSpec
    kind = "gamma"


@dataclass(frozen=True)
class PZd:
    """Reduced degree tuples ``(deg_(n-d), .., deg_n)`` under the lexicographic order."""

    charge: ChargeData
    d: int
    kind = "pzd"

    def __post_init__(self):
        if not 0 <= self.d <= self.charge.dim:
            raise PreconditionError(f"d = {self.d} is outside 0..{self.charge.dim}")


@dataclass(frozen=True)
class ClassicalSlope:
    """Mumford slope ``deg_1 / deg_0`` of torsion-free classes."""

    charge: ChargeData
    kind = "classical"


MuCondition = Union[SlopeLex, GiesekerReduced, GammaDegree, PZd, ClassicalSlope]


# -- filtrations --------------------------------------------------------------


@dataclass(frozen=True)
class GradedPiece:
    """One quotient ``E_i / E_(i-1)`` of a filtration."""

    lower: str
    upper: str
    sheaf: SheafClass
    mu: OrderedValue

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "codim": self.sheaf.codim,
            "class": class_to_json(self.sheaf.chern),
            "mu": self.mu.to_json(),
        }


@dataclass(frozen=True)
class Filtration:
    """A chain ``bottom = E_0 < ... < E_l = top`` with its graded pieces."""

    chain: Tuple[str, ...]
    graded: Tuple[GradedPiece, ...]
    mode: str

    @property
    def length(self) -> int:
        return len(self.graded)

    def total_class(self) -> GradedClass:
        pieces = [piece.sheaf.chern for piece in self.graded]
        total = pieces[0]
        for chern in pieces[1:]:
            total = total + chern
        return total

    def gr_multiset(self) -> Tuple[Tuple[int, Tuple[Tuple[Fraction, ...], ...]], ...]:
        """The graded object as a sorted multiset of (codim, components)."""
        return tuple(sorted((p.sheaf.codim, p.sheaf.chern.components) for p in self.graded))

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "chain": list(self.chain),
            "graded": [piece.to_dict() for piece in self.graded],
        }


def class_to_json(chern: GradedClass) -> Dict[str, List[str]]:
    return {
        str(degree): [str(v) for v in vector] for degree, vector in enumerate(chern.components)
    }
