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

"""Stability verdicts and Harder-Narasimhan / Jordan-Hölder filtrations on finite lattices.

Every operation works on a ``SubobjectLattice`` whose bottom carries the zero
class. Recursion into an interval ``[F, top]`` uses the interval lattice,
whose classes are already the differences ``class(x) - class(F)``, so the
μ-value of a node there is the μ-value of the quotient ``x / F``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from zstab.errors import (
    FiltrationInvariantError,
    NoSaturationError,
    NoStablePieceError,
    NonEffectiveError,
    NotAdaptedError,
    NotSemistableError,
    NotUniqueError,
    PreconditionError,
    RingMismatchError,
)
from zstab.models.charge import ChargeData, Verdict
from zstab.models.cohring import (
    GradedClass,
    GradedRing,
    SheafClass,
    cup,
    integrate,
    omega_power,
    quotient_class,
)
from zstab.models.exact import POS_INF, ExtReal, RPoly
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
from zstab.services.charge import (
    degrees,
    destabilizes_sign,
    p_zd_value,
    reduced_hilbert_polynomial,
    slope_vector,
)
from zstab.services.stabvec import is_adapted, is_adapted_coherent

logger = logging.getLogger(__name__)


# -- Γ-degrees ------------------------------------------------------------------


def gamma_degree(spec: GammaSpec, sheaf: SheafClass) -> RPoly:
    """``Deg(E) = sum_k (sum_j Γ_(k,j) ∪ ch_(<=k)(E) ε^j) ε^(d_1+..+d_(k-1))``.

    Only top-degree parts are integrated.
    """
    if sheaf.ring is not spec.ring:
        raise RingMismatchError(f"class {sheaf.label or '?'} does not live in the Γ ring")
    n = spec.ring.dim
    size = sum(spec.block_degrees)
    coeffs = [Fraction(0)] * size
    for k in range(1, n + 1):
        truncated = sheaf.chern.up_to(k)
        offset = spec.offset(k)
        for j in range(spec.block_degrees[k - 1]):
            coeffs[offset + j] += integrate(cup(spec.gamma(k, j), truncated))
    return RPoly(tuple(coeffs))


def generalised_rank(ring: GradedRing, omega: GradedClass, sheaf: SheafClass) -> Fraction:
    """``∫ ch_c ∪ ω^(n-c)`` with ``c`` the codimension."""
    c = sheaf.codim
    value = integrate(cup(sheaf.chern.part(c), omega_power(ring, omega, ring.dim - c)))
    if value <= 0:
        raise NonEffectiveError(
            f"class {sheaf.label or '?'} has generalised rank {value} <= 0 under this polarisation"
        )
    return value


def gamma_positivity(spec: GammaSpec, test_class: GradedClass, k: int, j: int = 0) -> Fraction:
    """``∫ Γ_(k,j) ∪ [V]`` for a designated block and test class."""
    if test_class.ring is not spec.ring:
        raise RingMismatchError("test class does not live in the Γ ring")
    return integrate(cup(spec.gamma(k, j), test_class))


def check_gamma_positivity(
    spec: GammaSpec, witnesses: Iterable[Tuple[int, int, GradedClass]]
) -> List[Tuple[int, int, Fraction]]:
    """Failed ``(k, j, value)`` triples among the designated positivity witnesses."""
    failures = []
    for k, j, test_class in witnesses:
        value = gamma_positivity(spec, test_class, k, j)
        if value <= 0:
            failures.append((k, j, value))
    return failures


def mpt_polynomial(
    ring: GradedRing, alphas: Sequence[GradedClass], todd: GradedClass, sheaf: SheafClass
) -> RPoly:
    """``P_α(E) = sum_i ∫(ch(E) ∪ α_i ∪ Td(X)) m^i / i!``, ordered at infinity."""
    if len(alphas) != ring.dim + 1:
        raise PreconditionError(f"need α_0..α_{ring.dim}, got {len(alphas)} classes")
    for i, alpha in enumerate(alphas):
        if alpha.ring is not ring or todd.ring is not ring or sheaf.ring is not ring:
            raise RingMismatchError("MPT data must live in one ring")
        if alpha.pure_degree() != i:
            raise PreconditionError(f"α_{i} must be a nonzero class of pure degree {i}")
    base = cup(sheaf.chern, todd)
    return RPoly(
        tuple(integrate(cup(base, alpha)) / factorial(i) for i, alpha in enumerate(alphas))
    )


def mpt_at_zero(polynomial: RPoly, dim: int) -> RPoly:
    """Substitute ``m = 1/ε`` and multiply by ``ε^dim``; the at-0⁺ form of ``P_α``."""
    return polynomial.reciprocal(dim)


# -- μ-values -------------------------------------------------------------------


def mu_value(cond: MuCondition, sheaf: SheafClass) -> OrderedValue:
    """Evaluate a μ-condition on a class."""
    if isinstance(cond, SlopeLex):
        return LexValue(slope_vector(cond.charge, sheaf).entries)
    if isinstance(cond, GiesekerReduced):
        return PolyAtInfinity(reduced_hilbert_polynomial(cond.charge, sheaf))
    if isinstance(cond, GammaDegree):
        spec = cond.spec
        rank = generalised_rank(spec.ring, spec.omega, sheaf)
        return PolyAtZero(gamma_degree(spec, sheaf).scale(1 / rank))
    if isinstance(cond, PZd):
        rank = degrees(cond.charge, sheaf).rank
        return LexValue(tuple(ExtReal(v / rank) for v in p_zd_value(cond.charge, sheaf, cond.d)))
    if isinstance(cond, ClassicalSlope):
        degs = degrees(cond.charge, sheaf)
        if sheaf.codim > 0:
            return LexValue((POS_INF,))
        return LexValue((ExtReal(degs[1] / degs[0]),))
    raise PreconditionError(f"unknown μ-condition {cond!r}")


class _Evaluator:
    """Memoises μ-values of the nodes of one lattice."""

    def __init__(self, cond: MuCondition, lattice: SubobjectLattice):
        self.cond = cond
        self.lattice = lattice
        self._cache: Dict[str, OrderedValue] = {}

    def __call__(self, node: str) -> OrderedValue:
        if node not in self._cache:
            self._cache[node] = mu_value(self.cond, self.lattice.sheaf(node))
        return self._cache[node]


def saturated_nodes(lattice: SubobjectLattice) -> Tuple[str, ...]:
    """Nodes whose quotient is zero or has the codimension of the top."""
    top_codim = lattice.sheaf(lattice.top).codim
    return tuple(
        x
        for x in lattice.ids
        if x == lattice.top or lattice.difference(x, lattice.top).codim == top_codim
    )


def is_semistable(
    cond: MuCondition, lattice: SubobjectLattice, saturated_only: bool = False
) -> bool:
    """``μ(F) <= μ(top)`` for every node strictly between bottom and top.

    With ``saturated_only`` only saturated nodes are tested.
    """
    mu = _Evaluator(cond, lattice)
    top = mu(lattice.top)
    nodes = _interior(lattice, saturated_only)
    return all(mu(x) <= top for x in nodes)


def is_stable(cond: MuCondition, lattice: SubobjectLattice, saturated_only: bool = False) -> bool:
    mu = _Evaluator(cond, lattice)
    top = mu(lattice.top)
    return all(mu(x) < top for x in _interior(lattice, saturated_only))


def _interior(lattice: SubobjectLattice, saturated_only: bool) -> Tuple[str, ...]:
    if not saturated_only:
        return lattice.interior()
    saturated = set(saturated_nodes(lattice))
    return tuple(x for x in lattice.interior() if x in saturated)


def is_polystable(cond: MuCondition, lattice: SubobjectLattice) -> bool:
    """Semistable, and every equal-μ interior node has a direct-sum complement."""
    if not is_semistable(cond, lattice):
        return False
    mu = _Evaluator(cond, lattice)
    top = mu(lattice.top)
    return all(lattice.complements(x) for x in lattice.interior() if mu(x) == top)


def max_destabilizer(cond: MuCondition, lattice: SubobjectLattice) -> str:
    """The inclusion-maximal node among the μ-maximisers.

    Raises:
        NotUniqueError: two incomparable μ-maximisers are both inclusion-maximal.
    """
    mu = _Evaluator(cond, lattice)
    nodes = lattice.nonzero()
    if not nodes:
        raise PreconditionError(f"lattice {lattice.name!r} has no nonzero node")
    maximisers = [x for x in nodes if not any(mu(y) > mu(x) for y in nodes)]
    maximal = sorted(x for x in maximisers if not any(lattice.lt(x, y) for y in maximisers))
    if len(maximal) > 1:
        raise NotUniqueError(
            f"μ-maximisers {', '.join(maximal)} of lattice {lattice.name!r} are all "
            "inclusion-maximal",
            nodes=maximal,
        )
    winner = maximal[0]
    stray = [x for x in maximisers if not lattice.leq(x, winner)]
    if stray:
        raise FiltrationInvariantError(
            f"μ-maximisers {', '.join(sorted(stray))} are not below {winner}"
        )
    return winner


def check_condition_adapted(cond: MuCondition, lattice: SubobjectLattice) -> None:
    """Check the ρ-criterion for the dimension of the top node, where one exists."""
    if isinstance(cond, (SlopeLex, PZd)):
        rho = cond.charge.rho
        if not rho.normalized:
            raise NotAdaptedError("unnormalised stability vectors cannot drive a filtration")
        dimension = cond.d if isinstance(cond, PZd) else (
            cond.charge.dim - lattice.sheaf(lattice.top).codim
        )
        if not is_adapted(rho, dimension):
            raise NotAdaptedError(f"ρ = {rho} is not adapted to sheaves of dimension {dimension}")


def _filtration(cond: MuCondition, lattice: SubobjectLattice, chain: List[str], mode: str):
    pieces = []
    for lower, upper in zip(chain, chain[1:]):
        sheaf = lattice.difference(lower, upper)
        pieces.append(GradedPiece(lower, upper, sheaf, mu_value(cond, sheaf)))
    return Filtration(tuple(chain), tuple(pieces), mode)


def hn_filtration(cond: MuCondition, lattice: SubobjectLattice) -> Filtration:
    """Harder-Narasimhan filtration by repeated maximal destabilisers.

    Raises:
        NotUniqueError: some interval has two inclusion-maximal μ-maximisers.
        FiltrationInvariantError: graded μ-values fail to decrease strictly.
    """
    check_condition_adapted(cond, lattice)
    chain = [lattice.bottom]
    current = lattice
    while chain[-1] != lattice.top:
        step = max_destabilizer(cond, current)
        logger.debug("HN step on %r: %s", current.name, step)
        chain.append(step)
        current = lattice.interval(step, lattice.top)
    filtration = _filtration(cond, lattice, chain, "hn")
    for left, right in zip(filtration.graded, filtration.graded[1:]):
        if not left.mu > right.mu:
            raise FiltrationInvariantError(
                f"HN graded μ-values do not decrease at {left.upper} -> {right.upper}"
            )
    return filtration


def _stable_pieces(cond: MuCondition, current: SubobjectLattice, target: OrderedValue) -> List[str]:
    """Nodes of μ equal to ``target`` that are stable inside ``[bottom, node]``."""
    mu = _Evaluator(cond, current)
    found = [
        x
        for x in current.nonzero()
        if mu(x) == target and is_stable(cond, current.interval(current.bottom, x))
    ]
    return sorted(x for x in found if not any(current.lt(y, x) for y in found))


def jh_filtration(cond: MuCondition, lattice: SubobjectLattice) -> Filtration:
    """One Jordan-Hölder filtration; graded pieces are stable with μ equal to ``μ(top)``.

    Raises:
        NotSemistableError: the lattice is not semistable.
        NoStablePieceError: an interval contains no stable equal-μ node.
    """
    return _jh_chains(cond, lattice, first_only=True)[0]


def jh_chains(cond: MuCondition, lattice: SubobjectLattice) -> List[Filtration]:
    """Every Jordan-Hölder filtration of the lattice, sorted by chain."""
    return _jh_chains(cond, lattice, first_only=False)


def _jh_chains(cond: MuCondition, lattice: SubobjectLattice, first_only: bool) -> List[Filtration]:
    check_condition_adapted(cond, lattice)
    if not is_semistable(cond, lattice):
        raise NotSemistableError(f"lattice {lattice.name!r} is not semistable")
    target = mu_value(cond, lattice.sheaf(lattice.top))

    def extend(chain: List[str]) -> List[List[str]]:
        if chain[-1] == lattice.top:
            return [chain]
        current = lattice.interval(chain[-1], lattice.top)
        pieces = _stable_pieces(cond, current, target)
        if not pieces:
            raise NoStablePieceError(
                f"no stable node of μ = {target} above {chain[-1]} in lattice {lattice.name!r}"
            )
        chains = []
        for piece in pieces[:1] if first_only else pieces:
            chains.extend(extend(chain + [piece]))
        return chains

    chains = sorted(extend([lattice.bottom]))
    logger.debug("JH on %r: %d chain(s)", lattice.name, len(chains))
    return [_filtration(cond, lattice, chain, "jh") for chain in chains]


def saturate(cond: MuCondition, lattice: SubobjectLattice, node: str) -> str:
    """The inclusion-minimal saturated node above ``node``.

    Raises:
        NoSaturationError: several incomparable minimal saturated nodes exist.
    """
    if not isinstance(cond, SlopeLex):
        raise PreconditionError("saturation is defined for the slope-lex condition")
    if node not in lattice:
        raise PreconditionError(f"lattice {lattice.name!r} has no node {node!r}")
    above = [x for x in saturated_nodes(lattice) if lattice.leq(node, x)]
    minimal = sorted(x for x in above if not any(lattice.lt(y, x) for y in above))
    if len(minimal) != 1:
        raise NoSaturationError(
            f"node {node!r} has {len(minimal)} minimal saturated nodes above it: "
            f"{', '.join(minimal) or 'none'}"
        )
    return minimal[0]


@dataclass(frozen=True)
class Saturation:
    """Where ``node`` saturates; ``proper`` is False when that is the whole object."""

    node: str
    saturation: str
    proper: bool

    @property
    def already_saturated(self) -> bool:
        return self.saturation == self.node

    def to_dict(self) -> dict:
        return {
            "saturation": self.saturation,
            "already_saturated": self.already_saturated,
            "proper": self.proper,
        }


def saturation_of(cond: MuCondition, lattice: SubobjectLattice, node: str) -> Saturation:
    target = saturate(cond, lattice, node)
    return Saturation(node, target, proper=target != lattice.top)


# -- adaptedness and asymptotic stability ---------------------------------------


@dataclass(frozen=True)
class AdaptednessCheck:
    """Outcome of ``check_adapted_on``: ``certified``, ``counterexample`` or ``unknown``."""

    status: str
    detail: str = ""
    pair: Optional[Tuple[str, str]] = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "detail": self.detail,
            "pair": list(self.pair) if self.pair else None,
        }


def check_adapted_on(
    cond: MuCondition,
    pairs: Iterable[Tuple[SheafClass, SheafClass]],
    dimension: Optional[int] = None,
) -> AdaptednessCheck:
    """Certify or refute adaptedness of a μ-condition.

    Slope-lex and ``P_(Z,d)`` conditions are certified by the ρ-criterion
    (for ``dimension``, or every dimension when omitted) and reduced Hilbert
    polynomials are always adapted. Otherwise each sample pair ``(E, F)``
    with ``E/F`` of lower dimension than ``E`` is tested for
    ``μ(F) < μ(E)``; a failure is a counterexample.
    """
    if isinstance(cond, GiesekerReduced):
        return AdaptednessCheck("certified", "reduced Hilbert polynomials")
    if isinstance(cond, (SlopeLex, PZd)):
        rho = cond.charge.rho
        if rho.normalized:
            if isinstance(cond, PZd):
                ok = is_adapted(rho, cond.d)
            elif dimension is None:
                ok = is_adapted_coherent(rho)
            else:
                ok = is_adapted(rho, dimension)
            if ok:
                return AdaptednessCheck("certified", f"ρ-criterion holds for ρ = {rho}")
    for sheaf, sub in pairs:
        if dimension is not None and sheaf.dimension != dimension:
            continue
        quotient = quotient_class(sheaf, sub)
        if quotient.codim <= sheaf.codim:
            continue
        if not mu_value(cond, sub) < mu_value(cond, sheaf):
            return AdaptednessCheck(
                "counterexample",
                f"μ({sub.label or 'F'}) is not below μ({sheaf.label or 'E'}) although the "
                "quotient has lower dimension",
                (sheaf.label, sub.label),
            )
    return AdaptednessCheck("unknown", "no sample pair refutes adaptedness")


def asymptotic_z_status(cd: ChargeData, lattice: SubobjectLattice) -> str:
    """``stable``, ``semistable`` or ``unstable`` by the sign route over interior nodes."""
    top = lattice.sheaf(lattice.top)
    verdicts = [destabilizes_sign(cd, top, lattice.sheaf(x)).verdict for x in lattice.interior()]
    if Verdict.STRICT in verdicts:
        return "unstable"
    if Verdict.WEAK in verdicts:
        return "semistable"
    return "stable"
