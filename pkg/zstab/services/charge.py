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

"""Twisted Chern characters, generalised degrees and the polynomial central charge.

Two independent routes decide whether ``F`` destabilises ``E``:
``destabilizes_sign`` reads the sign of ``Im(conj(Z_ε(E)) Z_ε(F))`` at
``0⁺`` and works for every stability vector, while ``destabilizes_lex``
compares slope vectors and requires ``ρ`` adapted to the dimension of ``E``.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Tuple

from zstab.errors import NonEffectiveError, NotAdaptedError, PreconditionError, RingMismatchError
from zstab.models.charge import (
    ChargeData,
    DegreeVector,
    DestabilizationReport,
    SlopeVector,
    Verdict,
)
from zstab.models.cohring import GradedClass, SheafClass, cup, integrate, omega_power
from zstab.models.exact import (
    CPoly,
    Ordering,
    RPoly,
    compare_at_infinity,
    im_conj_product,
    lex_compare,
    sign_at_zero_plus,
)
from zstab.services.stabvec import is_adapted

logger = logging.getLogger(__name__)


def _check_ring(cd: ChargeData, sheaf: SheafClass) -> None:
    if sheaf.ring is not cd.ring:
        raise RingMismatchError(
            f"class {sheaf.label or '?'} does not live in the ring of charge {cd.name or '?'}"
        )


@lru_cache(maxsize=256)
def _omega_powers(cd: ChargeData) -> Tuple[GradedClass, ...]:
    return tuple(omega_power(cd.ring, cd.omega, i) for i in range(cd.dim + 1))


@lru_cache(maxsize=256)
def _total_twist(cd: ChargeData) -> GradedClass:
    total = cd.twist[0]
    for u in cd.twist[1:]:
        total = total + u
    return total


def twisted_chern(cd: ChargeData, sheaf: SheafClass) -> GradedClass:
    """``ch^U``: degree ``p`` is ``ch_p + sum_(j=1..p) ch_(p-j) U_j``, i.e. ``ch ∪ U``."""
    _check_ring(cd, sheaf)
    return cup(sheaf.chern, _total_twist(cd))


def degrees(cd: ChargeData, sheaf: SheafClass) -> DegreeVector:
    """Generalised degrees ``deg_i = ∫ ch^U_i ∪ ω^(n-i)``.

    Raises:
        NonEffectiveError: a degree below the codimension is nonzero, or the
            generalised rank ``deg_c`` is not positive.
    """
    twisted = twisted_chern(cd, sheaf)
    powers = _omega_powers(cd)
    n = cd.dim
    entries = tuple(integrate(cup(twisted.part(i), powers[n - i])) for i in range(n + 1))
    codim = sheaf.codim
    for i in range(codim):
        if entries[i] != 0:
            raise NonEffectiveError(
                f"class {sheaf.label or '?'} has deg_{i} = {entries[i]} "
                f"below its codimension {codim}"
            )
    if entries[codim] <= 0:
        raise NonEffectiveError(
            f"class {sheaf.label or '?'} has generalised rank deg_{codim} = {entries[codim]} <= 0"
        )
    return DegreeVector(entries, codim)


def rank(cd: ChargeData, sheaf: SheafClass) -> Fraction:
    return degrees(cd, sheaf).rank


def slope_vector(cd: ChargeData, sheaf: SheafClass) -> SlopeVector:
    return SlopeVector.from_degrees(degrees(cd, sheaf))


def central_charge(cd: ChargeData, sheaf: SheafClass) -> CPoly:
    """``Z_ε = sum_i ρ_(n-i) deg_i ε^i``."""
    degs = degrees(cd, sheaf)
    n = cd.dim
    return CPoly(tuple(cd.rho[n - i] * degs[i] for i in range(n + 1)))


def im_pairing(cd: ChargeData, sheaf: SheafClass, sub: SheafClass) -> RPoly:
    """``Im(conj(Z_ε(sheaf)) Z_ε(sub))`` as a polynomial in ``ε``."""
    return im_conj_product(central_charge(cd, sheaf), central_charge(cd, sub))


def destabilizes_sign(cd: ChargeData, sheaf: SheafClass, sub: SheafClass) -> DestabilizationReport:
    """Verdict from the sign of the ``Im`` pairing at ``0⁺``; valid for any stability vector."""
    report = DestabilizationReport.from_polynomial(im_pairing(cd, sheaf, sub), method="sign")
    logger.debug(
        "sign route %s vs %s: %s at order %s",
        sub.label,
        sheaf.label,
        report.verdict.value,
        report.order,
    )
    return report


def destabilizes_lex(cd: ChargeData, sheaf: SheafClass, sub: SheafClass) -> Verdict:
    """Verdict from the lexicographic order of slope vectors.

    Raises:
        NotAdaptedError: ``ρ`` is unnormalised or not adapted to sheaves of
            dimension ``n - codim(sheaf)``.
        PreconditionError: ``codim(sub) < codim(sheaf)``.
    """
    if not cd.rho.normalized:
        raise NotAdaptedError("the lexicographic route rejects unnormalised stability vectors")
    dimension = cd.dim - sheaf.codim
    if not is_adapted(cd.rho, dimension):
        raise NotAdaptedError(
            f"ρ = {cd.rho} is not adapted to sheaves of dimension {dimension}"
        )
    if sub.codim < sheaf.codim:
        raise PreconditionError(
            f"sub-object codimension {sub.codim} is below the codimension {sheaf.codim}"
        )
    order = lex_compare(slope_vector(cd, sub).entries, slope_vector(cd, sheaf).entries)
    return Verdict.from_sign(int(order))


def destabilizes_ratio(cd: ChargeData, sheaf: SheafClass, sub: SheafClass) -> DestabilizationReport:
    """Verdict from the cross-multiplied phase inequality.

    With ``D = Re Z(F) Im Z(E) - Re Z(E) Im Z(F)``, ``F`` destabilises
    strictly when ``D < 0`` at ``0⁺`` and weakly when ``D = 0``. The
    reported polynomial is ``D``.

    Raises:
        PreconditionError: ``Im Z_ε`` of either class is not positive at ``0⁺``.
    """
    z_e = central_charge(cd, sheaf)
    z_f = central_charge(cd, sub)
    for label, z in ((sheaf.label, z_e), (sub.label, z_f)):
        if sign_at_zero_plus(z.imag_part()) <= 0:
            raise PreconditionError(f"Im Z_ε({label or '?'}) is not positive near 0")
    d = z_f.real_part() * z_e.imag_part() - z_e.real_part() * z_f.imag_part()
    return DestabilizationReport(Verdict.from_sign(-sign_at_zero_plus(d)), d, method="ratio")


def a_p_coefficient(cd: ChargeData, sheaf: SheafClass, sub: SheafClass, p: int) -> Fraction:
    """Coefficient of ``ε^p`` in the ``Im`` pairing, from the paired-index sum.

    ``a_p = sum_(j=c..p//2) Im(conj(ρ_(n-j)) ρ_(n-p+j)) D_j``, where
    ``D_j = deg_j(E) deg_(p-j)(F) - deg_(p-j)(E) deg_j(F)``,
    with ``ρ_i = deg_i = 0`` for ``i`` outside ``0..n``.
    """
    if sheaf.codim != sub.codim:
        raise PreconditionError(
            f"a_p needs equal codimensions, got {sheaf.codim} and {sub.codim}"
        )
    c, n = sheaf.codim, cd.dim
    if not 2 * c <= p <= 2 * n:
        raise PreconditionError(f"p = {p} is outside [{2 * c}, {2 * n}]")
    deg_e = degrees(cd, sheaf)
    deg_f = degrees(cd, sub)
    total = Fraction(0)
    for j in range(c, p // 2 + 1):
        weight = cd.rho.entry(n - j).im_conj(cd.rho.entry(n - p + j))
        if weight == 0:
            continue
        bracket = deg_e.entry(j) * deg_f.entry(p - j) - deg_e.entry(p - j) * deg_f.entry(j)
        total += weight * bracket
    return total


def hilbert_polynomial(cd: ChargeData, sheaf: SheafClass) -> RPoly:
    """``χ(E ⊗ L^k)`` by Riemann-Roch when the twist is ``Td(X)``.

    The coefficient of ``k^i`` is ``deg_(n-i) / i!``. Whether the twist
    really is the Todd class is not checked.
    """
    degs = degrees(cd, sheaf)
    n = cd.dim
    return RPoly(tuple(degs[n - i] / factorial(i) for i in range(n + 1)))


def reduced_hilbert_polynomial(cd: ChargeData, sheaf: SheafClass) -> RPoly:
    degs = degrees(cd, sheaf)
    return hilbert_polynomial(cd, sheaf).scale(1 / degs.rank)


def euler_characteristic(cd: ChargeData, sheaf: SheafClass, k: int = 0) -> Fraction:
    return hilbert_polynomial(cd, sheaf).evaluate(k)


def gieseker_compare(cd: ChargeData, sheaf: SheafClass, other: SheafClass) -> Ordering:
    """Order of the reduced Hilbert polynomials of ``sheaf`` and ``other`` at infinity."""
    return compare_at_infinity(
        reduced_hilbert_polynomial(cd, sheaf), reduced_hilbert_polynomial(cd, other)
    )


def p_zd_value(cd: ChargeData, sheaf: SheafClass, d: int) -> Tuple[Fraction, ...]:
    """``(deg_(n-d), .., deg_n)``, all ``d + 1`` entries."""
    n = cd.dim
    if not 0 <= d <= n:
        raise PreconditionError(f"d = {d} is outside 0..{n}")
    degs = degrees(cd, sheaf)
    return tuple(degs[i] for i in range(n - d, n + 1))
