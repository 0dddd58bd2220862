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

"""Classification of stability vectors: Bayer, adapted, half-plane witnesses."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from zstab.errors import PreconditionError
from zstab.models.exact import GaussianRational
from zstab.models.stabvec import HalfPlaneWitness, StabilityVector

logger = logging.getLogger(__name__)


def is_stability_vector(rho: Sequence) -> bool:
    """``Im ρ_n > 0`` and ``Im(conj(ρ_n) ρ_(n-1)) > 0`` on a raw sequence."""
    entries = [GaussianRational.of(v) for v in rho]
    if len(entries) < 2:
        return False
    return entries[-1].im > 0 and entries[-1].im_conj(entries[-2]) > 0


def is_bayer(v: StabilityVector) -> bool:
    return all(v[i].im_conj(v[i - 1]) > 0 for i in range(1, v.n + 1))


def is_adapted(v: StabilityVector, d: int) -> bool:
    """``Im(conj(ρ_d) ρ_i) > 0`` for every ``i < d``."""
    if not 0 <= d <= v.n:
        raise PreconditionError(f"d = {d} is outside 0..{v.n}")
    return all(v[d].im_conj(v[i]) > 0 for i in range(d))


def is_adapted_coherent(v: StabilityVector) -> bool:
    return all(is_adapted(v, d) for d in range(v.n + 1))


def _in_half_plane(z: GaussianRational) -> Optional[str]:
    if z.im > 0:
        return "upper"
    if z.im == 0 and z.re < 0:
        return "negative-real"
    return None


def halfplane_witness(
    v: StabilityVector, used_indices: Optional[Iterable[int]] = None
) -> Optional[HalfPlaneWitness]:
    """Find ``λ`` with every ``λ ρ_i`` (``i`` used) in ``{Im > 0} ∪ ℝ₋*``.

    Only the boundary rotations ``λ = -conj(ρ_k)`` are tried: if any ``λ``
    works, rotating until the entry of largest argument reaches the negative
    real ray still works, and that rotation is one of these.
    """
    indices = sorted(set(range(v.n + 1) if used_indices is None else used_indices))
    if not indices:
        raise PreconditionError("used_indices must not be empty")
    if indices[0] < 0 or indices[-1] > v.n:
        raise PreconditionError(f"used_indices must lie in 0..{v.n}")
    for k in indices:
        if v[k].is_zero:
            continue
        factor = -v[k].conjugate()
        memberships = []
        for i in indices:
            where = _in_half_plane(factor * v[i])
            if where is None:
                break
            memberships.append((i, where))
        else:
            return HalfPlaneWitness(k, factor, tuple(memberships))
    return None


@dataclass(frozen=True)
class AdaptedCharacterisation:
    """Separately labelled conditions of the adaptedness characterisation.

    For a Bayer vector the conditions ``torsion_free``, ``coherent``,
    ``witness_strict`` and ``witness_nonzero`` are equivalent.
    """

    bayer: bool
    torsion_free: bool
    coherent: bool
    rho_n_rho_0_positive: bool
    rho_n_rho_0_nonzero: bool
    witness: Optional[HalfPlaneWitness]

    @property
    def witness_strict(self) -> bool:
        """``Im(conj(ρ_n) ρ_0) > 0`` and a half-plane rotation exists."""
        return self.rho_n_rho_0_positive and self.witness is not None

    @property
    def witness_nonzero(self) -> bool:
        """``Im(conj(ρ_n) ρ_0) != 0`` and a half-plane rotation exists."""
        return self.rho_n_rho_0_nonzero and self.witness is not None

    def to_dict(self) -> dict:
        return {
            "bayer": self.bayer,
            "adapted_torsion_free": self.torsion_free,
            "adapted_coherent": self.coherent,
            "im_conj_rho_n_rho_0_positive": self.rho_n_rho_0_positive,
            "im_conj_rho_n_rho_0_nonzero": self.rho_n_rho_0_nonzero,
            "halfplane_with_positive_pairing": self.witness_strict,
            "halfplane_with_nonzero_pairing": self.witness_nonzero,
        }


def adapted_characterisation(v: StabilityVector) -> AdaptedCharacterisation:
    pairing = v[v.n].im_conj(v[0])
    return AdaptedCharacterisation(
        bayer=is_bayer(v),
        torsion_free=is_adapted(v, v.n),
        coherent=is_adapted_coherent(v),
        rho_n_rho_0_positive=pairing > 0,
        rho_n_rho_0_nonzero=pairing != 0,
        witness=halfplane_witness(v),
    )


def classify(v: StabilityVector, used_indices: Optional[Iterable[int]] = None) -> dict:
    """The vector-check report."""
    witness = halfplane_witness(v, used_indices)
    return {
        "stability": is_stability_vector(v.rho),
        "normalized": v.normalized,
        "bayer": is_bayer(v),
        "adapted": {str(d): is_adapted(v, d) for d in range(v.n + 1)},
        "adapted_coherent": is_adapted_coherent(v),
        "halfplane_witness": None if witness is None else witness.to_dict(),
    }


def grid_values(bound: int) -> List[Fraction]:
    """Distinct rationals ``p/q`` with ``|p| <= bound`` and ``1 <= q <= bound``."""
    if bound < 1:
        raise PreconditionError(f"grid bound must be at least 1, got {bound}")
    return sorted({Fraction(p, q) for p in range(-bound, bound + 1) for q in range(1, bound + 1)})


def grid_entries(bound: int) -> List[GaussianRational]:
    values = grid_values(bound)
    return [GaussianRational(re, im) for re, im in product(values, repeat=2)]


def bayer_grid(n: int, bound: int, part: int = 0, parts: int = 1) -> Iterator[StabilityVector]:
    """Every stability vector of length ``n + 1`` with entries on the grid.

    With ``parts > 1`` only slice ``part`` is produced; the slices split the
    admissible ``(ρ_(n-1), ρ_n)`` pairs and together cover the grid once.
    """
    if n < 1:
        raise PreconditionError(f"n must be at least 1, got {n}")
    if not 0 <= part < parts:
        raise PreconditionError(f"slice {part} is outside 0..{parts - 1}")
    entries = grid_entries(bound)
    heads: List[Tuple[GaussianRational, GaussianRational]] = [
        (below, top)
        for top in entries
        if top.im > 0
        for below in entries
        if top.im_conj(below) > 0
    ][part::parts]
    logger.debug("Grid n=%d bound=%d: %d admissible (ρ_n-1, ρ_n) pairs", n, bound, len(heads))
    for tail in product(entries, repeat=n - 1):
        for below, top in heads:
            yield StabilityVector(tail + (below, top))
