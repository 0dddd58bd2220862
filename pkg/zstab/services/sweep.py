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

"""Parameter sweeps: one free ``ρ`` entry moved over a rational grid."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from zstab.errors import PreconditionError
from zstab.models.charge import ChargeData
from zstab.models.cohring import SheafClass
from zstab.models.exact import GaussianRational, RationalLike, as_rational
from zstab.models.stabvec import StabilityVector
from zstab.services.charge import destabilizes_sign
from zstab.services.stabvec import is_adapted, is_bayer, is_stability_vector

logger = logging.getLogger(__name__)

Pair = Tuple[SheafClass, SheafClass]


def grid_axis(lo: RationalLike, hi: RationalLike, steps: int) -> List[Fraction]:
    """``steps`` evenly spaced rationals from ``lo`` to ``hi`` inclusive."""
    lo, hi = as_rational(lo), as_rational(hi)
    if steps < 1:
        raise PreconditionError(f"a grid axis needs at least one step, got {steps}")
    if steps == 1:
        return [lo]
    if hi < lo:
        raise PreconditionError(f"grid axis bounds are reversed: {lo} > {hi}")
    width = (hi - lo) / (steps - 1)
    return [lo + k * width for k in range(steps)]


@dataclass
class SweepRow:
    point: GaussianRational
    stability: bool
    bayer: Optional[bool] = None
    adapted: Dict[int, bool] = field(default_factory=dict)
    verdicts: List[Tuple[str, Optional[int]]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "point": [str(self.point.re), str(self.point.im)],
            "stability": self.stability,
            "bayer": self.bayer,
            "adapted": {str(d): flag for d, flag in self.adapted.items()},
            "verdicts": [{"verdict": v, "order": order} for v, order in self.verdicts],
        }


def _evaluate(cd: ChargeData, entry_index: int, point: GaussianRational, pairs: Sequence[Pair]):
    rho = list(cd.rho.rho)
    rho[entry_index] = point
    if not is_stability_vector(rho):
        return SweepRow(point, stability=False)
    v = StabilityVector(tuple(rho))
    row = SweepRow(
        point,
        stability=True,
        bayer=is_bayer(v),
        adapted={d: is_adapted(v, d) for d in range(v.n + 1)},
    )
    moved = cd.with_rho(v)
    for sheaf, sub in pairs:
        report = destabilizes_sign(moved, sheaf, sub)
        row.verdicts.append((report.verdict.value, report.order))
    return row


def sweep(
    cd: ChargeData,
    entry_index: int,
    re_values: Sequence[RationalLike],
    im_values: Sequence[RationalLike],
    pairs: Sequence[Pair] = (),
    workers: int = 1,
) -> List[SweepRow]:
    """Evaluate every grid point ``re + i·im`` substituted for ``ρ_entry_index``.

    Rows come back in grid order (real part outer, imaginary part inner)
    whatever the number of workers. Points that break the stability-vector
    conditions get a row with ``stability = False`` and no verdicts.
    """
    if not 0 <= entry_index <= cd.dim:
        raise PreconditionError(f"entry index {entry_index} is outside 0..{cd.dim}")
    if workers < 1:
        raise PreconditionError(f"workers must be at least 1, got {workers}")
    points = [
        GaussianRational(re, im)
        for re, im in product(
            [as_rational(x) for x in re_values], [as_rational(y) for y in im_values]
        )
    ]
    logger.debug(
        "Sweeping ρ_%d over %d points, %d pairs, %d workers",
        entry_index,
        len(points),
        len(pairs),
        workers,
    )
    if workers == 1:
        return [_evaluate(cd, entry_index, point, pairs) for point in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda point: _evaluate(cd, entry_index, point, pairs), points))
