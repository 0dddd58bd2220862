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

"""Parameter sweep command."""

import logging
import time

from zstab.errors import ParseError
from zstab.routes.base import Outcome, resolve_pairs
from zstab.services.sweep import grid_axis, sweep
from zstab.utils.helpers import parse_rational

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "sweep", help="Move one ρ entry over a rational grid and tabulate verdicts"
    )
    parser.add_argument("--charge", required=True, help="Charge template")
    parser.add_argument("--entry", type=int, required=True, help="Index k of the free entry ρ_k")
    parser.add_argument("--re", required=True, metavar="LO:HI", help="Real part range")
    parser.add_argument("--im", required=True, metavar="LO:HI", help="Imaginary part range")
    parser.add_argument("--steps", type=int, help="Points per axis")
    parser.add_argument("--pair", action="append", default=[], help="Pair SHEAF:SUB to decide")
    parser.add_argument("--workers", type=int, help="Worker threads")
    parser.set_defaults(handler=cmd_sweep)


def _range(text: str):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ParseError("ranges are written LO:HI", token=text)
    return parse_rational(lo), parse_rational(hi)


def cmd_sweep(args, workspace, settings) -> Outcome:
    cd = workspace.charge(args.charge)
    steps = args.steps or settings.sweep.steps
    re_values = grid_axis(*_range(args.re), steps)
    im_values = grid_axis(*_range(args.im), steps)
    pairs = resolve_pairs(workspace, args.pair)
    started = time.perf_counter()
    workers = args.workers or settings.sweep.workers
    rows = sweep(cd, args.entry, re_values, im_values, pairs, workers)
    elapsed = time.perf_counter() - started
    if elapsed > settings.sweep.budget_seconds:
        logger.warning(
            "Sweep took %.2fs, over the %.2fs budget", elapsed, settings.sweep.budget_seconds
        )
    return Outcome(
        {
            "charge": args.charge,
            "entry": args.entry,
            "pairs": list(args.pair),
            "rows": [row.to_dict() for row in rows],
        }
    )
