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

"""Ring validation command."""

import logging

from zstab.errors import PreconditionError
from zstab.models.cohring import validate_ring
from zstab.routes.base import Outcome

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "ring-validate", help="Check the unit, commutativity and associativity laws of rings"
    )
    parser.add_argument(
        "rings",
        nargs="*",
        help="Ring identifiers (default: every ring in the inputs); P<n> is built in",
    )
    parser.set_defaults(handler=cmd_ring_validate, check_rings=False)


def cmd_ring_validate(args, workspace, settings) -> Outcome:
    ring_ids = list(args.rings) or sorted(workspace.rings)
    if not ring_ids:
        raise PreconditionError("no rings to validate: pass ring identifiers or --input files")
    report = {}
    failed = False
    for ring_id in ring_ids:
        ring = workspace.ring(ring_id)
        violations = validate_ring(ring)
        failed = failed or bool(violations)
        report[ring_id] = {
            "dim": ring.dim,
            "basis_sizes": list(ring.basis_sizes),
            "valid": not violations,
            "violations": [str(v) for v in violations],
        }
        logger.debug("Ring %s: %d violations", ring_id, len(violations))
    return Outcome({"rings": report}, exit_code=3 if failed else 0)
