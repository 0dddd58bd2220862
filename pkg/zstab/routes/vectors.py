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

"""Stability vector classification command."""

from zstab.errors import ParseError, PreconditionError
from zstab.models.stabvec import StabilityVector
from zstab.routes.base import Outcome
from zstab.services.presets import VECTOR_PRESETS, vector_preset
from zstab.services.stabvec import adapted_characterisation, classify, is_stability_vector
from zstab.utils.helpers import parse_rho_argument


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "vector-check", help="Classify a stability vector: Bayer, adapted dimensions, half plane"
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=sorted(VECTOR_PRESETS), help="Built-in vector")
    source.add_argument("--rho", help='Entries "[re,im],[re,im],..." with ρ_0 first')
    source.add_argument("--charge", help="Use the vector of a workspace charge")
    parser.add_argument("--dim", type=int, help="n for --preset")
    parser.add_argument(
        "--used",
        help="Comma-separated indices the half-plane witness must cover (default: all)",
    )
    parser.set_defaults(handler=cmd_vector_check)


def _used_indices(text):
    if not text:
        return None
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise ParseError("indices must be integers", token=text) from None


def cmd_vector_check(args, workspace, settings) -> Outcome:
    if args.preset:
        if args.dim is None:
            raise PreconditionError("--preset needs --dim")
        vector = vector_preset(args.preset, args.dim)
    elif args.charge:
        vector = workspace.charge(args.charge).rho
    else:
        entries = parse_rho_argument(args.rho)
        if len(entries) < 2 or entries[-1].im_conj(entries[-2]) <= 0:
            return Outcome(
                {
                    "rho": [[str(v.re), str(v.im)] for v in entries],
                    "stability": False,
                    "detail": "Im(conj(ρ_n)·ρ_(n-1)) must be positive",
                }
            )
        vector = StabilityVector(tuple(entries), normalized=is_stability_vector(entries))
    report = {"rho": vector.to_dict()["rho"]}
    report.update(classify(vector, _used_indices(args.used)))
    if not vector.normalized:
        report["normalizing_factor"] = str(vector.normalizing_factor())
    report["characterisation"] = adapted_characterisation(vector).to_dict()
    return Outcome(report)
