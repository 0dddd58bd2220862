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

"""Filtration and lattice stability commands."""

import logging

from zstab.errors import PreconditionError
from zstab.models.lattice import (
    ClassicalSlope,
    GammaDegree,
    GiesekerReduced,
    MuCondition,
    PZd,
    SlopeLex,
)
from zstab.routes.base import Outcome, resolve_pairs
from zstab.services.filtration import (
    asymptotic_z_status,
    check_adapted_on,
    hn_filtration,
    is_polystable,
    is_semistable,
    is_stable,
    jh_chains,
    jh_filtration,
    max_destabilizer,
    saturated_nodes,
    saturation_of,
)

logger = logging.getLogger(__name__)

CONDITIONS = ("slope-lex", "gieseker", "pzd", "classical", "gamma")


def _add_condition_arguments(parser, lattice: bool = True) -> None:
    parser.add_argument(
        "--condition", choices=CONDITIONS, default="slope-lex", help="μ-condition kind"
    )
    parser.add_argument("--charge", help="Charge identifier (all kinds except gamma)")
    parser.add_argument("--gamma", help="Γ-spec identifier (gamma)")
    parser.add_argument("--d", type=int, help="Dimension parameter (pzd)")
    if lattice:
        parser.add_argument("lattice", help="Lattice identifier")


def register(subparsers) -> None:
    parser = subparsers.add_parser("hn", help="Harder-Narasimhan filtration of a lattice")
    _add_condition_arguments(parser)
    parser.set_defaults(handler=cmd_hn)

    parser = subparsers.add_parser("jh", help="Jordan-Hölder filtration of a semistable lattice")
    _add_condition_arguments(parser)
    parser.add_argument("--all", action="store_true", help="Enumerate every JH chain")
    parser.set_defaults(handler=cmd_jh)

    parser = subparsers.add_parser(
        "stability", help="Semistability, stability, polystability and saturation of a lattice"
    )
    _add_condition_arguments(parser)
    parser.add_argument("--saturate", metavar="NODE", help="Also report the saturation of NODE")
    parser.set_defaults(handler=cmd_stability)

    parser = subparsers.add_parser(
        "adapted", help="Certify or refute adaptedness of a μ-condition on sample pairs"
    )
    _add_condition_arguments(parser, lattice=False)
    parser.add_argument("--pair", action="append", default=[], help="Sample pair SHEAF:SUB")
    parser.add_argument("--dimension", type=int, help="Restrict to sheaves of this dimension")
    parser.set_defaults(handler=cmd_adapted)


def build_condition(args, workspace) -> MuCondition:
    if args.condition == "gamma":
        if not args.gamma:
            raise PreconditionError("--condition gamma needs --gamma")
        return GammaDegree(workspace.gamma(args.gamma))
    if not args.charge:
        raise PreconditionError(f"--condition {args.condition} needs --charge")
    charge = workspace.charge(args.charge)
    if args.condition == "slope-lex":
        return SlopeLex(charge)
    if args.condition == "gieseker":
        return GiesekerReduced(charge)
    if args.condition == "classical":
        return ClassicalSlope(charge)
    if args.d is None:
        raise PreconditionError("--condition pzd needs --d")
    return PZd(charge, args.d)


def cmd_hn(args, workspace, settings) -> Outcome:
    cond = build_condition(args, workspace)
    lattice = workspace.lattice(args.lattice)
    filtration = hn_filtration(cond, lattice)
    report = {"lattice": args.lattice, "condition": cond.kind}
    report.update(filtration.to_dict())
    return Outcome(report)


def _gr(filtration) -> list:
    return [
        {"codim": codim, "class": {str(d): [str(v) for v in vec] for d, vec in enumerate(comps)}}
        for codim, comps in filtration.gr_multiset()
    ]


def cmd_jh(args, workspace, settings) -> Outcome:
    cond = build_condition(args, workspace)
    lattice = workspace.lattice(args.lattice)
    report = {"lattice": args.lattice, "condition": cond.kind}
    if args.all:
        chains = jh_chains(cond, lattice)
        report["chains"] = [f.to_dict() for f in chains]
        report["gr"] = _gr(chains[0])
        report["gr_unique"] = len({f.gr_multiset() for f in chains}) == 1
    else:
        filtration = jh_filtration(cond, lattice)
        report.update(filtration.to_dict())
        report["gr"] = _gr(filtration)
    return Outcome(report)


def cmd_stability(args, workspace, settings) -> Outcome:
    cond = build_condition(args, workspace)
    lattice = workspace.lattice(args.lattice)
    semistable = is_semistable(cond, lattice)
    report = {
        "lattice": args.lattice,
        "condition": cond.kind,
        "semistable": semistable,
        "semistable_on_saturated": is_semistable(cond, lattice, saturated_only=True),
        "stable": is_stable(cond, lattice),
        "polystable": is_polystable(cond, lattice),
        "saturated_nodes": list(saturated_nodes(lattice)),
        "max_destabilizer": None if semistable else max_destabilizer(cond, lattice),
    }
    if args.charge:
        report["asymptotic_z"] = asymptotic_z_status(workspace.charge(args.charge), lattice)
    if args.saturate:
        report["saturation"] = {
            args.saturate: saturation_of(cond, lattice, args.saturate).to_dict()
        }
    return Outcome(report)


def cmd_adapted(args, workspace, settings) -> Outcome:
    cond = build_condition(args, workspace)
    check = check_adapted_on(cond, resolve_pairs(workspace, args.pair), args.dimension)
    logger.debug("Adaptedness of %s: %s", cond.kind, check.status)
    report = {"condition": cond.kind}
    report.update(check.to_dict())
    return Outcome(report)
