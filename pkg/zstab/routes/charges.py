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

"""Central charge evaluation and destabilisation verdict commands."""

import logging

from zstab.models.charge import ChargeData
from zstab.models.cohring import SheafClass
from zstab.models.lattice import class_to_json
from zstab.routes.base import Outcome
from zstab.services.charge import (
    central_charge,
    degrees,
    destabilizes_lex,
    destabilizes_ratio,
    destabilizes_sign,
    euler_characteristic,
    gieseker_compare,
    hilbert_polynomial,
    reduced_hilbert_polynomial,
    slope_vector,
    twisted_chern,
)

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "charge-eval", help="Twisted Chern character, degrees and central charge of classes"
    )
    parser.add_argument("--charge", required=True, help="Charge identifier")
    parser.add_argument("classes", nargs="+", help="Class identifiers")
    parser.set_defaults(handler=cmd_charge_eval)

    parser = subparsers.add_parser("destab", help="Does SUB destabilise SHEAF as ε → 0⁺?")
    parser.add_argument("--charge", required=True, help="Charge identifier")
    parser.add_argument("--sheaf", required=True, help="Class E")
    parser.add_argument("--sub", required=True, help="Class F")
    parser.add_argument(
        "--method",
        choices=["sign", "lex", "ratio", "both"],
        default="sign",
        help="sign: Im pairing at 0⁺; lex: slope vectors (needs adapted ρ); both: sign and lex",
    )
    parser.set_defaults(handler=cmd_destab)

    parser = subparsers.add_parser("slopes", help="Slope vectors of classes")
    parser.add_argument("--charge", required=True, help="Charge identifier")
    parser.add_argument("classes", nargs="+", help="Class identifiers")
    parser.set_defaults(handler=cmd_slopes)

    parser = subparsers.add_parser(
        "gieseker-compare", help="Compare reduced Hilbert polynomials at large k"
    )
    parser.add_argument("--charge", required=True, help="Charge with the Todd twist")
    parser.add_argument("first", help="Class identifier")
    parser.add_argument("second", help="Class identifier")
    parser.set_defaults(handler=cmd_gieseker_compare)


def _evaluate(cd: ChargeData, sheaf: SheafClass) -> dict:
    degs = degrees(cd, sheaf)
    z = central_charge(cd, sheaf)
    return {
        "codim": sheaf.codim,
        "twisted_chern": class_to_json(twisted_chern(cd, sheaf)),
        "degrees": degs.to_list(),
        "rank": str(degs.rank),
        "slopes": slope_vector(cd, sheaf).to_list(),
        "central_charge": [[str(c.re), str(c.im)] for c in z.coeffs],
        "hilbert_polynomial": [str(c) for c in hilbert_polynomial(cd, sheaf).coeffs],
        "euler_characteristic": str(euler_characteristic(cd, sheaf)),
    }


def cmd_charge_eval(args, workspace, settings) -> Outcome:
    cd = workspace.charge(args.charge)
    return Outcome(
        {
            "charge": args.charge,
            "classes": {key: _evaluate(cd, workspace.sheaf(key)) for key in args.classes},
        }
    )


def cmd_destab(args, workspace, settings) -> Outcome:
    cd = workspace.charge(args.charge)
    sheaf, sub = workspace.sheaf(args.sheaf), workspace.sheaf(args.sub)
    report = {"charge": args.charge, "sheaf": args.sheaf, "sub": args.sub}
    if args.method == "lex":
        lex = destabilizes_lex(cd, sheaf, sub)
        report.update(destabilizes_sign(cd, sheaf, sub).to_dict())
        report.update(
            verdict=lex.value,
            method="lex",
            slope_vectors={
                args.sheaf: slope_vector(cd, sheaf).to_list(),
                args.sub: slope_vector(cd, sub).to_list(),
            },
        )
        return Outcome(report)
    if args.method == "ratio":
        report.update(destabilizes_ratio(cd, sheaf, sub).to_dict())
        return Outcome(report)
    report.update(destabilizes_sign(cd, sheaf, sub).to_dict())
    if args.method == "both":
        lex = destabilizes_lex(cd, sheaf, sub)
        report["lex"] = lex.value
        report["agree"] = lex.value == report["verdict"]
        if not report["agree"]:
            logger.warning("Sign and lex routes disagree on %s in %s", args.sub, args.sheaf)
    return Outcome(report)


def cmd_slopes(args, workspace, settings) -> Outcome:
    cd = workspace.charge(args.charge)
    return Outcome(
        {key: slope_vector(cd, workspace.sheaf(key)).to_list() for key in args.classes}
    )


def cmd_gieseker_compare(args, workspace, settings) -> Outcome:
    cd = workspace.charge(args.charge)
    first, second = workspace.sheaf(args.first), workspace.sheaf(args.second)
    order = gieseker_compare(cd, first, second)
    return Outcome(
        {
            "reduced_hilbert": {
                args.first: [str(c) for c in reduced_hilbert_polynomial(cd, first).coeffs],
                args.second: [str(c) for c in reduced_hilbert_polynomial(cd, second).coeffs],
            },
            "order": order.name.lower(),
        }
    )
