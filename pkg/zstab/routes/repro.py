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

"""Built-in reproduction command."""

from zstab.routes.base import Outcome
from zstab.services.reproductions import REPRODUCTIONS, run_reproduction


def register(subparsers) -> None:
    parser = subparsers.add_parser("repro", help="Run a built-in reproduction, PASS or FAIL")
    parser.add_argument("name", choices=sorted(REPRODUCTIONS) + ["all"])
    parser.add_argument("--dim", type=int, help="n for dhym-counterexample")
    parser.add_argument("--bound", type=int, help="Grid bound for bayer-lemma-grid")
    parser.add_argument("--max-dim", type=int, help="Largest n for the grid and the oracle")
    parser.add_argument("--seed", type=int, help="Seed for characterisation-oracle")
    parser.add_argument("--instances", type=int, help="Instance count for characterisation-oracle")
    parser.add_argument("--workers", type=int, help="Processes for bayer-lemma-grid")
    parser.set_defaults(handler=cmd_repro)


def _options(name: str, args, settings) -> dict:
    if name == "dhym-counterexample":
        return {"dim": args.dim or settings.repro.dhym_dim}
    if name == "bayer-lemma-grid":
        return {
            "bound": args.bound or settings.repro.bayer_grid_bound,
            "max_dim": args.max_dim or settings.repro.bayer_grid_max_dim,
            "workers": args.workers or settings.repro.workers,
        }
    if name == "characterisation-oracle":
        return {
            "seed": settings.oracle.seed if args.seed is None else args.seed,
            "instances": args.instances or settings.oracle.instances,
            "max_dim": args.max_dim or settings.oracle.max_dim,
            "rho_bound": settings.oracle.rho_bound,
        }
    return {}


def cmd_repro(args, workspace, settings) -> Outcome:
    names = sorted(REPRODUCTIONS) if args.name == "all" else [args.name]
    reports = [run_reproduction(name, **_options(name, args, settings)) for name in names]
    passed = all(r.passed for r in reports)
    if len(reports) == 1:
        body = reports[0].to_dict()
    else:
        body = {
            "status": "PASS" if passed else "FAIL",
            "reproductions": [r.to_dict() for r in reports],
        }
    return Outcome(body, exit_code=0 if passed else 1)
