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

"""Command-line entry point."""

import argparse
import logging
import sys
from typing import List, Optional

from zstab import __version__
from zstab.config import get_settings, init_settings
from zstab.errors import ZStabError
from zstab.routes import register_commands
from zstab.services.presets import FIXTURES
from zstab.utils.helpers import annotate_floats, dumps_json, render_text
from zstab.workspace import Workspace

logger = logging.getLogger("zstab")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zstab",
        description="Exact asymptotic stability of numerical sheaf classes",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--input", action="append", default=[], metavar="FILE", help="Workspace JSON file"
    )
    parser.add_argument(
        "--fixture",
        action="append",
        default=[],
        choices=sorted(FIXTURES),
        help="Load a compiled-in example into the workspace",
    )
    parser.add_argument("--format", choices=["text", "json"], help="Report format")
    parser.add_argument(
        "--float", action="store_true", help="Add decimal approximations of rationals"
    )
    parser.add_argument("--config", metavar="FILE", help="Configuration YAML")
    parser.add_argument("--log-level", help="Logging level (default from config)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_commands(subparsers)
    return parser


def render(report: dict, fmt: str, show_float: bool, digits: int, indent: int) -> str:
    if show_float:
        report = annotate_floats(report, digits)
    if fmt == "json":
        return dumps_json(report, indent)
    return render_text(report)


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = init_settings(args.config) if args.config else get_settings()
    except (OSError, ValueError) as exc:
        print(f"zstab: error: bad configuration: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(
        level=(args.log_level or settings.logging.level).upper(),
        format=settings.logging.format,
        stream=sys.stderr,
    )

    try:
        workspace = Workspace(check_rings=getattr(args, "check_rings", True))
        for name in args.fixture:
            workspace.add_fixture(FIXTURES[name]())
        for path in args.input:
            workspace.load_file(path)
        outcome = args.handler(args, workspace, settings)
    except ZStabError as exc:
        logger.debug("Command %s failed", args.command, exc_info=True)
        print(f"zstab: error: {exc.detail}", file=sys.stderr)
        return exc.exit_code

    fmt = args.format or settings.output.format
    print(
        render(
            outcome.report,
            fmt,
            args.float or settings.output.show_float,
            settings.output.float_digits,
            settings.output.indent,
        )
    )
    return outcome.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
