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

"""Command-line routes package."""

from zstab.routes import charges, filtrations, repro, rings, sweep, vectors

COMMAND_MODULES = (rings, vectors, charges, filtrations, repro, sweep)


def register_commands(subparsers) -> None:
    """Add every sub-command to an argparse sub-parser collection."""
    for module in COMMAND_MODULES:
        module.register(subparsers)


__all__ = ["register_commands", "COMMAND_MODULES"]
