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

"""Shared plumbing for command handlers.

Each command module exposes ``register(subparsers)``, which adds its
sub-commands with ``set_defaults(handler=...)``. A handler receives the
parsed arguments, the loaded workspace and the settings, and returns an
``Outcome``.
"""

from dataclasses import dataclass, field
from typing import List, Tuple

from zstab.errors import ParseError
from zstab.models.cohring import SheafClass
from zstab.workspace import Workspace


@dataclass
class Outcome:
    """A command's report and its exit status."""

    report: dict = field(default_factory=dict)
    exit_code: int = 0


def parse_pairs(tokens: List[str]) -> List[Tuple[str, str]]:
    """``E:F`` tokens into ``(E, F)`` identifier pairs."""
    pairs = []
    for token in tokens or []:
        sheaf, sep, sub = token.partition(":")
        if not sep or not sheaf or not sub:
            raise ParseError("pairs are written SHEAF:SUB", token=token)
        pairs.append((sheaf, sub))
    return pairs


def resolve_pairs(workspace: Workspace, tokens: List[str]) -> List[Tuple[SheafClass, SheafClass]]:
    return [(workspace.sheaf(e), workspace.sheaf(f)) for e, f in parse_pairs(tokens)]
