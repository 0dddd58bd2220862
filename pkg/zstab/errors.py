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

"""Exception hierarchy.

Every error carries the process exit code the CLI reports for it, the same
way route handlers pair an error with a status code.
"""

from typing import Optional, Sequence


class ZStabError(Exception):
    """Base class for all library errors."""

    exit_code: int = 3

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ParseError(ZStabError):
    """Malformed input: JSON, rational tokens or command-line values."""

    exit_code = 2

    def __init__(
        self,
        detail: str,
        token: Optional[str] = None,
        line: Optional[int] = None,
        position: Optional[int] = None,
    ):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"position {position}")
        if token is not None:
            detail = f"{detail}: {token!r}"
        if where:
            detail = f"{detail} ({', '.join(where)})"
        super().__init__(detail)
        self.token = token
        self.line = line
        self.position = position


class PreconditionError(ZStabError):
    """An operation was called outside its domain."""

    exit_code = 3


class RingMismatchError(PreconditionError):
    """Two classes live in different cohomology rings."""


class InvalidRingError(PreconditionError):
    """Structure constants violate the unit, commutativity or associativity laws."""

    def __init__(self, detail: str, violations: Sequence = ()):
        super().__init__(detail)
        self.violations = list(violations)


class NotAdaptedError(PreconditionError):
    """The stability vector is not adapted to the required dimension."""


class NotSemistableError(PreconditionError):
    """A Jordan-Hölder filtration was requested for an unstable object."""


class NoSaturationError(PreconditionError):
    """No unique inclusion-minimal saturated node exists."""


class NotUniqueError(ZStabError):
    """Two inclusion-maximal nodes maximise the slope."""

    exit_code = 4

    def __init__(self, detail: str, nodes: Sequence[str] = ()):
        super().__init__(detail)
        self.nodes = list(nodes)


class FiltrationInvariantError(ZStabError):
    """A computed filtration does not have strictly decreasing slopes."""

    exit_code = 4


class NoStablePieceError(ZStabError):
    """No node of an interval is stable, so no Jordan-Hölder step exists."""

    exit_code = 5


class NonEffectiveError(ZStabError):
    """A class cannot be the Chern character of a sheaf of its codimension."""

    exit_code = 6
