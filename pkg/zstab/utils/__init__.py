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

"""Utilities package."""

from zstab.utils.helpers import (
    annotate_floats,
    approximate,
    dumps_json,
    parse_gaussian,
    parse_rational,
    parse_rho_argument,
    render_text,
)

__all__ = [
    "annotate_floats",
    "approximate",
    "dumps_json",
    "parse_gaussian",
    "parse_rational",
    "parse_rho_argument",
    "render_text",
]
