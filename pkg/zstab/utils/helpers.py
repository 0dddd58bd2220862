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

"""Utility helper functions."""

import json
import re
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, List, Optional

from zstab.errors import ParseError
from zstab.models.exact import GaussianRational

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")
_DECIMAL = re.compile(r"^\s*[+-]?\d*\.\d+\s*$")
_RATIONAL_TEXT = re.compile(r"^-?\d+/\d+$")
_RHO_ENTRY = re.compile(r"\[([^\[\]]*)\]")


def parse_rational(
    token: Any, line: Optional[int] = None, position: Optional[int] = None
) -> Fraction:
    """Parse an integer, ``"p/q"`` or finite decimal string into a Fraction.

    Args:
        token: Raw value. Floats are rejected even when integral.
        line: Source line for the diagnostic.
        position: Source column for the diagnostic.

    Returns:
        Exact rational value.
    """
    if isinstance(token, bool) or isinstance(token, float):
        raise ParseError(
            "inexact number; write rationals as strings such as \"1/3\"",
            token=repr(token),
            line=line,
            position=position,
        )
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, Fraction):
        return token
    text = str(token)
    if _RATIONAL.match(text) or _DECIMAL.match(text):
        try:
            return Fraction(text.replace(" ", ""))
        except ZeroDivisionError:
            pass
    raise ParseError("malformed rational", token=text, line=line, position=position)


def parse_gaussian(value: Any, line: Optional[int] = None) -> GaussianRational:
    """Parse ``[re, im]`` or a bare rational into a Gaussian rational."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ParseError("a complex entry needs exactly [re, im]", token=str(value), line=line)
        return GaussianRational(parse_rational(value[0], line), parse_rational(value[1], line))
    return GaussianRational(parse_rational(value, line), 0)


def parse_rho_argument(text: str) -> List[GaussianRational]:
    """Parse the ``--rho`` syntax ``"[re,im],[re,im],..."`` (``ρ_0`` first)."""
    entries = []
    end = 0
    for match in _RHO_ENTRY.finditer(text):
        gap = text[end : match.start()].strip()
        if gap not in ("", ","):
            raise ParseError("unexpected text between entries", token=gap, position=end)
        parts = match.group(1).split(",")
        if len(parts) != 2:
            raise ParseError(
                "a complex entry needs exactly [re, im]",
                token=match.group(0),
                position=match.start(),
            )
        start = match.start(1)
        re_part = parse_rational(parts[0], position=start)
        im_part = parse_rational(parts[1], position=start + len(parts[0]) + 1)
        entries.append(GaussianRational(re_part, im_part))
        end = match.end()
    if text[end:].strip():
        raise ParseError("unexpected trailing text", token=text[end:].strip(), position=end)
    if not entries:
        raise ParseError("no entries found", token=text, position=0)
    return entries


def approximate(value: Fraction, digits: int = 6) -> str:
    """Decimal approximation with ``digits`` significant figures, for reading only."""
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def annotate_floats(obj: Any, digits: int = 6) -> Any:
    """Replace every ``"p/q"`` string in a report by ``{"exact", "approx"}``."""
    if isinstance(obj, dict):
        return {key: annotate_floats(value, digits) for key, value in obj.items()}
    if isinstance(obj, list):
        return [annotate_floats(value, digits) for value in obj]
    if isinstance(obj, str) and _RATIONAL_TEXT.match(obj):
        return {"exact": obj, "approx": approximate(Fraction(obj), digits)}
    return obj


def dumps_json(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON: sorted keys, no floats expected."""
    return json.dumps(obj, indent=indent or None, sort_keys=True, ensure_ascii=False)


def render_text(obj: Any, indent: int = 0) -> str:
    """Plain ``key: value`` rendering of a nested report."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(obj, list):
        if all(not isinstance(value, (dict, list)) for value in obj):
            lines.append(pad + ", ".join(_scalar(value) for value in obj))
        else:
            for value in obj:
                lines.append(f"{pad}-")
                lines.append(render_text(value, indent + 1))
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (dict, list)):
        return "[]" if isinstance(value, list) else "{}"
    return str(value)
