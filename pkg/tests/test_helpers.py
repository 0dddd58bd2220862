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

import re
from fractions import Fraction
from pathlib import Path

import pytest

import zstab.utils
from zstab.errors import ParseError
from zstab.models.exact import GaussianRational
from zstab.utils.helpers import (
    annotate_floats,
    approximate,
    dumps_json,
    parse_gaussian,
    parse_rational,
    parse_rho_argument,
    render_text,
)


@pytest.mark.parametrize(
    "token, expected",
    [
        (3, Fraction(3)),
        ("3/6", Fraction(1, 2)),
        (" -2 ", Fraction(-2)),
        ("0.25", Fraction(1, 4)),
        ("-7 / 3", Fraction(-7, 3)),
        (Fraction(5, 4), Fraction(5, 4)),
    ],
)
def test_parse_rational(token, expected):
    assert parse_rational(token) == expected


@pytest.mark.parametrize("token", [0.5, 1.0, True, "1/0", "abc", "1/2/3", "", "1e3"])
def test_parse_rational_rejects(token):
    with pytest.raises(ParseError):
        parse_rational(token)


def test_parse_rational_diagnostic_carries_location():
    with pytest.raises(ParseError) as info:
        parse_rational("x/2", line=4, position=9)
    assert info.value.token == "x/2"
    assert info.value.line == 4
    assert "line 4, position 9" in info.value.detail


def test_parse_gaussian():
    assert parse_gaussian(["1/2", -1]) == GaussianRational(Fraction(1, 2), -1)
    assert parse_gaussian("3") == GaussianRational(3, 0)
    with pytest.raises(ParseError):
        parse_gaussian([1, 2, 3])


def test_parse_rho_argument():
    assert parse_rho_argument("[-1,0],[0,1]") == [GaussianRational(-1, 0), GaussianRational(0, 1)]
    assert parse_rho_argument(" [ -1/2 , 1 ] ") == [GaussianRational(Fraction(-1, 2), 1)]


@pytest.mark.parametrize(
    "text, position",
    [("[0,1],[a,1]", 7), ("[1,2,3]", 0), ("[1,2] x", 5), ("[1,2];[0,1]", 5), ("", 0)],
)
def test_parse_rho_argument_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_rho_argument(text)
    assert info.value.position == position


def test_annotate_floats():
    report = {"x": "1/3", "y": ["2", "-5/2"], "z": True}
    assert annotate_floats(report, 3) == {
        "x": {"exact": "1/3", "approx": "0.333"},
        "y": ["2", {"exact": "-5/2", "approx": "-2.5"}],
        "z": True,
    }
    assert approximate(Fraction(2, 3), 4) == "0.6667"


def test_json_output_is_deterministic():
    assert dumps_json({"b": 1, "a": ["1/2"]}, 0) == '{"a": ["1/2"], "b": 1}'
    assert dumps_json({"b": 1, "a": 2}) == dumps_json({"a": 2, "b": 1})


def test_render_text():
    text = render_text({"b": True, "a": None, "c": ["1", "2"], "d": {"e": False}})
    assert text == "a: -\nb: yes\nc:\n  1, 2\nd:\n  e: no"


@pytest.mark.parametrize("name", zstab.utils.__all__)
def test_exported_helpers_have_callers(name):
    package = Path(zstab.utils.__file__).parents[1]
    sources = [
        path.read_text(encoding="utf-8")
        for path in package.rglob("*.py")
        if path != Path(zstab.utils.__file__)
    ]
    calls = sum(len(re.findall(rf"\b{name}\(", text)) for text in sources)
    definitions = sum(len(re.findall(rf"\bdef {name}\(", text)) for text in sources)
    assert definitions == 1
    assert calls > definitions
