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

import json
from fractions import Fraction

import pytest

from zstab.errors import (
    InvalidRingError,
    NonEffectiveError,
    NotUniqueError,
    ParseError,
    PreconditionError,
)
from zstab.models.exact import GaussianRational
from zstab.models.lattice import GammaDegree, GiesekerReduced, SlopeLex
from zstab.services.filtration import gamma_degree, hn_filtration, max_destabilizer
from zstab.services.presets import dhym_fixture, p2_split_fixture, pathological_fixture
from zstab.workspace import Workspace, fixture_to_json, load_workspace

BROKEN_RING = {
    "rings": {
        "broken": {
            "dim": 2,
            "basis": [["1"], ["a", "b"], ["pt"]],
            "cup": [
                {"p": 1, "q": 1, "i": 0, "j": 0, "result": [1]},
                {"p": 1, "q": 1, "i": 0, "j": 1, "result": [1]},
                {"p": 1, "q": 1, "i": 1, "j": 0, "result": [0]},
                {"p": 1, "q": 1, "i": 1, "j": 1, "result": [1]},
            ],
            "integrate": [1],
        }
    }
}


def test_samples_load(samples_dir):
    split = load_workspace([samples_dir / "p2_split.json"])
    assert split.charge("gieseker") == p2_split_fixture().charges["gieseker"]
    cond = GiesekerReduced(split.charge("gieseker"))
    assert hn_filtration(cond, split.lattice("p2-split")).chain == ("0", "O(1)", "E")

    dhym = load_workspace([samples_dir / "dhym_p3.json"])
    assert not dhym.charge("dhym-raw").rho.normalized
    assert dhym.sheaf("I_V") == dhym_fixture(3).classes["I_V"]

    pathological = load_workspace([samples_dir / "pathological.json"])
    lattice = pathological.lattice("pathological")
    assert not lattice.strict
    assert lattice.class_of("B") == lattice.class_of("A")


def test_fixtures_round_trip_through_json():
    for fixture in (p2_split_fixture(), dhym_fixture(4), pathological_fixture()):
        workspace = Workspace()
        workspace.load_text(json.dumps(fixture_to_json(fixture)))
        for key, charge in fixture.charges.items():
            assert workspace.charge(key) == charge
        for key, sheaf in fixture.classes.items():
            assert workspace.sheaf(key) == sheaf
        for key, lattice in fixture.lattices.items():
            loaded = workspace.lattice(key)
            assert loaded.ids == lattice.ids
            assert dict(loaded.upper_covers) == dict(lattice.upper_covers)


def test_compiled_fixture_resolves_ids():
    workspace = Workspace()
    workspace.add_fixture(pathological_fixture())
    cond = SlopeLex(workspace.charge("slope"))
    assert workspace.ring("P1") is workspace.sheaf("A").ring
    with pytest.raises(NotUniqueError):
        max_destabilizer(cond, workspace.lattice("pathological"))


def test_floats_are_rejected_with_their_line():
    text = '{\n "classes": {\n  "A": {"ring": "P1", "components": {"0": [1], "1": [0.5]}}\n }\n}'
    with pytest.raises(ParseError) as info:
        Workspace().load_text(text)
    assert info.value.line == 3
    assert info.value.exit_code == 2


def test_malformed_json_reports_line_and_column():
    with pytest.raises(ParseError) as info:
        Workspace().load_text('{\n "classes": {\n  "A": }\n}')
    assert info.value.line == 3
    assert info.value.position is not None


def test_malformed_rationals_and_unknown_keys():
    with pytest.raises(ParseError):
        Workspace().load_text('{"classes": {"A": {"ring": "P1", "components": {"0": ["1/0"]}}}}')
    with pytest.raises(ParseError):
        Workspace().load_text('{"classes": {"A": {"ring": "P1", "components": {}, "bogus": 1}}}')
    with pytest.raises(ParseError):
        Workspace().load_text('{"classes": {"A": {"ring": "P1", "components": {"one": ["1"]}}}}')


def test_duplicate_ids_are_rejected(samples_dir):
    workspace = load_workspace([samples_dir / "p2_split.json"])
    with pytest.raises(ParseError) as info:
        workspace.load_file(samples_dir / "p2_split.json")
    assert info.value.token == "O"
    with pytest.raises(ParseError):
        workspace.add_fixture(p2_split_fixture())


def test_unknown_ids():
    workspace = Workspace()
    with pytest.raises(PreconditionError):
        workspace.ring("Q7")
    with pytest.raises(PreconditionError):
        workspace.ring("P0")
    with pytest.raises(PreconditionError):
        workspace.sheaf("nope")
    with pytest.raises(PreconditionError):
        workspace.load_text(
            '{"lattices": {"L": {"ring": "P1", "nodes": [{"id": "0"}, '
            '{"id": "E", "class": "E"}], "top": "E", "bottom": "0"}}}'
        )
    with pytest.raises(ParseError):
        workspace.load_file("/nonexistent/zstab.json")


def test_invalid_rings_are_refused_unless_unchecked():
    with pytest.raises(InvalidRingError) as info:
        Workspace().load_text(json.dumps(BROKEN_RING))
    assert "commutativity" in {v.law for v in info.value.violations}
    workspace = Workspace(check_rings=False)
    workspace.load_text(json.dumps(BROKEN_RING))
    assert workspace.ring("broken").dim == 2


def test_explicit_charges_and_gammas():
    workspace = Workspace()
    workspace.load_text(
        json.dumps(
            {
                "classes": {"L": {"ring": "P2", "components": {"0": [1], "1": [1], "2": ["1/2"]}}},
                "charges": {
                    "custom": {
                        "ring": "P1",
                        "omega": {"1": ["2"]},
                        "twist": [{"0": [1]}, {"1": ["1/2"]}],
                        "rho": [["-1", "0"], ["0", "1"]],
                    },
                    "raw": {"ring": "P1", "rho": [[1, 0], [0, -1]], "normalized": False},
                },
                "gammas": {
                    "g": {
                        "ring": "P2",
                        "block_degrees": [1, 1],
                        "blocks": [
                            {"k": 1, "j": 0, "gamma": {"1": [1]}},
                            {"k": 2, "j": 0, "gamma": {"0": [1]}},
                        ],
                    }
                },
            }
        )
    )
    custom = workspace.charge("custom")
    assert custom.rho[0] == GaussianRational(-1, 0)
    assert custom.twist[1].component(1)[0] == Fraction(1, 2)
    assert not workspace.charge("raw").rho.normalized
    spec = workspace.gamma("g")
    assert gamma_degree(spec, workspace.sheaf("L")).coeffs[0] == 1
    assert GammaDegree(spec).spec is spec


def test_todd_twist_needs_a_builtin_ring():
    data = dict(BROKEN_RING)
    data["charges"] = {
        "c": {"ring": "broken", "omega": {"1": [1, 1]}, "twist": "todd", "rho": "coherent"}
    }
    with pytest.raises(PreconditionError):
        Workspace(check_rings=False).load_text(json.dumps(data))


def test_explicit_ring_takes_basis_names_and_cup_entries():
    data = {
        "rings": {
            "line": {
                "dim": 1,
                "basis": [["1"], ["h"]],
                "cup": [{"p": 0, "q": 1, "i": 0, "j": 0, "result": ["1"]}],
                "integrate": ["1"],
            }
        },
        "classes": {"L": {"ring": "line", "components": {"0": [1], "1": ["2"]}}},
    }
    workspace = Workspace()
    workspace.load_text(json.dumps(data))
    ring = workspace.ring("line")
    assert ring.basis_sizes == (1, 1)
    assert ring.basis_names == (("1",), ("h",))
    assert workspace.sheaf("L").codim == 0


def test_previous_field_names_are_refused():
    with pytest.raises(ParseError):
        Workspace().load_text('{"classes": {"A": {"ring": "P1", "chern": {"0": ["1"]}}}}')
    with pytest.raises(ParseError):
        Workspace().load_text(
            '{"lattices": {"L": {"ring": "P1", "nodes": [{"id": "0"}], '
            '"order": [], "top": "0", "bottom": "0"}}}'
        )


def lattice_text(codim):
    node = {"id": "T", "class": {"1": ["1"]}}
    if codim is not None:
        node["codim"] = codim
    return json.dumps(
        {
            "lattices": {
                "L": {
                    "ring": "P1",
                    "nodes": [{"id": "0"}, node],
                    "leq": [["0", "T"]],
                    "top": "T",
                    "bottom": "0",
                }
            }
        }
    )


def test_node_codim_is_checked_against_the_vanishing_pattern():
    workspace = Workspace()
    workspace.load_text(lattice_text(1))
    assert workspace.lattice("L").sheaf("T").codim == 1

    for declared in (0, 2):
        with pytest.raises(NonEffectiveError) as info:
            Workspace().load_text(lattice_text(declared))
        assert info.value.exit_code == 6


def test_class_codim_below_the_leading_degree_is_refused():
    text = '{"classes": {"P": {"ring": "P2", "components": {"2": ["1"]}, "codim": 1}}}'
    with pytest.raises(NonEffectiveError):
        Workspace().load_text(text)
    workspace = Workspace()
    workspace.load_text(text.replace('"codim": 1', '"codim": 2'))
    assert workspace.sheaf("P").codim == 2


def test_duplicate_lattice_nodes_are_rejected():
    text = (
        '{"lattices": {"L": {"ring": "P1", "nodes": [{"id": "0"}, '
        '{"id": "T", "class": {"0": ["1"]}}, {"id": "T", "class": {"0": ["1"]}}], '
        '"top": "T", "bottom": "0"}}}'
    )
    with pytest.raises(ParseError) as info:
        Workspace().load_text(text)
    assert info.value.token == "T"


def test_exported_fixtures_use_the_documented_shapes():
    data = fixture_to_json(dhym_fixture(3))
    assert set(data["classes"]["O_V"]) == {"ring", "components", "codim"}
    lattice = data["lattices"]["ideal-sheaf"]
    assert {"leq", "nodes", "top", "bottom"} <= set(lattice)
    assert lattice["nodes"][0] == {"id": "0"}
    assert {"id", "class", "codim"} == set(lattice["nodes"][1])
