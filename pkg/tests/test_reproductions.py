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

import pytest

from zstab.errors import PreconditionError
from zstab.services.reproductions import (
    REPRODUCTIONS,
    ReproReport,
    bayer_lemma_grid,
    characterisation_oracle,
    dhym_counterexample,
    gieseker_p2,
    leung_check,
    run_reproduction,
)


def assert_passed(report: ReproReport) -> None:
    assert report.passed, report.diff
    assert report.to_dict()["status"] == "PASS"


def test_dhym_counterexample():
    report = dhym_counterexample()
    assert_passed(report)
    assert report.computed["order"] == 3
    assert report.computed["leading_coefficient"] == "1/6"


@pytest.mark.parametrize("dim", [4, 5])
def test_dhym_counterexample_in_higher_dimension(dim):
    assert_passed(dhym_counterexample(dim))


def test_gieseker_p2():
    report = gieseker_p2()
    assert_passed(report)
    assert report.computed["hn_chain"] == ["0", "O(1)", "E"]


def test_leung_vector():
    assert_passed(leung_check())


def test_bayer_lemma_on_small_grid():
    report = bayer_lemma_grid(bound=1, max_dim=2)
    assert_passed(report)
    assert report.info["vectors_tested"] == 9 + 81


def test_bayer_lemma_in_dimension_three():
    report = bayer_lemma_grid(bound=1, max_dim=3)
    assert_passed(report)
    assert report.info["vectors_tested"] == 9 + 81 + 729


def test_bayer_lemma_on_a_process_pool_matches_serial_run():
    serial = bayer_lemma_grid(bound=1, max_dim=3, workers=1)
    pooled = bayer_lemma_grid(bound=1, max_dim=3, workers=2)
    assert_passed(pooled)
    assert pooled.info == serial.info


@pytest.mark.slow
def test_bayer_lemma_on_default_grid():
    report = run_reproduction("bayer-lemma-grid")
    assert_passed(report)
    assert report.info["max_dim"] == 3
    assert report.info["vectors_tested"] >= 10**4
    assert report.seconds < 60


def test_characterisation_oracle():
    report = characterisation_oracle(seed=0, instances=500)
    assert_passed(report)
    assert report.info["instances"] == 500
    assert sum(report.info["verdicts"].values()) == 500
    assert report.info["ratio_checked"] > 0
    assert report.computed["additivity_failures"] == []


def test_characterisation_oracle_with_a_wider_rho_grid():
    report = characterisation_oracle(seed=3, instances=60, max_dim=3, rho_bound=5)
    assert_passed(report)


def test_failed_facts_show_up_in_the_diff():
    report = ReproReport("demo")
    report.expect("same", 1, 1)
    report.expect("different", "strict", "weak")
    assert not report.passed
    assert report.diff == [{"fact": "different", "expected": "strict", "computed": "weak"}]
    assert report.to_dict()["status"] == "FAIL"


def test_run_reproduction_times_and_validates():
    report = run_reproduction("leung-vector", dims=[3])
    assert report.seconds >= 0
    assert set(report.computed) == {
        "n=3:adapted_torsion_free",
        "n=3:bayer",
        "n=3:adapted_coherent",
    }
    with pytest.raises(PreconditionError):
        run_reproduction("no-such-thing")
    assert set(REPRODUCTIONS) == {
        "dhym-counterexample",
        "gieseker-p2",
        "leung-vector",
        "bayer-lemma-grid",
        "characterisation-oracle",
    }
