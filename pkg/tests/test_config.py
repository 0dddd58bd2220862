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
import yaml
from pydantic import ValidationError

from zstab.config import (
    Settings,
    get_settings,
    init_settings,
    load_config,
    save_config,
    update_settings,
)


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.delenv("ZSTAB_CONFIG", raising=False)
    yield
    update_settings(Settings())


def write(path, data):
    path.write_text(yaml.safe_dump(data))
    return path


def test_defaults_without_a_file():
    settings = load_config()
    assert settings.output.format == "text"
    assert settings.oracle.instances == 500
    assert settings.repro.dhym_dim == 3
    assert settings.sweep.workers == 1


def test_yaml_file_and_default_locations(tmp_path):
    (tmp_path / "config").mkdir()
    write(tmp_path / "config" / "config.yaml", {"output": {"format": "json", "indent": 4}})
    settings = load_config()
    assert settings.output.format == "json"
    assert settings.output.indent == 4
    assert settings.output.float_digits == 6


def test_config_path_from_environment(tmp_path, monkeypatch):
    path = write(tmp_path / "custom.yaml", {"oracle": {"seed": 7}})
    monkeypatch.setenv("ZSTAB_CONFIG", str(path))
    assert load_config().oracle.seed == 7


def test_environment_overrides_file(tmp_path, monkeypatch):
    path = write(tmp_path / "c.yaml", {"output": {"format": "text"}, "sweep": {"workers": 2}})
    monkeypatch.setenv("ZSTAB_OUTPUT__FORMAT", "json")
    settings = load_config(str(path))
    assert settings.output.format == "json"
    assert settings.sweep.workers == 2


def test_missing_explicit_file():
    with pytest.raises(FileNotFoundError):
        load_config("nowhere.yaml")


def test_invalid_values_are_rejected(tmp_path):
    path = write(tmp_path / "bad.yaml", {"repro": {"dhym_dim": 2}})
    with pytest.raises(ValidationError):
        load_config(str(path))


def test_save_and_reload(tmp_path):
    settings = Settings()
    settings.oracle.instances = 42
    written = save_config(settings, str(tmp_path / "saved.yaml"))
    assert load_config(written).oracle.instances == 42


def test_global_settings(tmp_path):
    path = write(tmp_path / "g.yaml", {"logging": {"level": "DEBUG"}})
    assert init_settings(str(path)).logging.level == "DEBUG"
    assert get_settings().logging.level == "DEBUG"
    update_settings(Settings())
    assert get_settings().logging.level == "WARNING"
