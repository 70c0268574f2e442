# tests/test_config.py
import configparser
import json
import os
import sys

import pytest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "../src")))
from terwilliger.config import DEFAULT_SETTINGS, Config, closure_strategy, max_points, report_indent, section
from terwilliger.config.vault import VaultMeta
from terwilliger.constant import DEFAULT_MAX_POINTS, MAX_POINTS_ENV
from terwilliger.errors import ParameterError


# --- Helpers ---------------------------------------------------------------

def write_ini(path, sections: dict):
    """Write an INI file, keeping key case."""
    cfg = configparser.ConfigParser(interpolation=None)
    cfg.optionxform = str
    for sec, mapping in sections.items():
        cfg[sec] = mapping
    with open(path, "w", encoding="utf-8") as f:
        cfg.write(f)


@pytest.fixture
def settings_dir(tmp_path, monkeypatch):
    """Point Config at an empty directory; the settings file appears on first use."""
    monkeypatch.setattr(Config, "path", str(tmp_path / "config"))
    monkeypatch.delenv(MAX_POINTS_ENV, raising=False)
    return tmp_path / "config"


def write_settings(settings_dir, **oracle):
    settings_dir.mkdir(parents=True, exist_ok=True)
    sections = {k: dict(v) for k, v in DEFAULT_SETTINGS.items()}
    sections["ORACLE"].update(oracle)
    write_ini(settings_dir / "terwilliger.ini", sections)


# --- VaultMeta on an INI file ----------------------------------------------

def test_vaultmeta_with_ini_file(tmp_path):
    ini_path = tmp_path / "settings.ini"
    write_ini(ini_path, {
        "ORACLE": {"MAX_POINTS": "64", "CLOSURE_STRATEGY": '"pairwise"'},
        "LOG": {"LEVEL": "DEBUG", "FILE": "yes"},
    })

    class Cfg(metaclass=VaultMeta):
        path = str(ini_path)

    assert Cfg.ORACLE.MAX_POINTS == "64"
    assert Cfg.oracle.max_points == "64"
    # surrounding quotes are stripped
    assert Cfg.ORACLE.CLOSURE_STRATEGY == "pairwise"
    assert Cfg.ORACLE.getint("MAX_POINTS", 1) == 64
    assert Cfg.LOG.getbool("FILE", False) is True
    assert Cfg.LOG.getbool("JSON", False) is False
    assert Cfg.LOG.get_value("MISSING", "fallback") == "fallback"

    raw = Cfg()
    assert set(raw) == {"ORACLE", "LOG"}
    assert raw["LOG"]["LEVEL"] == "DEBUG"

    with pytest.raises(AttributeError):
        _ = Cfg.REPORT
    with pytest.raises(AttributeError):
        _ = Cfg.LOG.NOPE


def test_ini_getint_falls_back_on_garbage(tmp_path):
    ini_path = tmp_path / "settings.ini"
    write_ini(ini_path, {"ORACLE": {"MAX_POINTS": "many", "EMPTY": ""}})

    class Cfg(metaclass=VaultMeta):
        path = str(ini_path)

    assert Cfg.ORACLE.getint("MAX_POINTS", 7) == 7
    assert Cfg.ORACLE.getint("EMPTY", 9) == 9


def test_ini_refuses_file_level_writes(tmp_path):
    dir_path = tmp_path / "config"
    dir_path.mkdir()
    write_ini(dir_path / "settings.ini", {"LOG": {"LEVEL": "INFO"}})

    class Vault(metaclass=VaultMeta):
        path = str(dir_path)

    settings = Vault.settings
    with pytest.raises(AttributeError):
        settings.LEVEL = "DEBUG"
    with pytest.raises(TypeError):
        settings["LOG"] = {}

    log = settings.LOG
    log.level = "DEBUG"
    assert log["LEVEL"] == "DEBUG"


# --- VaultMeta on a JSON file ----------------------------------------------

def test_vaultmeta_with_json_file(tmp_path):
    json_path = tmp_path / "sweep.json"
    json_path.write_text(json.dumps({"VALUES": [2, 3, 4], "N_MAX": 3, "FLAGS": {"VERIFY": True}}),
                         encoding="utf-8")

    class JCfg(metaclass=VaultMeta):
        path = str(json_path)

    assert JCfg.VALUES == [2, 3, 4]
    assert JCfg.n_max == 3
    assert JCfg()["FLAGS"]["VERIFY"] is True
    with pytest.raises(AttributeError):
        _ = JCfg.PRIMES


def test_json_top_level_must_be_an_object(tmp_path):
    json_path = tmp_path / "bad.json"
    json_path.write_text("[1, 2]", encoding="utf-8")

    class JCfg(metaclass=VaultMeta):
        path = str(json_path)

    with pytest.raises(TypeError):
        _ = JCfg.ANYTHING


# --- VaultMeta on a directory ----------------------------------------------

def test_vaultmeta_with_directory_mapping(tmp_path):
    dir_path = tmp_path / "config"
    dir_path.mkdir()
    write_ini(dir_path / "terwilliger-extra.ini", {"REPORT": {"INDENT": "4"}})
    (dir_path / "grid.json").write_text(json.dumps({"PRIMES": [0, 2]}), encoding="utf-8")
    (dir_path / "notes.txt").write_text("hello", encoding="utf-8")
    (dir_path / "legacy.py").write_text("ENABLED = True\n", encoding="utf-8")

    class Vault(metaclass=VaultMeta):
        path = str(dir_path)

    # dashes map to underscores, lookups ignore case
    assert Vault.terwilliger_extra.REPORT.INDENT == "4"
    assert Vault.GRID.PRIMES == [0, 2]

    with pytest.raises(FileNotFoundError):
        _ = Vault.unknown_file
    with pytest.raises(AttributeError):
        _ = Vault.notes
    with pytest.raises(AttributeError):
        _ = Vault.legacy


def test_vaultmeta_invalid_path(tmp_path):
    class Bad(metaclass=VaultMeta):
        path = str(tmp_path / "missing.ini")

    with pytest.raises(FileNotFoundError):
        _ = Bad.SOMETHING
    with pytest.raises(FileNotFoundError):
        _ = Bad()


# --- Project settings ------------------------------------------------------

def test_settings_file_is_created_with_defaults(settings_dir):
    log = section("LOG")
    assert (settings_dir / "terwilliger.ini").exists()
    assert log.LEVEL == "WARNING"
    assert log.getbool("FILE", True) is False
    assert report_indent() == 2
    assert max_points() == DEFAULT_MAX_POINTS
    assert closure_strategy() == "generators"


def test_existing_settings_file_is_kept(settings_dir):
    write_settings(settings_dir, MAX_POINTS="100", CLOSURE_STRATEGY="Pairwise")
    assert max_points() == 100
    assert closure_strategy() == "pairwise"


def test_max_points_precedence(settings_dir, monkeypatch):
    write_settings(settings_dir, MAX_POINTS="100")
    assert max_points() == 100
    assert max_points(50) == 50
    monkeypatch.setenv(MAX_POINTS_ENV, "20")
    assert max_points(50) == 20


@pytest.mark.parametrize("env", ["lots", "0", "-3"])
def test_max_points_rejects_bad_environment(settings_dir, monkeypatch, env):
    monkeypatch.setenv(MAX_POINTS_ENV, env)
    with pytest.raises(ParameterError):
        max_points()


def test_closure_strategy_override(settings_dir):
    assert closure_strategy(" PAIRWISE ") == "pairwise"
    with pytest.raises(ParameterError):
        closure_strategy("greedy")


def test_unwritable_settings_fall_back_to_defaults(tmp_path, monkeypatch):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory", encoding="utf-8")
    monkeypatch.setattr(Config, "path", str(blocker / "config"))
    monkeypatch.delenv(MAX_POINTS_ENV, raising=False)
    assert section("ORACLE") is None
    assert max_points() == DEFAULT_MAX_POINTS
    assert report_indent() == 2
