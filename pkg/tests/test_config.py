import logging

import pytest
from pydantic import ValidationError

from config.settings import Settings
from core.logger import setup_logger
from core.trajectory import effective_tolerance


def test_environment_overrides(monkeypatch):
    """LESLIE_DYN_* variables override the defaults."""
    monkeypatch.setenv("LESLIE_DYN_THREADS", "2")
    monkeypatch.setenv("LESLIE_DYN_CYCLE_TOL", "1e-8")
    s = Settings(_env_file=None)
    assert s.threads == 2
    assert s.cycle_tol == 1e-8


def test_defaults():
    """Defaults used by detection and Lyapunov averaging."""
    s = Settings(_env_file=None)
    assert (s.transient, s.max_period, s.lyapunov_transient, s.renorm_interval) == (1000, 64, 1000, 1)


def test_thread_count_validated(monkeypatch):
    """At least one thread."""
    monkeypatch.setenv("LESLIE_DYN_THREADS", "0")
    with pytest.raises(ValidationError):
        Settings(_env_file=None)


def test_tolerance_floor_from_settings(monkeypatch):
    """effective_tolerance reads the floor from the settings singleton."""
    from config import settings
    monkeypatch.setattr(settings, "tol_floor", 1e-3)
    assert effective_tolerance(1e-6, 1.0) == 1e-3


def test_logger_file_handler(tmp_path):
    """A log file adds a second handler."""
    log = setup_logger("leslie.test", level="DEBUG", log_file=str(tmp_path / "logs" / "run.log"))
    assert log.level == logging.DEBUG
    assert len(log.handlers) == 2
    log.info("hello")
    for handler in log.handlers:
        handler.flush()
    assert "hello" in (tmp_path / "logs" / "run.log").read_text()
