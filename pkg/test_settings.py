import logging

import pytest

import settings
from cli import _make_parser


@pytest.fixture
def captured(monkeypatch):
    seen = {}
    monkeypatch.setattr(logging, "basicConfig", lambda **kwargs: seen.update(kwargs))
    return seen


@pytest.mark.parametrize("level, expected", [("info", "INFO"), ("Debug", "DEBUG"), ("ERROR", "ERROR")])
def test_log_level_is_upper_cased(captured, level, expected):
    settings.setup_logging(level)
    assert captured["level"] == expected


def test_log_level_defaults_to_env(captured, monkeypatch):
    monkeypatch.setattr(settings, "GBENT_LOG_LEVEL", "warning")
    settings.setup_logging()
    assert captured["level"] == "WARNING"


def test_unknown_log_level(captured):
    with pytest.raises(SystemExit):
        settings.setup_logging("chatty")


def test_cli_accepts_lower_case_level():
    args = _make_parser().parse_args(["--log-level", "info", "gray", "2:1:0,1"])
    assert args.log_level == "INFO"
