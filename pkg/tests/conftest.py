from __future__ import annotations

import os

import pytest

from coverforge.cli.config import RunConfig, parse_config_text

_LINES: dict[str, str] = {}


def pytest_addoption(parser):
    parser.addoption(
        "--coverforge-config",
        default=None,
        help="run configuration naming Y/X equation files; enables the data-gated criteria",
    )


@pytest.fixture(scope="session")
def acceptance_config(request) -> RunConfig:
    path = request.config.getoption("--coverforge-config")
    if not path:
        return RunConfig()
    with open(path) as fh:
        cfg = parse_config_text(fh.read(), os.path.dirname(os.path.abspath(path)))
    cfg.validate()
    return cfg


@pytest.fixture
def record_acceptance():
    def record(res) -> None:
        _LINES[res.claim_id] = f"ACCEPTANCE {res.line()}"
        print(_LINES[res.claim_id])

    return record


def _order(cid: str) -> tuple:
    return ("GPD".index(cid[0]), int(cid[1:]))


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_LINES, key=_order):
        terminalreporter.write_line(_LINES[cid])
