"""
Shared fixtures for the workbench tests
"""
import inspect
import sys
import os

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest
from click.testing import CliRunner

from topoising import create_app
from topoising.config import TestingConfig


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='run full-space diagonalizations and large scans')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: long diagonalization, skipped without --runslow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def app():
    app = create_app(TestingConfig)
    with app.app_context():
        yield app


@pytest.fixture
def runner(app):
    # Click >= 8.2 dropped mix_stderr and always captures stderr separately
    if 'mix_stderr' in inspect.signature(CliRunner.__init__).parameters:
        return app.test_cli_runner(mix_stderr=False)
    return app.test_cli_runner()
