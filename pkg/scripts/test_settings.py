"""
Tests for settings lookup inside and outside the app context
"""
import sys
import os

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from concurrent.futures import ThreadPoolExecutor

from topoising import create_app
from topoising.config import TestingConfig
from topoising.utils.settings import get_setting, with_app_context, worker_count


def read_table_size(_):
    return get_setting('TABLE_SIZE', 6)


def test_pool_workers_see_app_config(app):
    app.config['TABLE_SIZE'] = 4
    with ThreadPoolExecutor(max_workers=2) as pool:
        sizes = list(pool.map(with_app_context(read_table_size), range(4)))
    assert sizes == [4, 4, 4, 4]


def test_worker_count_follows_app_config(app):
    app.config['TOPOISING_THREADS'] = 3
    assert worker_count() == 3
    assert worker_count(1) == 1


def test_without_app_context_task_is_unchanged():
    assert with_app_context(read_table_size) is read_table_size


def test_app_config_overrides_defaults():
    app = create_app(TestingConfig)
    app.config['TABLE_SIZE'] = 8
    with app.app_context():
        assert get_setting('TABLE_SIZE', 6) == 8
