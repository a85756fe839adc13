"""
Settings lookup
Services read tuning values from the active Flask app when one is pushed,
and from the base Config otherwise, so the library works outside the CLI.
"""
from typing import Any

from flask import current_app, has_app_context

from topoising.config import Config


def get_setting(name: str, default: Any = None) -> Any:
    if has_app_context():
        return current_app.config.get(name, getattr(Config, name, default))
    return getattr(Config, name, default)


def worker_count(threads: int | None = None) -> int:
    """Resolve the worker cap: explicit value first, then TOPOISING_THREADS."""
    value = threads if threads is not None else get_setting('TOPOISING_THREADS', 1)
    return max(1, int(value))


def with_app_context(func):
    """
    Wrap a pool task so it runs inside the caller's Flask app context;
    worker threads do not inherit it.
    """
    if not has_app_context():
        return func
    app = current_app._get_current_object()

    def run(*args, **kwargs):
        with app.app_context():
            return func(*args, **kwargs)
    return run
