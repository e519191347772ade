"""HTTP service wrapper around the ccrt library."""

from .app import app, create_app

__all__ = ["app", "create_app"]
