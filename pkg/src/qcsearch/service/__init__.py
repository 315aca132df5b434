"""FastAPI service wrapping the analysis library."""

from .app import app

__all__ = ["app"]
