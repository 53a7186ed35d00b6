"""HTTP interface: pydantic schemas, shared handlers, FastAPI app."""

from .app import create_app

__all__ = ["create_app"]
