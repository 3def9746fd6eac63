"""
Config module - Configuration management.
"""

from .settings import Config

__all__ = ["Config"]
