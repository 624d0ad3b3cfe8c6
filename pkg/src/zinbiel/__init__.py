"""Exact computations on nilpotent Zinbiel algebras."""

__version__ = "0.1.0"

from .app import ZinbielApp

__all__ = ["ZinbielApp", "__version__"]
