"""Invariants of PGU(3,q) on the Hermitian curve."""

__version__ = "0.1.0"

from .config import load_run_config  # noqa: E402

__all__ = ["__version__", "load_run_config"]
