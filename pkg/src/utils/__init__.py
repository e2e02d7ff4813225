# Utilities module
from .fileio import atomic_write_csv, atomic_write_text

__all__ = ["atomic_write_csv", "atomic_write_text"]
