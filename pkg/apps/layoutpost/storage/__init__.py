"""
Storage package: atomic file output and the tuning history store
"""
from .files import read_bytes, write_atomic
from .history import TrialHistoryStore

__all__ = [
    "read_bytes",
    "write_atomic",
    "TrialHistoryStore",
]
