"""
File helpers: whole-file reads and atomic writes
"""
import logging
import os
import tempfile
from pathlib import Path
from typing import Union

logger = logging.getLogger("Storage")


def read_bytes(path: Union[str, Path]) -> bytes:
    with open(path, "rb") as f:
        return f.read()


def write_atomic(path: Union[str, Path], data: bytes) -> Path:
    """
    Write `data` to `path` so readers never observe a partial file
    
    The bytes go to a temporary file in the same directory which then
    replaces the target.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug(f"Wrote {len(data)} bytes to {path}")
    return path
