"""
Trial history storage (append-only JSON lines)
"""
import json
import logging
from pathlib import Path
from threading import Lock
from typing import List, Optional, Union

from pydantic import ValidationError

from config import settings
from models.tuning import TrialRecord

logger = logging.getLogger("Storage")


class TrialHistoryStore:
    """One TrialRecord per line, appended as trials complete"""
    
    def __init__(self, path: Union[str, Path], record_wall_time: Optional[bool] = None):
        self.path = Path(path)
        self.record_wall_time = (
            settings.TUNE_RECORD_WALL_TIME if record_wall_time is None else record_wall_time
        )
        self._lock = Lock()
    
    def load(self) -> List[TrialRecord]:
        """
        Load every complete record
        
        A torn last line from a crash is cut off the file so later appends
        start on a fresh line; a complete last record missing its newline
        gets one.
        """
        if not self.path.exists():
            return []
        
        records: List[TrialRecord] = []
        with open(self.path, "rb") as f:
            data = f.read()
        lines = data.split(b"\n")
        last = max((i for i, line in enumerate(lines) if line.strip()), default=-1)
        offset = 0
        for i, line in enumerate(lines):
            if line.strip():
                try:
                    records.append(TrialRecord.model_validate(json.loads(line)))
                except (json.JSONDecodeError, UnicodeDecodeError, ValidationError) as e:
                    if i < last:
                        raise ValueError(f"{self.path}:{i + 1}: bad trial record: {e}") from None
                    logger.warning(f"Dropping incomplete last line {i + 1} of {self.path}")
                    self._truncate(offset)
                    break
            offset += len(line) + 1
        else:
            if data and not data.endswith(b"\n"):
                self._terminate()
        
        logger.info(f"Loaded {len(records)} trials from {self.path}")
        return records
    
    def _truncate(self, size: int) -> None:
        with self._lock:
            with open(self.path, "r+b") as f:
                f.truncate(size)
    
    def _terminate(self) -> None:
        with self._lock:
            with open(self.path, "ab") as f:
                f.write(b"\n")
    
    def append(self, record: TrialRecord) -> None:
        payload = record.model_dump(mode="json")
        if not self.record_wall_time:
            payload.pop("wall_time", None)
        line = json.dumps(payload, separators=(",", ":"), allow_nan=False)
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(line + "\n")
                f.flush()
