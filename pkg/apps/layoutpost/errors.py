"""
Error types raised by parsers, configs and pipeline stages
"""
from typing import Optional


class LayoutPostError(ValueError):
    """Base class for all toolkit errors"""


class ParseError(LayoutPostError):
    """Malformed input document or entry"""
    
    def __init__(self, message: str, offset: Optional[int] = None, ref: Optional[str] = None):
        self.offset = offset
        self.ref = ref
        details = []
        if ref is not None:
            details.append(ref)
        if offset is not None:
            details.append(f"byte offset {offset}")
        super().__init__(f"{message} ({', '.join(details)})" if details else message)


class ConfigError(LayoutPostError):
    """Invalid or unsatisfiable configuration"""


class PageMismatchError(LayoutPostError):
    """Detections, cells or ground truth disagree about page identity"""
