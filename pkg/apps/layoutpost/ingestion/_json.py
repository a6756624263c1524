"""
JSON decoding with byte-offset error reporting
"""
import json
from typing import Any, Union

from errors import ParseError


def load_json(data: Union[bytes, str], what: str) -> Any:
    """Decode a JSON document, reporting syntax errors by byte offset"""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"{what} is not valid UTF-8", offset=e.start) from None
    else:
        text = data
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        offset = len(text[:e.pos].encode("utf-8"))
        raise ParseError(f"malformed {what} JSON: {e.msg}", offset=offset) from None


def dump_json(obj: Any, indent: int = 2) -> bytes:
    return json.dumps(obj, indent=indent).encode("utf-8")
