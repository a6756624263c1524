"""
Pre-cropped element pool, indexed by category
"""
import logging
from typing import Dict, List, Sequence, Tuple, Union

from pydantic import ValidationError

from errors import ParseError
from ingestion._json import load_json
from models.categories import BODY_CATEGORIES, LayoutCategory
from models.layout import PatchRecord

logger = logging.getLogger("Synth")


class PatchPool:
    """Immutable grouping of patch records; empty categories are allowed"""
    
    def __init__(self, records: Sequence[PatchRecord]):
        grouped: Dict[LayoutCategory, List[PatchRecord]] = {c: [] for c in LayoutCategory}
        for record in records:
            grouped[record.category].append(record)
        self._by_category: Dict[LayoutCategory, Tuple[PatchRecord, ...]] = {
            c: tuple(r) for c, r in grouped.items()
        }
        self._body: Tuple[PatchRecord, ...] = tuple(
            r for c in LayoutCategory if c in BODY_CATEGORIES for r in self._by_category[c]
        )
    
    def records(self, category: LayoutCategory) -> Tuple[PatchRecord, ...]:
        return self._by_category[category]
    
    @property
    def body_records(self) -> Tuple[PatchRecord, ...]:
        """Records that may fill columns"""
        return self._body
    
    def sizes(self) -> Dict[LayoutCategory, int]:
        """Non-empty categories with their record counts"""
        return {c: len(r) for c, r in self._by_category.items() if r}
    
    def __len__(self) -> int:
        return sum(len(r) for r in self._by_category.values())


def build_pool(records: Sequence[PatchRecord]) -> PatchPool:
    pool = PatchPool(records)
    logger.debug(f"Patch pool: {len(pool)} records in {len(pool.sizes())} categories")
    return pool


def parse_patch_catalog(data: Union[bytes, str]) -> List[PatchRecord]:
    """Parse a JSON array of {category, width, height, source_ref}"""
    doc = load_json(data, "patch catalog")
    if not isinstance(doc, list):
        raise ParseError("patch catalog must be a JSON array")
    records = []
    for i, entry in enumerate(doc):
        try:
            records.append(PatchRecord.model_validate(entry))
        except ValidationError as e:
            raise ParseError(f"bad patch record: {e.errors()[0]['msg']}", ref=f"entry {i}") from None
    return records
