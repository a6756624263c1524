"""
Layout element classes and document categories
"""
from enum import Enum
from typing import Dict


class LayoutCategory(str, Enum):
    """The 11 DocLayNet layout classes; ids follow the published COCO table"""
    
    CAPTION = "Caption"
    FOOTNOTE = "Footnote"
    FORMULA = "Formula"
    LIST_ITEM = "List-item"
    PAGE_FOOTER = "Page-footer"
    PAGE_HEADER = "Page-header"
    PICTURE = "Picture"
    SECTION_HEADER = "Section-header"
    TABLE = "Table"
    TEXT = "Text"
    TITLE = "Title"
    
    @property
    def id(self) -> int:
        return _CATEGORY_IDS[self]
    
    @classmethod
    def from_id(cls, category_id: int) -> "LayoutCategory":
        try:
            return _CATEGORIES_BY_ID[category_id]
        except KeyError:
            raise ValueError(f"unknown layout category id {category_id}") from None
    
    @classmethod
    def from_name(cls, name: str) -> "LayoutCategory":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown layout category name {name!r}") from None


_CATEGORY_IDS: Dict[LayoutCategory, int] = {c: i for i, c in enumerate(LayoutCategory, start=1)}
_CATEGORIES_BY_ID: Dict[int, LayoutCategory] = {i: c for c, i in _CATEGORY_IDS.items()}

# Elements added around the column area rather than inside it
OPTIONAL_CATEGORIES = (
    LayoutCategory.TITLE,
    LayoutCategory.PAGE_HEADER,
    LayoutCategory.PAGE_FOOTER,
    LayoutCategory.FOOTNOTE,
)
BODY_CATEGORIES = tuple(c for c in LayoutCategory if c not in OPTIONAL_CATEGORIES)


class DocCategory(str, Enum):
    """Document categories the competition score averages over"""
    
    REPORTS = "Reports"
    MANUALS = "Manuals"
    PATENTS = "Patents"
    OTHERS = "Others"


# Classifier output order; also the argmax tie-break order
CLASSIFIED_DOC_CATEGORIES = (DocCategory.REPORTS, DocCategory.MANUALS, DocCategory.PATENTS)
