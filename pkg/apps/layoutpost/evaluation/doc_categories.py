"""
Document category assignment: classifier probabilities and original labels
"""
import logging
import math
import re
from typing import Dict, List, Mapping, Optional, Sequence, Union

import numpy as np

from errors import LayoutPostError, ParseError
from ingestion._json import load_json
from models.categories import CLASSIFIED_DOC_CATEGORIES, DocCategory
from models.sets import GroundTruthSet

logger = logging.getLogger("Eval")

# Original dataset labels folded into "reports"
REPORT_LABELS = {
    "scientific articles",
    "laws and regulations",
    "government tenders",
    "financial reports",
}


def _normalize_label(label: str) -> str:
    return re.sub(r"[\s_\-]+", " ", label).strip().lower()


def map_original_label(label: str) -> DocCategory:
    """Map a dataset document label onto the four scoring categories"""
    key = _normalize_label(label)
    if key in REPORT_LABELS:
        return DocCategory.REPORTS
    if key == "manuals":
        return DocCategory.MANUALS
    if key == "patents":
        return DocCategory.PATENTS
    logger.warning(f"Unknown document label {label!r}, counted as {DocCategory.OTHERS.value}")
    return DocCategory.OTHERS


def _check_vector(page_id: str, probs: Sequence[float]) -> None:
    if len(probs) != len(CLASSIFIED_DOC_CATEGORIES):
        raise LayoutPostError(
            f"page {page_id}: expected {len(CLASSIFIED_DOC_CATEGORIES)} probabilities, got {len(probs)}"
        )
    if any(not math.isfinite(p) or p < 0 for p in probs):
        raise LayoutPostError(f"page {page_id}: probabilities must be finite and non-negative, got {list(probs)}")
    if abs(sum(probs) - 1.0) > 1e-6:
        raise LayoutPostError(f"page {page_id}: probabilities sum to {sum(probs)}, not 1")


def assign_doc_categories(
    probs: Mapping[str, Sequence[float]],
    threshold: float = 0.5,
) -> Dict[str, DocCategory]:
    """
    Top-1 category per page, or Others when the top probability is below threshold
    
    Args:
        probs: page_id -> (p_reports, p_manuals, p_patents)
        threshold: Minimum top-1 probability
    """
    assigned = {}
    for page_id, vector in probs.items():
        _check_vector(page_id, vector)
        top = int(np.argmax(vector))  # first maximum wins ties
        assigned[page_id] = CLASSIFIED_DOC_CATEGORIES[top] if vector[top] >= threshold else DocCategory.OTHERS
    return assigned


def parse_probabilities(data: Union[bytes, str]) -> Dict[str, List[float]]:
    """Parse {page_id: [p_reports, p_manuals, p_patents]}"""
    doc = load_json(data, "probabilities")
    if not isinstance(doc, dict):
        raise ParseError("probabilities must be a JSON object keyed by page id")
    parsed = {}
    for page_id, vector in doc.items():
        if not isinstance(vector, list) or not all(isinstance(p, (int, float)) for p in vector):
            raise ParseError("probability vector must be a list of numbers", ref=f"page {page_id}")
        parsed[str(page_id)] = [float(p) for p in vector]
    return parsed


def resolve_page_categories(
    gt: GroundTruthSet,
    assigned: Optional[Mapping[str, DocCategory]] = None,
) -> Dict[str, DocCategory]:
    """Category for every GT page: assigned value, else its original label, else Others"""
    assigned = assigned or {}
    resolved = {}
    for page_id, page in gt.pages.items():
        if page_id in assigned:
            resolved[page_id] = assigned[page_id]
        elif page.doc_label:
            resolved[page_id] = map_original_label(page.doc_label)
        else:
            resolved[page_id] = DocCategory.OTHERS
    return resolved
