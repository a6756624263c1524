"""
Text-cell bounding-box refinement
"""
from .cell_matcher import CellMatcher, cell_matcher

classify_edges = cell_matcher.classify_edges
refine_detection = cell_matcher.refine_detection
refine_page = cell_matcher.refine_page
refine_set = cell_matcher.refine_set

__all__ = [
    "CellMatcher",
    "cell_matcher",
    "classify_edges",
    "refine_detection",
    "refine_page",
    "refine_set",
]
