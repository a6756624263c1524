"""
Evaluation package: matching, AP, mAP reports, document categories
"""
from .matching import match_page, MatchResult
from .metrics import average_precision
from .evaluator import MapEvaluator, map_evaluator, evaluate, doc_category_mean
from .report import dump_report, dump_reports
from .doc_categories import (
    assign_doc_categories,
    map_original_label,
    parse_probabilities,
    resolve_page_categories,
)

__all__ = [
    "match_page",
    "MatchResult",
    "average_precision",
    "MapEvaluator",
    "map_evaluator",
    "evaluate",
    "doc_category_mean",
    "dump_report",
    "dump_reports",
    "assign_doc_categories",
    "map_original_label",
    "parse_probabilities",
    "resolve_page_categories",
]
