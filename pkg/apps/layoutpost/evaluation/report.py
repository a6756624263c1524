"""
Report serialization
"""
from typing import Mapping

from ingestion._json import dump_json
from models.evaluation import MapReport


def dump_report(report: MapReport) -> bytes:
    return dump_json(report.model_dump(mode="json"))


def dump_reports(reports: Mapping[str, MapReport]) -> bytes:
    """One report per model id; a single report is written unwrapped"""
    if len(reports) == 1:
        return dump_report(next(iter(reports.values())))
    return dump_json({model_id: r.model_dump(mode="json") for model_id, r in reports.items()})
