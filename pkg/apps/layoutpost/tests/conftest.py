import json
from pathlib import Path

import pytest

from helpers import TEXT, det, gt_set, perfect_predictions
from ingestion import dump_ground_truth, dump_predictions
from models.sets import PredictionSet


class InputWriter:
    """Writes run inputs into a temporary directory and returns their paths"""
    
    def __init__(self, root: Path):
        self.root = root
    
    def gt(self, gt, name="gt.json") -> Path:
        path = self.root / name
        path.write_bytes(dump_ground_truth(gt))
        return path
    
    def preds(self, preds: PredictionSet) -> Path:
        path = self.root / f"{preds.model_id}.json"
        path.write_bytes(dump_predictions(preds))
        return path
    
    def json(self, name, doc) -> Path:
        path = self.root / name
        path.write_text(json.dumps(doc))
        return path


@pytest.fixture
def inputs(tmp_path):
    return InputWriter(tmp_path)


@pytest.fixture
def perfect_and_noise():
    """Ten pages; model `a` is exact at low confidence, model `b` confidently wrong"""
    gt = gt_set({
        str(p): [([10, 10 + 40 * k, 300, 40 + 40 * k], TEXT) for k in range(2)]
        for p in range(1, 11)
    })
    a = perfect_predictions(gt, "a", score=0.6)
    b = PredictionSet(
        model_id="b",
        detections={
            str(p): [det([500, 500 + 30 * k, 900, 520 + 30 * k], score=0.95, page_id=str(p)) for k in range(2)]
            for p in range(1, 11)
        },
    )
    return gt, a, b
