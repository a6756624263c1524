"""Pipeline service: input loading, stage order, the tuning objective."""

import json
import math

import numpy as np
import pytest

from errors import ConfigError, PageMismatchError
from helpers import TEXT, det, gt_set, perfect_predictions
from models.box import BBox, TextCell
from models.categories import DocCategory
from models.pipeline import PipelineConfig, StageOrder
from models.sets import CellSet, PredictionSet
from models.tuning import HyperSpace, TpeConfig, TrialPoint
from services.pipeline import PipelineInputs, TuneResult, pipeline_service
from tuning import optimize


@pytest.fixture
def complementary():
    """Model `a` sees pages 1-5 exactly, model `b` pages 6-10"""
    gt = gt_set({str(p): [([20, 20, 200, 60], TEXT)] for p in range(1, 11)})
    full = perfect_predictions(gt, score=0.9)
    a = full.restricted_to([str(p) for p in range(1, 6)]).model_copy(update={"model_id": "a"})
    b = full.restricted_to([str(p) for p in range(6, 11)]).model_copy(update={"model_id": "b"})
    return PipelineInputs(gt=gt, preds=[a, b])


class TestObjective:

    def test_ensemble_beats_each_model(self, complementary):
        objective = pipeline_service.make_objective(complementary, PipelineConfig())
        only_a = objective(TrialPoint(weights=[1, 0], iou_threshold=0.55))
        only_b = objective(TrialPoint(weights=[0, 1], iou_threshold=0.55))
        both = objective(TrialPoint(weights=[1, 1], iou_threshold=0.55))
        assert only_a == pytest.approx(51 / 101)
        assert only_b == pytest.approx(51 / 101)
        assert both == pytest.approx(1.0)

    def test_all_zero_weights_fail(self, complementary):
        objective = pipeline_service.make_objective(complementary, PipelineConfig())
        with pytest.raises(ValueError):
            objective(TrialPoint(weights=[0, 0], iou_threshold=0.55))

    def test_pages_outside_ground_truth(self, complementary):
        stray = PredictionSet(model_id="c", detections={"99": [det([0, 0, 5, 5], page_id="99")]})
        inputs = complementary.model_copy(update={"preds": [*complementary.preds, stray]})
        with pytest.raises(PageMismatchError):
            pipeline_service.make_objective(inputs, PipelineConfig())

    def test_tuned_point_not_worse_than_single_models(self, complementary, tmp_path):
        cfg = PipelineConfig(tpe=TpeConfig(budget=30, seed=1))
        [result] = pipeline_service.tune(complementary, cfg, tmp_path)
        assert result.objective >= 51 / 101
        assert result.trials == 30
        assert (tmp_path / "history.jsonl").exists()

    def test_best_config_with_every_trial_failed(self):
        failed = TuneResult(label="all", point=TrialPoint(weights=[0, 0], iou_threshold=0.55),
                            objective=-math.inf, trials=1)
        text = pipeline_service.best_config_fragment([failed], PipelineConfig(), per_category=False).decode()
        assert "Infinity" not in text
        assert json.loads(text)["objective"] == {"all": None}

    def test_unknown_search_method(self, complementary, tmp_path):
        with pytest.raises(ConfigError):
            pipeline_service.tune(complementary, PipelineConfig(), tmp_path, method="grid")


class TestProcess:

    def _inputs(self):
        gt = gt_set({"1": [([10, 10, 110, 20], TEXT)]})
        preds = [
            PredictionSet(model_id=m, detections={"1": [det([11, 9, 109, 21])]})
            for m in ("a", "b")
        ]
        cells = CellSet(cells={"1": [TextCell(bbox=BBox.of(10, 10, 110, 20))]})
        return PipelineInputs(gt=gt, preds=preds, cells=cells)

    @pytest.mark.parametrize("order", list(StageOrder))
    def test_refines_in_either_order(self, order):
        cfg = PipelineConfig(order=order)
        fused = pipeline_service.process(self._inputs(), cfg)
        [only] = fused.detections["1"]
        assert only.bbox.to_ltrb() == pytest.approx([10, 10, 110, 20])

    def test_without_cells_only_fuses(self):
        inputs = self._inputs().model_copy(update={"cells": None})
        [only] = pipeline_service.process(inputs, PipelineConfig()).detections["1"]
        assert only.bbox.to_ltrb() == pytest.approx([11, 9, 109, 21])

    def test_needs_predictions(self):
        with pytest.raises(ConfigError):
            pipeline_service.process(PipelineInputs(), PipelineConfig())


class TestLoading:

    def test_missing_inputs_listed(self, tmp_path):
        cfg = PipelineConfig(gt=tmp_path / "gt.json", preds=[tmp_path / "a.json"])
        with pytest.raises(ConfigError, match="a.json"):
            pipeline_service.load_inputs(cfg)

    def test_predictions_named_after_files(self, inputs, complementary):
        gt_path = inputs.gt(complementary.gt)
        paths = [inputs.preds(p) for p in complementary.preds]
        loaded = pipeline_service.load_inputs(PipelineConfig(gt=gt_path, preds=paths))
        assert [p.model_id for p in loaded.preds] == ["a", "b"]
        assert set(loaded.page_categories.values()) == {DocCategory.OTHERS}

    def test_restricted_inputs(self, complementary):
        part = complementary.restricted_to(["1", "6"])
        assert set(part.gt.pages) == {"1", "6"}
        assert [set(p.detections) for p in part.preds] == [{"1"}, {"6"}]


def _complementary_construction(seed):
    """Two exact models over a random split of the pages, each keeping 3 to 7 of 10"""
    rng = np.random.default_rng(seed)
    pages = {
        str(p): [([20, 20 + 50 * k, 400, 60 + 50 * k], TEXT) for k in range(int(rng.integers(1, 4)))]
        for p in range(1, 11)
    }
    gt = gt_set(pages)
    order = [str(p) for p in rng.permutation(np.arange(1, 11))]
    cut = int(rng.integers(3, 8))
    models = []
    for name, keep in (("a", order[:cut]), ("b", order[cut:])):
        full = perfect_predictions(gt, name, score=float(rng.uniform(0.3, 1.0)))
        models.append(full.restricted_to(keep))
    return PipelineInputs(gt=gt, preds=models)


@pytest.mark.slow
def test_tuned_ensemble_beats_best_single_model():
    wins = 0
    for seed in range(20):
        inputs = _complementary_construction(seed)
        objective = pipeline_service.make_objective(inputs, PipelineConfig())
        best_single = max(
            objective(TrialPoint(weights=[1, 0], iou_threshold=0.55)),
            objective(TrialPoint(weights=[0, 1], iou_threshold=0.55)),
        )
        _, tuned, _ = optimize(objective, HyperSpace(n_models=2), TpeConfig(budget=40, seed=seed))
        assert tuned >= best_single - 1e-9
        wins += tuned > best_single
    assert wins >= 16
