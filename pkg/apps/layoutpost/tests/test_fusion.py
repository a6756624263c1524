"""Weighted Boxes Fusion and the NMS baseline."""

import numpy as np
import pytest

from errors import ConfigError
from fusion import build_clusters, fuse_sets, fuse_sets_by_category, nms_page, nms_set, wbf_page
from models.categories import DocCategory, LayoutCategory
from models.fusion import FusionConfig
from models.sets import PredictionSet
from helpers import box, det, random_box


def _sorted_coords(dets):
    return sorted((tuple(d.bbox.to_ltrb()), d.category.value, d.score) for d in dets)


def _random_page(rng, n_models=3, page_id="1"):
    categories = [LayoutCategory.TEXT, LayoutCategory.TITLE, LayoutCategory.TABLE]
    per_model = []
    for _ in range(n_models):
        dets = []
        for _ in range(rng.integers(0, 8)):
            b = random_box(rng, extent=80, max_size=50)
            dets.append(det(b.to_ltrb(), score=float(rng.uniform(0.01, 1)), page_id=page_id,
                            category=categories[rng.integers(len(categories))]))
        per_model.append(dets)
    return per_model


class TestFusionConfig:

    def test_all_zero_weights_rejected(self):
        with pytest.raises(ValueError):
            FusionConfig(weights=[0, 0])

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError):
            FusionConfig(weights=[1, -1])

    def test_iou_threshold_range(self):
        with pytest.raises(ValueError):
            FusionConfig(iou_threshold=1.0)


class TestWbfPage:

    def test_single_model_identity(self):
        (out,) = wbf_page([[det([1, 2, 30, 40], score=0.8)]], FusionConfig(weights=[1]))
        assert out.bbox == box([1, 2, 30, 40])
        assert out.score == pytest.approx(0.8)

    def test_two_boxes_fuse(self):
        per_model = [[det([0, 0, 10, 10], score=0.8)], [det([0, 0, 20, 20], score=0.4)]]
        (out,) = wbf_page(per_model, FusionConfig(weights=[1, 1], iou_threshold=0.2))
        np.testing.assert_allclose(out.bbox.to_ltrb(), [0, 0, 40 / 3, 40 / 3], atol=1e-6)
        assert out.score == pytest.approx(0.6, abs=1e-6)

    def test_two_boxes_stay_apart(self):
        per_model = [[det([0, 0, 10, 10], score=0.8)], [det([0, 0, 20, 20], score=0.4)]]
        out = wbf_page(per_model, FusionConfig(weights=[1, 1], iou_threshold=0.3))
        assert [d.score for d in out] == pytest.approx([0.4, 0.2])
        assert out[0].bbox == box([0, 0, 10, 10])

    def test_rescale_off(self):
        per_model = [[det([0, 0, 10, 10], score=0.8)], [det([0, 0, 20, 20], score=0.4)]]
        out = wbf_page(per_model, FusionConfig(weights=[1, 1], iou_threshold=0.3, score_rescale=False))
        assert [d.score for d in out] == pytest.approx([0.8, 0.4])

    def test_weight_count_mismatch(self):
        with pytest.raises(ConfigError):
            wbf_page([[det([0, 0, 1, 1])]], FusionConfig(weights=[1, 1]))

    def test_zero_weight_model_dropped(self):
        per_model = [[det([0, 0, 10, 10], score=0.8)], [det([50, 50, 60, 60], score=0.9)]]
        out = wbf_page(per_model, FusionConfig(weights=[2, 0]))
        assert len(out) == 1
        assert out[0].bbox == box([0, 0, 10, 10])

    def test_skip_threshold(self):
        per_model = [[det([0, 0, 10, 10], score=0.8), det([50, 50, 60, 60], score=0.1)]]
        out = wbf_page(per_model, FusionConfig(weights=[1], skip_threshold=0.1))
        assert [d.bbox for d in out] == [box([0, 0, 10, 10])]

    def test_categories_never_merge(self):
        per_model = [[det([0, 0, 10, 10], category=LayoutCategory.TEXT)],
                     [det([0, 0, 10, 10], category=LayoutCategory.TITLE)]]
        out = wbf_page(per_model, FusionConfig(weights=[1, 1]))
        assert {d.category for d in out} == {LayoutCategory.TEXT, LayoutCategory.TITLE}

    def test_empty(self):
        assert wbf_page([[], []], FusionConfig()) == []

    def test_weight_scale_invariance(self):
        rng = np.random.default_rng(8)
        for _ in range(300):
            per_model = _random_page(rng)
            weights = list(rng.integers(1, 11, size=3).astype(float))
            a = wbf_page(per_model, FusionConfig(weights=weights, iou_threshold=0.4))
            b = wbf_page(per_model, FusionConfig(weights=[3 * w for w in weights], iou_threshold=0.4))
            boxes_a = sorted(tuple(d.bbox.to_ltrb()) for d in a)
            boxes_b = sorted(tuple(d.bbox.to_ltrb()) for d in b)
            assert len(boxes_a) == len(boxes_b)
            if boxes_a:
                np.testing.assert_allclose(boxes_a, boxes_b, atol=1e-9)

    def test_model_permutation(self):
        rng = np.random.default_rng(9)
        for _ in range(300):
            per_model = _random_page(rng)
            weights = [1.0, 2.0, 5.0]
            a = wbf_page(per_model, FusionConfig(weights=weights, iou_threshold=0.5))
            b = wbf_page(per_model[::-1], FusionConfig(weights=weights[::-1], iou_threshold=0.5))
            ca, cb = _sorted_coords(a), _sorted_coords(b)
            assert len(ca) == len(cb)
            for x, y in zip(ca, cb):
                np.testing.assert_allclose(x[0], y[0], atol=1e-9)
                assert x[1] == y[1]
                assert x[2] == pytest.approx(y[2], abs=1e-12)


@pytest.mark.slow
class TestClusterProperties:

    def test_convexity_category_separation_conservation(self):
        rng = np.random.default_rng(10)
        for _ in range(10_000):
            per_model = _random_page(rng)
            cfg = FusionConfig(weights=list(rng.integers(0, 4, size=3).astype(float) + [0, 0, 1]),
                               iou_threshold=float(rng.uniform(0.05, 0.95)))
            clusters = build_clusters(per_model, cfg)
            for cluster in clusters:
                members = [m[1] for m in cluster.members]
                assert {d.category for d in members} == {cluster.category}
                for k, edge in enumerate(("left", "top", "right", "bottom")):
                    values = [getattr(d.bbox, edge) for d in members]
                    assert min(values) - 1e-9 <= cluster.fused.to_ltrb()[k] <= max(values) + 1e-9
            fused = wbf_page(per_model, cfg)
            assert len(fused) <= sum(len(d) for d in per_model)
            assert all(0.0 <= d.score <= 1.0 for d in fused)
            assert [d.score for d in fused] == sorted((d.score for d in fused), reverse=True)


class TestFuseSets:

    def test_single_set_identity(self):
        dets = {"1": [det([0, 0, 10, 10], score=0.9), det([50, 50, 70, 80], score=0.3)],
                "2": [det([5, 5, 9, 9], score=0.5, page_id="2")]}
        fused = fuse_sets([PredictionSet(model_id="a", detections=dets)], FusionConfig(weights=[1]))
        assert fused.detections == dets

    def test_two_empty_sets(self):
        fused = fuse_sets([PredictionSet(), PredictionSet()], FusionConfig())
        assert fused.count() == 0

    def test_missing_pages_count_as_empty(self):
        a = PredictionSet(model_id="a", detections={"1": [det([0, 0, 10, 10], score=0.8)]})
        b = PredictionSet(model_id="b", detections={"2": [det([0, 0, 20, 20], score=0.4, page_id="2")]})
        fused = fuse_sets([a, b], FusionConfig(weights=[1, 1]))
        assert set(fused.detections) == {"1", "2"}
        assert fused.detections["1"][0].score == pytest.approx(0.4)

    def test_mismatch(self):
        with pytest.raises(ConfigError):
            fuse_sets([PredictionSet()], FusionConfig(weights=[1, 2]))

    def test_by_document_category(self):
        a = PredictionSet(model_id="a", detections={
            "1": [det([0, 0, 10, 10], score=0.8)], "2": [det([0, 0, 10, 10], score=0.8, page_id="2")]})
        b = PredictionSet(model_id="b", detections={
            "1": [det([0, 0, 20, 20], score=0.4)], "2": [det([0, 0, 20, 20], score=0.4, page_id="2")]})
        fused = fuse_sets_by_category(
            [a, b],
            FusionConfig(weights=[1, 1], iou_threshold=0.2),
            {DocCategory.PATENTS: FusionConfig(weights=[1, 1], iou_threshold=0.3)},
            {"1": DocCategory.REPORTS, "2": DocCategory.PATENTS},
        )
        assert len(fused.detections["1"]) == 1
        assert len(fused.detections["2"]) == 2


class TestNms:

    def test_single_box(self):
        d = det([0, 0, 10, 10])
        assert nms_page([d], 0.5) == [d]

    def test_suppression(self):
        out = nms_page([det([0, 0, 10, 10], score=0.8), det([0, 0, 20, 20], score=0.4)], 0.2)
        assert [d.bbox for d in out] == [box([0, 0, 10, 10])]

    def test_disjoint_kept(self):
        out = nms_page([det([0, 0, 10, 10]), det([20, 20, 30, 30])], 0.2)
        assert len(out) == 2

    def test_subset_of_input(self):
        rng = np.random.default_rng(12)
        for _ in range(500):
            dets = [d for model in _random_page(rng) for d in model]
            out = nms_page(dets, float(rng.uniform(0.1, 0.9)))
            assert all(any(o is d for d in dets) for o in out)

    def test_set_pools_models(self):
        a = PredictionSet(model_id="a", detections={"1": [det([0, 0, 10, 10], score=0.8)]})
        b = PredictionSet(model_id="b", detections={"1": [det([0, 0, 20, 20], score=0.4)]})
        assert nms_set([a, b], 0.2).count() == 1
