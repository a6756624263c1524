"""Box arithmetic: IoU, area, containment, envelopes."""

import numpy as np
import pytest

from geometry import area, contains, envelope, iou, iou_checked
from helpers import box, random_box, random_int_box


def _pixel_iou(a, b, scale=4):
    """Count cells of a 1/scale grid covered by each box."""
    grid = np.zeros((2, 21 * scale, 21 * scale), dtype=bool)
    for k, bb in enumerate((a, b)):
        l, t, r, btm = (int(round(v * scale)) for v in bb.to_ltrb())
        grid[k, t:btm, l:r] = True
    inter = np.logical_and(grid[0], grid[1]).sum()
    union = np.logical_or(grid[0], grid[1]).sum()
    return inter / union if union else 0.0


class TestIou:

    def test_identity(self):
        assert iou(box([0, 0, 10, 10]), box([0, 0, 10, 10])) == 1.0

    def test_disjoint(self):
        assert iou(box([0, 0, 1, 1]), box([5, 5, 6, 6])) == 0.0

    def test_partial_overlap(self):
        assert iou(box([0, 0, 2, 2]), box([1, 0, 3, 2])) == pytest.approx(1 / 3, abs=1e-6)

    def test_degenerate_pair_is_flagged(self):
        result = iou_checked(box([0, 0, 0, 0]), box([1, 1, 1, 1]))
        assert result.value == 0.0
        assert result.degenerate

    def test_degenerate_against_real_box(self):
        result = iou_checked(box([3, 3, 3, 9]), box([0, 0, 10, 10]))
        assert result.value == 0.0
        assert not result.degenerate

    def test_matches_pixel_grid(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            # Quarter-pixel coordinates are exact on the counting grid
            a = box([v / 4 for v in random_int_box(rng, 80).to_ltrb()])
            b = box([v / 4 for v in random_int_box(rng, 80).to_ltrb()])
            assert iou(a, b) == pytest.approx(_pixel_iou(a, b), abs=1e-4)

    def test_symmetry_and_bounds(self):
        rng = np.random.default_rng(11)
        for _ in range(2000):
            a, b = random_box(rng), random_box(rng)
            value = iou(a, b)
            assert value == iou(b, a)
            assert 0.0 <= value <= 1.0
            if area(a) > 0 and area(b) > 0:
                assert value <= min(area(a), area(b)) / max(area(a), area(b)) + 1e-12
                assert iou(a, a) == pytest.approx(1.0)


class TestArea:

    def test_values(self):
        assert area(box([0, 0, 10, 10])) == 100
        assert area(box([3, 3, 3, 9])) == 0
        assert area(box([1.5, 2.0, 4.0, 5.0])) == pytest.approx(7.5)


class TestContains:

    def test_examples(self):
        assert contains(box([0, 0, 10, 10]), box([2, 2, 8, 8]), 0)
        assert not contains(box([0, 0, 10, 10]), box([2, 2, 11, 8]), 0)
        assert contains(box([0, 0, 10, 10]), box([-0.5, 0, 10, 10]), 1.0)

    def test_negative_tolerance_rejected(self):
        with pytest.raises(ValueError):
            contains(box([0, 0, 1, 1]), box([0, 0, 1, 1]), -1)

    def test_contained_iou_is_area_ratio(self):
        rng = np.random.default_rng(3)
        for _ in range(500):
            outer = random_box(rng)
            if area(outer) == 0:
                continue
            fx = np.sort(rng.uniform(outer.left, outer.right, size=2))
            fy = np.sort(rng.uniform(outer.top, outer.bottom, size=2))
            inner = box([fx[0], fy[0], fx[1], fy[1]])
            assert contains(outer, inner, 0)
            assert iou(outer, inner) == pytest.approx(area(inner) / area(outer), rel=1e-9, abs=1e-12)


class TestEnvelope:

    def test_examples(self):
        assert envelope([box([0, 0, 5, 5])]) == box([0, 0, 5, 5])
        assert envelope([box([0, 0, 5, 5]), box([3, 1, 9, 4])]) == box([0, 0, 9, 5])
        assert envelope([box([2, 2, 4, 4]), box([2, 2, 4, 4])]) == box([2, 2, 4, 4])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            envelope([])

    def test_idempotent(self):
        rng = np.random.default_rng(5)
        boxes = [random_box(rng) for _ in range(10)]
        env = envelope(boxes)
        assert envelope([env]) == env
