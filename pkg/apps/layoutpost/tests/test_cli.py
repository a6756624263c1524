"""Command-line surface, driven through click's test runner."""

import json
import logging

import pytest
from click.testing import CliRunner

from helpers import TEXT, det, gt_set
from main import cli
from models.sets import PredictionSet


@pytest.fixture
def runner():
    yield CliRunner()
    # The console handler is bound to the runner's captured stderr
    root = logging.getLogger()
    for handler in [h for h in root.handlers if type(h) is logging.StreamHandler]:
        root.removeHandler(handler)


def _single_box_gt():
    return gt_set({"1": [([0, 0, 10, 10], TEXT)]})


class TestRefineCommand:

    def test_snaps_to_cell(self, runner, inputs, tmp_path):
        gt = inputs.gt(gt_set({"1": [([10, 10, 110, 20], TEXT)]}))
        preds = inputs.preds(PredictionSet(model_id="m", detections={"1": [det([11, 9, 109, 21])]}))
        cells = inputs.json("cells.json", {"1": [{"bbox": [10, 10, 110, 20], "text": "hello"}]})
        out = tmp_path / "out"
        
        result = runner.invoke(cli, ["refine", "--gt", str(gt), "--preds", str(preds), "--cells", str(cells),
                                     "--epsilon", "2", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "ReplacedByCell=1" in result.output
        
        audit = json.loads((out / "m.audit.json").read_text())
        assert audit["counts"]["ReplacedByCell"] == 1
        entry = audit["pages"]["1"][0]
        assert entry["input_bbox"] == [11, 9, 109, 21]
        assert entry["output_bbox"] == [10, 10, 110, 20]
        refined = json.loads((out / "m.refined.json").read_text())
        assert refined[0]["bbox"] == [10, 10, 100, 10]

    def test_empty_predictions(self, runner, inputs, tmp_path):
        preds = inputs.json("empty.json", [])
        cells = inputs.json("cells.json", {})
        result = runner.invoke(cli, ["refine", "--preds", str(preds), "--cells", str(cells),
                                     "--out", str(tmp_path / "out")])
        assert result.exit_code == 0, result.output
        assert json.loads((tmp_path / "out" / "empty.refined.json").read_text()) == []

    def test_requires_cells(self, runner, inputs, tmp_path):
        preds = inputs.json("empty.json", [])
        result = runner.invoke(cli, ["refine", "--preds", str(preds), "--out", str(tmp_path / "out")])
        assert result.exit_code == 1
        assert "--cells" in result.output


class TestEvaluateCommand:

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["evaluate", "--gt", str(tmp_path / "nope.json"),
                                     "--preds", str(tmp_path / "nope2.json")])
        assert result.exit_code != 0
        assert "not found" in result.output

    def test_perfect_predictions(self, runner, inputs, perfect_and_noise, tmp_path):
        gt, a, _ = perfect_and_noise
        out = tmp_path / "report.json"
        result = runner.invoke(cli, ["evaluate", "--gt", str(inputs.gt(gt)), "--preds", str(inputs.preds(a)),
                                     "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "100.0" in result.output
        assert json.loads(out.read_text())["overall_map"] == pytest.approx(1.0)

    def test_false_positive_ranked_first(self, runner, inputs):
        preds = PredictionSet(model_id="m", detections={"1": [
            det([20, 20, 30, 30], score=0.9),
            det([0, 0, 10, 10], score=0.8),
        ]})
        result = runner.invoke(cli, ["evaluate", "--gt", str(inputs.gt(_single_box_gt())),
                                     "--preds", str(inputs.preds(preds)), "--iou", "0.5"])
        assert result.exit_code == 0, result.output
        overall = next(line for line in result.output.splitlines() if line.startswith("overall"))
        assert overall.split()[-1] == "50.0"

    def test_unknown_page(self, runner, inputs):
        preds = PredictionSet(model_id="m", detections={"2": [det([0, 0, 10, 10], page_id="2")]})
        result = runner.invoke(cli, ["evaluate", "--gt", str(inputs.gt(_single_box_gt())),
                                     "--preds", str(inputs.preds(preds))])
        assert result.exit_code != 0

    def test_config_file_paths_are_relative_to_it(self, runner, inputs, perfect_and_noise):
        gt, a, _ = perfect_and_noise
        inputs.gt(gt)
        inputs.preds(a)
        config = inputs.json("run.json", {"gt": "gt.json", "preds": ["a.json"]})
        result = runner.invoke(cli, ["evaluate", "--config", str(config)])
        assert result.exit_code == 0, result.output
        assert "== a ==" in result.output


class TestFuseCommand:

    @pytest.mark.parametrize("method", ["wbf", "nms"])
    def test_identical_models(self, runner, inputs, perfect_and_noise, tmp_path, method):
        gt, a, _ = perfect_and_noise
        copy = a.model_copy(update={"model_id": "a2"})
        out = tmp_path / "fused.json"
        result = runner.invoke(cli, ["fuse", "--gt", str(inputs.gt(gt)), "--preds", str(inputs.preds(a)),
                                     "--preds", str(inputs.preds(copy)), "--method", method, "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert len(json.loads(out.read_text())) == a.count()

    def test_bad_weights(self, runner, inputs, perfect_and_noise, tmp_path):
        _, a, _ = perfect_and_noise
        result = runner.invoke(cli, ["fuse", "--preds", str(inputs.preds(a)), "--weights", "1,x",
                                     "--out", str(tmp_path / "fused.json")])
        assert result.exit_code == 1
        assert "--weights" in result.output


class TestTuneCommand:

    def _args(self, inputs, data, out, *extra):
        gt, a, b = data
        return ["tune", "--gt", str(inputs.gt(gt)), "--preds", str(inputs.preds(a)),
                "--preds", str(inputs.preds(b)), "--out", str(out), *extra]

    def test_budget_one(self, runner, inputs, perfect_and_noise, tmp_path):
        out = tmp_path / "tune"
        result = runner.invoke(cli, self._args(inputs, perfect_and_noise, out, "--budget", "1"))
        assert result.exit_code == 0, result.output
        assert len((out / "history.jsonl").read_text().splitlines()) == 1
        best = json.loads((out / "best_config.json").read_text())
        assert len(best["fusion"]["weights"]) == 2

    def test_finds_perfect_ensemble(self, runner, inputs, perfect_and_noise, tmp_path):
        out = tmp_path / "tune"
        result = runner.invoke(cli, self._args(inputs, perfect_and_noise, out, "--budget", "30", "--seed", "2"))
        assert result.exit_code == 0, result.output
        assert "objective 100.0" in result.output
        best = json.loads((out / "best_config.json").read_text())
        assert best["objective"]["all"] == pytest.approx(1.0)
        weights = best["fusion"]["weights"]
        assert 0.95 * weights[1] < 0.6 * weights[0]

    def test_parallel_jobs(self, runner, inputs, perfect_and_noise, tmp_path):
        out = tmp_path / "tune"
        result = runner.invoke(cli, self._args(inputs, perfect_and_noise, out, "--budget", "200", "--jobs", "4"))
        assert result.exit_code == 0, result.output
        assert "objective 100.0 after 200 trials" in result.output
        lines = (out / "history.jsonl").read_text().splitlines()
        assert sorted(json.loads(line)["trial_id"] for line in lines) == list(range(200))
        best = json.loads((out / "best_config.json").read_text())
        assert best["objective"]["all"] == pytest.approx(1.0)
        weights = best["fusion"]["weights"]
        assert 0.95 * weights[1] < 0.6 * weights[0]

    def test_same_seed_same_history(self, runner, inputs, perfect_and_noise, tmp_path):
        for run in ("one", "two"):
            result = runner.invoke(cli, self._args(inputs, perfect_and_noise, tmp_path / run,
                                                   "--budget", "25", "--seed", "9"))
            assert result.exit_code == 0, result.output
        assert (tmp_path / "one" / "history.jsonl").read_bytes() == (tmp_path / "two" / "history.jsonl").read_bytes()

    def test_per_category(self, runner, inputs, perfect_and_noise, tmp_path):
        probs = inputs.json("probs.json", {
            str(p): [0.8, 0.1, 0.1] if p <= 5 else [0.1, 0.1, 0.8] for p in range(1, 11)
        })
        out = tmp_path / "tune"
        result = runner.invoke(cli, self._args(inputs, perfect_and_noise, out, "--budget", "3",
                                               "--probs", str(probs), "--per-category"))
        assert result.exit_code == 0, result.output
        assert len((out / "history_reports.jsonl").read_text().splitlines()) == 3
        assert len((out / "history_patents.jsonl").read_text().splitlines()) == 3
        best = json.loads((out / "best_config.json").read_text())
        assert set(best["fusion_by_category"]) == {"Reports", "Patents"}


class TestSynthCommand:

    def test_writes_dataset(self, runner, inputs, tmp_path):
        catalog = inputs.json("catalog.json", [
            {"category": "Text", "width": 200, "height": 40, "source_ref": "a.png"},
            {"category": "Picture", "width": 300, "height": 200, "source_ref": "b.png"},
            {"category": "Title", "width": 400, "height": 50, "source_ref": "c.png"},
        ])
        runs = []
        for run in ("one", "two"):
            out = tmp_path / run
            result = runner.invoke(cli, ["synth", "--catalog", str(catalog), "--count", "3", "--seed", "4",
                                         "--out", str(out)])
            assert result.exit_code == 0, result.output
            runs.append((out / "annotations.json").read_bytes())
        
        assert runs[0] == runs[1]
        coco = json.loads(runs[0])
        assert [image["id"] for image in coco["images"]] == [1, 2, 3]
        manifest = json.loads((tmp_path / "one" / "manifest.json").read_text())
        assert len(manifest) == len(coco["annotations"])

    def test_bad_catalog(self, runner, inputs, tmp_path):
        catalog = inputs.json("catalog.json", {"not": "a list"})
        result = runner.invoke(cli, ["synth", "--catalog", str(catalog), "--out", str(tmp_path / "out")])
        assert result.exit_code == 1
