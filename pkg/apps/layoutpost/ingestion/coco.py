"""
COCO ground truth and COCO-results prediction files

Box encoding on disk is [x, y, width, height]; in memory it is a BBox
(left, top, right, bottom).
"""
import logging
from typing import Any, Dict, List, Optional, Union

from pydantic import ValidationError

from errors import ParseError
from ingestion._json import dump_json, load_json
from models.box import BBox
from models.categories import LayoutCategory
from models.detection import Detection
from models.sets import GroundTruthBox, GroundTruthSet, Page, PredictionSet

logger = logging.getLogger("Ingest")

DEFAULT_CATEGORIES: Dict[int, LayoutCategory] = {c.id: c for c in LayoutCategory}


def _page_key(image_id: Any) -> str:
    return str(image_id)


def _image_id(page_id: str) -> Union[int, str]:
    return int(page_id) if page_id.isdigit() else page_id


def _parse_categories(entries: Optional[List[dict]]) -> Dict[int, LayoutCategory]:
    if not entries:
        return dict(DEFAULT_CATEGORIES)
    table: Dict[int, LayoutCategory] = {}
    for i, entry in enumerate(entries):
        try:
            table[int(entry["id"])] = LayoutCategory.from_name(entry["name"])
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"bad category entry: {e}", ref=f"categories[{i}]") from None
    return table


def _lookup_category(table: Dict[int, LayoutCategory], category_id: Any, ref: str) -> LayoutCategory:
    try:
        return table[int(category_id)]
    except (KeyError, TypeError, ValueError):
        raise ParseError(f"unknown category id {category_id!r}", ref=ref) from None


def parse_ground_truth(data: Union[bytes, str]) -> GroundTruthSet:
    """
    Parse a COCO ground-truth document
    
    Args:
        data: JSON with images / annotations / categories arrays
    
    Returns:
        GroundTruthSet keyed by str(image id)
    """
    doc = load_json(data, "ground truth")
    if not isinstance(doc, dict):
        raise ParseError("ground truth must be a JSON object")
    
    categories = _parse_categories(doc.get("categories"))
    
    pages: Dict[str, Page] = {}
    for i, image in enumerate(doc.get("images") or []):
        try:
            page_id = _page_key(image["id"])
            page = Page(
                page_id=page_id,
                width=image["width"],
                height=image["height"],
                file_name=image.get("file_name"),
                doc_label=image.get("doc_category") or image.get("doc_label"),
            )
        except (KeyError, TypeError, ValidationError) as e:
            raise ParseError(f"bad image entry: {e}", ref=f"images[{i}]") from None
        if page_id in pages:
            raise ParseError(f"duplicate image id {image['id']!r}", ref=f"images[{i}]")
        pages[page_id] = page
    
    annotations: Dict[str, List[GroundTruthBox]] = {pid: [] for pid in pages}
    for i, ann in enumerate(doc.get("annotations") or []):
        if not isinstance(ann, dict):
            raise ParseError("annotation must be an object", ref=f"annotations[{i}]")
        ref = f"annotation id {ann.get('id', '?')}"
        page_id = _page_key(ann.get("image_id"))
        if page_id not in pages:
            raise ParseError(f"annotation references missing image id {ann.get('image_id')!r}", ref=ref)
        category = _lookup_category(categories, ann.get("category_id"), ref)
        try:
            bbox = BBox.from_xywh(ann["bbox"])
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"bad bbox: {e}", ref=ref) from None
        annotations[page_id].append(
            GroundTruthBox(bbox=bbox, category=category, annotation_id=ann.get("id"))
        )
    
    logger.info(f"Parsed ground truth: {len(pages)} pages, "
                f"{sum(len(a) for a in annotations.values())} annotations")
    return GroundTruthSet(pages=pages, annotations=annotations, categories=categories)


def parse_predictions(
    data: Union[bytes, str],
    model_id: str,
    categories: Optional[Dict[int, LayoutCategory]] = None,
) -> PredictionSet:
    """
    Parse a COCO results array [{image_id, category_id, bbox, score}, ...]
    
    Args:
        data: JSON document
        model_id: Label carried by the returned set
        categories: Category id table (default: built-in DocLayNet ids)
    """
    doc = load_json(data, "predictions")
    if not isinstance(doc, list):
        raise ParseError("predictions must be a JSON array")
    table = categories or DEFAULT_CATEGORIES
    
    detections: Dict[str, List[Detection]] = {}
    for i, entry in enumerate(doc):
        ref = f"entry {i}"
        try:
            page_id = _page_key(entry["image_id"])
            score = float(entry["score"])
            bbox_raw = entry["bbox"]
            category_id = entry["category_id"]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed prediction: {e}", ref=ref) from None
        if not 0.0 <= score <= 1.0:
            raise ParseError(f"score {score} outside [0, 1]", ref=ref)
        category = _lookup_category(table, category_id, ref)
        try:
            det = Detection(page_id=page_id, bbox=BBox.from_xywh(bbox_raw), category=category, score=score)
        except (TypeError, ValueError) as e:
            raise ParseError(f"malformed prediction: {e}", ref=ref) from None
        detections.setdefault(page_id, []).append(det)
    
    logger.info(f"Parsed predictions '{model_id}': {len(doc)} detections on {len(detections)} pages")
    return PredictionSet(model_id=model_id, detections=detections)


def dump_ground_truth(gt: GroundTruthSet) -> bytes:
    """Serialize back to COCO; annotation ids are renumbered from 1 when absent"""
    images = []
    for page in gt.pages.values():
        image = {
            "id": _image_id(page.page_id),
            "file_name": page.file_name or f"{page.page_id}.png",
            "width": page.width,
            "height": page.height,
        }
        if page.doc_label is not None:
            image["doc_category"] = page.doc_label
        images.append(image)
    
    ids = _reverse(gt)
    annotations = []
    next_id = 1
    for page_id, boxes in gt.annotations.items():
        for box in boxes:
            ann_id = box.annotation_id if box.annotation_id is not None else next_id
            next_id = max(next_id, ann_id) + 1
            annotations.append({
                "id": ann_id,
                "image_id": _image_id(page_id),
                "category_id": ids[box.category],
                "bbox": box.bbox.to_xywh(),
                "area": box.bbox.width * box.bbox.height,
                "iscrowd": 0,
            })
    
    categories = [{"id": cid, "name": cat.value} for cid, cat in sorted(gt.categories.items())]
    return dump_json({"images": images, "annotations": annotations, "categories": categories})


def _reverse(gt: GroundTruthSet) -> Dict[LayoutCategory, int]:
    return {cat: cid for cid, cat in gt.categories.items()}


def dump_predictions(
    preds: PredictionSet,
    categories: Optional[Dict[int, LayoutCategory]] = None,
) -> bytes:
    """Serialize to the COCO results format"""
    ids = {cat: cid for cid, cat in (categories or DEFAULT_CATEGORIES).items()}
    results = [
        {
            "image_id": _image_id(page_id),
            "category_id": ids[det.category],
            "bbox": det.bbox.to_xywh(),
            "score": det.score,
        }
        for page_id, dets in preds.detections.items()
        for det in dets
    ]
    return dump_json(results)
