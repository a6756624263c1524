"""
COCO annotations and placement manifest for generated layouts
"""
import json
from typing import List, Sequence, Tuple

from ingestion.coco import dump_ground_truth
from models.layout import LayoutSpec
from models.sets import GroundTruthBox, GroundTruthSet, Page


def emit_dataset(layouts: Sequence[LayoutSpec]) -> Tuple[bytes, bytes]:
    """
    Serialize layouts as COCO ground truth plus a rasterization manifest
    
    Image ids and annotation ids are consecutive from 1 in input order.
    The manifest lists one entry per placement: page, patch source and paste box.
    """
    pages = {}
    annotations = {}
    manifest: List[dict] = []
    next_ann = 1
    for image_id, layout in enumerate(layouts, start=1):
        key = str(image_id)
        pages[key] = Page(
            page_id=key,
            width=layout.width,
            height=layout.height,
            file_name=f"synth_{layout.page_id}.png",
        )
        boxes = []
        for placement in layout.placements:
            boxes.append(GroundTruthBox(bbox=placement.bbox, category=placement.category, annotation_id=next_ann))
            manifest.append({
                "page_id": layout.page_id,
                "image_id": image_id,
                "annotation_id": next_ann,
                "category": placement.category.value,
                "source_ref": placement.patch.source_ref,
                "bbox": placement.bbox.to_ltrb(),
            })
            next_ann += 1
        annotations[key] = boxes
    
    coco = dump_ground_truth(GroundTruthSet(pages=pages, annotations=annotations))
    return coco, json.dumps(manifest, indent=2).encode("utf-8")
