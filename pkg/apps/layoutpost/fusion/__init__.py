"""
Ensemble fusion: Weighted Boxes Fusion and the NMS baseline
"""
from .wbf import Cluster, build_clusters, wbf_page, fuse_sets, fuse_sets_by_category
from .nms import nms_page, nms_set

__all__ = [
    "Cluster",
    "build_clusters",
    "wbf_page",
    "fuse_sets",
    "fuse_sets_by_category",
    "nms_page",
    "nms_set",
]
