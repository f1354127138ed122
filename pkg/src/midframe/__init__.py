"""Classical video frame interpolation: bilateral motion search at coarse
scale, occlusion aware anchor synthesis, per-side refinement, and dynamic
filter fusion."""

from .bench import ReportRow, run_benchmark, write_report
from .dataset import Triplet, load_png, load_triplet_dir, save_png
from .estimate import (
    BilateralResult,
    SearchParams,
    bilateral_cost,
    build_anchor,
    estimate_abme,
    estimate_flow,
    estimate_symmetric,
    init_reliability,
    refine_asymmetric,
)
from .image import (
    build_pyramid,
    downsample_box,
    resize_bilinear,
    sample_bilinear,
    upsample_field,
)
from .metrics import census_distance, charbonnier, psnr, ssim
from .motion import approx_blended, approx_borrowed, scale_field, symmetric_counterpart
from .synthesis import (
    METHODS,
    CandidateSet,
    apply_dlc,
    build_candidates,
    compose_residual,
    interpolate,
    make_filters,
)
from .synthetic import KINDS, gen_synthetic
from .warp import backward_warp, forward_splat, interp_backward, interp_forward, warp_mask

__version__ = "0.1.0"

__all__ = [
    "BilateralResult",
    "CandidateSet",
    "KINDS",
    "METHODS",
    "ReportRow",
    "SearchParams",
    "Triplet",
    "apply_dlc",
    "approx_blended",
    "approx_borrowed",
    "backward_warp",
    "bilateral_cost",
    "build_anchor",
    "build_candidates",
    "build_pyramid",
    "census_distance",
    "charbonnier",
    "compose_residual",
    "downsample_box",
    "estimate_abme",
    "estimate_flow",
    "estimate_symmetric",
    "forward_splat",
    "gen_synthetic",
    "init_reliability",
    "interp_backward",
    "interp_forward",
    "interpolate",
    "load_png",
    "load_triplet_dir",
    "make_filters",
    "psnr",
    "refine_asymmetric",
    "resize_bilinear",
    "run_benchmark",
    "sample_bilinear",
    "save_png",
    "scale_field",
    "ssim",
    "symmetric_counterpart",
    "upsample_field",
    "warp_mask",
    "write_report",
]
