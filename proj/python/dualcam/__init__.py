"""Python bindings for the dualcam simulator core."""

from ._dualcam import (
    DualcamError,
    apply_homography,
    estimate_homography,
    kernel_checks,
    lab_to_srgb,
    packetize,
    power_report,
    psnr,
    reassemble,
    repair,
    run_cli,
    srgb_to_lab,
    ssim,
)

__all__ = [
    "DualcamError",
    "apply_homography",
    "estimate_homography",
    "kernel_checks",
    "lab_to_srgb",
    "packetize",
    "power_report",
    "psnr",
    "reassemble",
    "repair",
    "run_cli",
    "srgb_to_lab",
    "ssim",
]
