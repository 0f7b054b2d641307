import json
import os
from pathlib import Path

import numpy as np
import pytest

import dualcam

DATA = Path(os.environ.get("DUALCAM_TEST_DATA", Path(__file__).resolve().parents[1] / "data"))


def test_white_is_neutral():
    l, a, b = dualcam.srgb_to_lab(255, 255, 255)
    assert l == pytest.approx(100.0, abs=1e-9)
    assert abs(a) < 1e-9 and abs(b) < 1e-9
    assert dualcam.lab_to_srgb(l, a, b) == pytest.approx([255, 255, 255], abs=1e-6)


def test_packet_round_trip_and_loss():
    yy, xx = np.mgrid[0:120, 0:160]
    frame = ((xx * 1.3 + yy * 0.7) % 256).astype(np.uint8)
    packets = dualcam.packetize(frame, frame_seq=3, timestamp_ms=200)
    assert len(packets) == 121
    assert packets[-1][-5:-2] == bytes([13, 0, 10])
    out, losses, ts = dualcam.reassemble(packets, 160, 120, frame_seq=3)
    assert np.array_equal(out, frame)
    assert losses == {} and ts == 200
    damaged, losses, _ = dualcam.reassemble(packets[:40] + packets[42:], 160, 120, frame_seq=3)
    assert losses == {40: 2}
    fixed = dualcam.repair(damaged, losses)
    assert dualcam.psnr(fixed, frame) > dualcam.psnr(damaged, frame)


def test_homography_round_trip():
    src = [(0, 0), (100, 0), (100, 80), (0, 80)]
    dst = [(3, 2), (104, 5), (98, 86), (-1, 79)]
    h = dualcam.estimate_homography(src, dst)
    for (x, y), (u, v) in zip(src, dst):
        assert dualcam.apply_homography(h, x, y) == pytest.approx((u, v), abs=1e-9)
    with pytest.raises(dualcam.DualcamError):
        dualcam.estimate_homography([(0, 0), (1, 1), (2, 2), (0, 5)], dst)


def test_power_and_kernels():
    report = json.loads(dualcam.power_report("json"))
    assert report["camera_subsystem_power_mw"]["computed"] == pytest.approx(5.79824)
    assert all(passed for _, passed, _ in dualcam.kernel_checks(0))


def test_metrics_on_committed_image():
    from PIL import Image

    img = np.asarray(Image.open(DATA / "coffee.png").convert("RGB"))
    assert np.isinf(dualcam.psnr(img, img))
    assert dualcam.ssim(img[..., 1], img[..., 1]) == pytest.approx(1.0)


def test_cli_entry_point(tmp_path):
    assert dualcam.run_cli(["power-report", "--format", "json", "-o", str(tmp_path / "p.json")]) == 0
    assert dualcam.run_cli(["no-such-command"]) == 2
