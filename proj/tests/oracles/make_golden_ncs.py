#!/usr/bin/env python3
# Copyright 2026 The dualcam Authors
# SPDX-License-Identifier: Apache-2.0
"""Writes tests/golden/*.ncs from a from-scratch encoder of the wire format.

binascii.crc_hqx with initial value 0xFFFF is CRC-16/CCITT-FALSE.
"""
import binascii
import struct
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "golden"
MAX_PAYLOAD = 1024


def packet(stream_id, seq, line, seg, payload):
    head = struct.pack("<BIHBH", stream_id, seq, line, seg, len(payload)) + bytes(payload)
    return head + struct.pack("<H", binascii.crc_hqx(head, 0xFFFF))


def frame_packets(pixels, width, height, channels, ts, key, seq):
    row = width * channels
    segs = -(-row // MAX_PAYLOAD)
    radio = (lambda y: 1 if y % 2 == 0 else 2) if key else (lambda y: 0)
    out = []
    for y in range(height):
        data = pixels[y * row:(y + 1) * row]
        for s in range(segs):
            out.append(packet(radio(y), seq, y, s, data[s * MAX_PAYLOAD:(s + 1) * MAX_PAYLOAD]))
    out.append(packet(radio(height), seq, height, 0, struct.pack("<I", ts) + bytes([13, 0, 10])))
    return out


def stream_file(packets):
    return b"NCSTRM01" + b"".join(struct.pack("<H", len(p)) + p for p in packets)


lr = bytes((x * 3 + y * 7) & 0xFF for y in range(120) for x in range(160))
key = bytes((x + 2 * y + 50 * c) & 0xFF for y in range(4) for x in range(640) for c in range(3))

OUT.mkdir(exist_ok=True)
(OUT / "lr_frame.ncs").write_bytes(stream_file(frame_packets(lr, 160, 120, 1, 2800, False, 42)))
(OUT / "key_rows.ncs").write_bytes(stream_file(frame_packets(key, 640, 4, 3, 1000, True, 15)))
for p in sorted(OUT.glob("*.ncs")):
    print(p.name, p.stat().st_size, f"{binascii.crc32(p.read_bytes()):08x}")
