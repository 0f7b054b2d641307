#!/usr/bin/env python3
# Copyright 2026 The dualcam Authors
# SPDX-License-Identifier: Apache-2.0
"""Independent reference values frozen into the C++ unit tests.

Everything here is evaluated with mpmath at 40 significant digits straight
from the textbook formulas; nothing imports the C++ library.
"""
import mpmath as mp

mp.mp.dps = 40

# --- sRGB -> XYZ(D65) -> CIELAB -------------------------------------------
M = [[mp.mpf("0.4124564"), mp.mpf("0.3575761"), mp.mpf("0.1804375")],
     [mp.mpf("0.2126729"), mp.mpf("0.7151522"), mp.mpf("0.0721750")],
     [mp.mpf("0.0193339"), mp.mpf("0.1191920"), mp.mpf("0.9503041")]]
WHITE = [sum(row) for row in M]


def lin(v8):
    c = mp.mpf(v8) / 255
    return c / mp.mpf("12.92") if c <= mp.mpf("0.04045") else ((c + mp.mpf("0.055")) / mp.mpf("1.055")) ** mp.mpf("2.4")


def f(t):
    d = mp.mpf(6) / 29
    return mp.cbrt(t) if t > d ** 3 else t / (3 * d * d) + mp.mpf(4) / 29


def lab(r, g, b):
    rgb = [lin(r), lin(g), lin(b)]
    xyz = [sum(M[i][j] * rgb[j] for j in range(3)) for i in range(3)]
    fx, fy, fz = (f(xyz[i] / WHITE[i]) for i in range(3))
    return 116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz)


def cubic(x):
    x = abs(x)
    if x <= 1:
        return mp.mpf("1.5") * x ** 3 - mp.mpf("2.5") * x ** 2 + 1
    if x <= 2:
        return mp.mpf("-0.5") * x ** 3 + mp.mpf("2.5") * x ** 2 - 4 * x + 2
    return mp.mpf(0)


def weights(n_in, n_out, i, antialias):
    scale = mp.mpf(n_out) / n_in
    u = (i + mp.mpf("0.5")) / scale - mp.mpf("0.5")
    if antialias and scale < 1:
        k = lambda x: scale * cubic(scale * x)
        width = 4 / scale
    else:
        k = cubic
        width = mp.mpf(4)
    left = int(mp.floor(u - width / 2))
    taps = int(mp.ceil(width)) + 2
    w = {}
    for j in range(left, left + taps):
        jj = min(max(j, 0), n_in - 1)
        w[jj] = w.get(jj, 0) + k(u - j)
    s = sum(w.values())
    return {j: v / s for j, v in w.items()}


def resize2d(img, out_w, out_h, antialias):
    h, w = len(img), len(img[0])
    out = []
    for oy in range(out_h):
        wy = weights(h, out_h, oy, antialias)
        row = []
        for ox in range(out_w):
            wx = weights(w, out_w, ox, antialias)
            row.append(sum(wy[y] * wx[x] * img[y][x] for y in wy for x in wx))
        out.append(row)
    return out


if __name__ == "__main__":
    for rgb in [(118, 118, 118), (255, 0, 0), (255, 255, 255)]:
        L, a, b = lab(*rgb)
        print("lab", rgb, mp.nstr(L, 17), mp.nstr(a, 17), mp.nstr(b, 17))
    L, _, _ = lab(255, 0, 0)
    print("gray(red) =", mp.nstr(L * mp.mpf("2.55"), 17))

    ramp = [[mp.mpf(x + 8 * y) for x in range(8)] for y in range(8)]
    for row in resize2d(ramp, 2, 2, True):
        print("ramp8->2 aa", [mp.nstr(v, 17) for v in row])
    for row in resize2d(ramp, 2, 2, False):
        print("ramp8->2 noaa", [mp.nstr(v, 17) for v in row])

    # vertical 5-row ramp strip expanded to 7 rows (repair of a 2-line loss)
    strip = [[mp.mpf(10 * (r + 1))] for r in range(5)]
    print("strip5->7", [mp.nstr(r[0], 17) for r in resize2d(strip, 1, 7, False)])

    # attention, w=h=1, c=2, L=2: f0=(1,0), f1=(0,1), q=(1,0)
    e = mp.e
    w0, w1 = e / (e + 1), 1 / (e + 1)
    print("attn weights", mp.nstr(w0, 17), mp.nstr(w1, 17))
    print("attn output", mp.nstr(w0, 17), mp.nstr(w1, 17))

    # homography with h31=0.001 applied to (100, 50)
    H = [[mp.mpf("1.2"), mp.mpf("0.1"), mp.mpf(5)],
         [mp.mpf("-0.05"), mp.mpf("0.9"), mp.mpf(-3)],
         [mp.mpf("0.001"), mp.mpf(0), mp.mpf(1)]]
    x, y = mp.mpf(100), mp.mpf(50)
    den = H[2][0] * x + H[2][1] * y + 1
    print("homography", mp.nstr((H[0][0] * x + H[0][1] * y + H[0][2]) / den, 17),
          mp.nstr((H[1][0] * x + H[1][1] * y + H[1][2]) / den, 17))

    # SSIM of constant c vs c+10 (zero variance => luminance term only)
    C1 = (mp.mpf("0.01") * 255) ** 2
    c = mp.mpf(100)
    print("ssim const", mp.nstr((2 * c * (c + 10) + C1) / (c * c + (c + 10) ** 2 + C1), 17))

    # residual block on a 1x1x1 input x=2 with zero padding: only the kernel
    # centre contributes. conv1: w=0.5 b=-0.25, relu, conv2: w=-1.5 b=0.1
    xin = mp.mpf(2)
    h1 = max(mp.mpf("0.5") * xin - mp.mpf("0.25"), 0)
    print("resblock", mp.nstr(xin + (mp.mpf("-1.5") * h1 + mp.mpf("0.1")), 17))

    # power arithmetic
    print("ov7692 avg mA", mp.mpf("27.52") * mp.mpf("0.04"))
    print("camera mW", mp.mpf("0.97") * mp.mpf("2.8") + mp.mpf("27.52") * mp.mpf("0.04") * mp.mpf("2.8"))
    print("single cam mW", mp.mpf("27.52") * mp.mpf("0.6") * mp.mpf("2.8"))
    print("codec ratio", mp.mpf(4608000) / 595200, mp.mpf(4608000) / 441600)
    print("data factor b", mp.mpf(13824000) / 1209600)
