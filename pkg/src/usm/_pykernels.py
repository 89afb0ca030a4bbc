"""Pure-Python fallback kernels, semantically identical to `_kernels`.

Same arithmetic, same rounding, same outputs bit for bit -- only slower.
Python floats and C doubles are both IEEE-754 binary64 with round-to-
nearest, so (prev + corner) * 0.5 and floor(y + 0.5) agree exactly.
"""

import math

import numpy as np


def encode_pass(codes, corners, seed, out, backward):
    n = len(codes)
    if n == 0:
        return
    h = corners.shape[1]
    # Plain lists beat numpy scalar indexing by a wide margin here.
    code_list = codes.tolist()
    corner_list = corners.tolist()
    u = [float(x) for x in seed]
    rows = out.tolist()
    order = range(n - 1, -1, -1) if backward else range(n)
    for i in order:
        c = corner_list[code_list[i]]
        for j in range(h):
            u[j] = (u[j] + c[j]) * 0.5
        rows[i] = list(u)
    out[:, :] = rows


def sn_direction(u, v, cap):
    x = 0
    s = 1.0
    h = len(u)
    while x < cap:
        for j in range(h):
            if math.floor(u[j] * s + 0.5) != math.floor(v[j] * s + 0.5):
                return x
        x += 1
        s *= 2.0
    return cap


def sn_block(af, ab, bf, bb, cap, row_lo, row_hi, out):
    nb = bf.shape[0]
    afl, abl = af.tolist(), ab.tolist()
    bfl, bbl = bf.tolist(), bb.tolist()
    for i in range(row_lo, row_hi):
        ui_f, ui_b = afl[i], abl[i]
        row = out[i]
        for j in range(nb):
            v = (sn_direction(ui_f, bfl[j], cap)
                 + sn_direction(ui_b, bbl[j], cap) - 1)
            row[j] = v if v > 0 else 0


def bin_counts(coords, k, counts):
    edge = (1 << k) - 1
    cells = np.floor(coords * float(2 ** k)).astype(np.int64)
    np.clip(cells, 0, edge, out=cells)
    h = coords.shape[1]
    flat = cells[:, 0].copy()
    for j in range(1, h):
        flat <<= k
        flat |= cells[:, j]
    np.add.at(counts, flat, 1)
