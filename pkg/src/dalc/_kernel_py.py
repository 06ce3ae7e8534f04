"""Pure-Python reference implementation of the fixed-precision decode loop.

Semantics contract shared with the compiled kernel (``_kernel.pyx``):
both must produce bit-identical output for identical inputs.  The state
of a candidate path is (o, w, pos) where o = floor((c - low) * 2^e) is
the codeword offset inside the path's interval, w the interval width at
scale 2^e, and pos the number of codeword bits consumed; renormalization
doubles the interval and shifts the next codeword bit into o.

Candidate arrays are kept in lexicographic bit order throughout (parents
are expanded in order, 0-successor before 1-successor), so index order
doubles as the tie-break order required by pruning.
"""

from __future__ import annotations

import numpy as np

from .interval import FIXED_SCALE_BITS, RENORM_MIN

BACKEND = "python"


def decode_fixed(cbits, n, t, P0e, P1e, P0, P1, q, M, y, mtab, truth=None):
    """Run the breadth-first decode; return candidates in descending-metric order.

    Returns (bits_matrix, metrics, correct_present, pruned_at) where
    bits_matrix rows are ranked by (metric desc, lexicographic asc).
    """
    if n == 0:
        return np.zeros((1, 0), dtype=np.uint8), np.zeros(1), (None if truth is None else True), -1

    pad = FIXED_SCALE_BITS + 31 * n + 64
    cb = np.zeros(len(cbits) + pad, dtype=np.uint8)
    cb[: len(cbits)] = cbits
    c0 = 0
    for j in range(FIXED_SCALE_BITS):
        c0 = (c0 << 1) | int(cb[j])

    o_arr = [c0]
    w_arr = [1 << FIXED_SCALE_BITS]
    pos_arr = [FIXED_SCALE_BITS]
    met_arr = [0.0]
    parents = []
    bits = []
    true_idx = 0 if truth is not None else -1
    pruned_at = -1
    one = 1 << q

    for i in range(n):
        if i < n - t:
            P0c, P1c = P0e, P1e
        else:
            P0c, P1c = P0, P1
        Pd = one - P1c
        yi = int(y[i])
        m0 = mtab[0][yi]
        m1 = mtab[1][yi]
        tbit = int(truth[i]) if true_idx >= 0 else -1

        no, nw, npos, nmet, npar, nbit = [], [], [], [], [], []
        new_true = -1
        for k in range(len(o_arr)):
            o = o_arr[k]
            w = w_arr[k]
            pos = pos_arr[k]
            met = met_arr[k]
            w0 = (w * P0c) >> q
            d = (w * Pd) >> q
            if o < w0:
                oo, ww, pp = o, w0, pos
                while ww < RENORM_MIN:
                    ww <<= 1
                    oo = (oo << 1) | int(cb[pp])
                    pp += 1
                if k == true_idx and tbit == 0:
                    new_true = len(no)
                no.append(oo)
                nw.append(ww)
                npos.append(pp)
                nmet.append(met + m0)
                npar.append(k)
                nbit.append(0)
            if o >= d:
                oo, ww, pp = o - d, w - d, pos
                while ww < RENORM_MIN:
                    ww <<= 1
                    oo = (oo << 1) | int(cb[pp])
                    pp += 1
                if k == true_idx and tbit == 1:
                    new_true = len(no)
                no.append(oo)
                nw.append(ww)
                npos.append(pp)
                nmet.append(met + m1)
                npar.append(k)
                nbit.append(1)

        if true_idx >= 0 and new_true < 0:
            pruned_at = i
        true_idx = new_true

        if len(no) > M:
            order = sorted(range(len(no)), key=lambda j: (-nmet[j], j))
            keep = sorted(order[:M])
            keep_pos = {idx: p for p, idx in enumerate(keep)}
            if true_idx >= 0:
                if true_idx in keep_pos:
                    true_idx = keep_pos[true_idx]
                else:
                    pruned_at = i
                    true_idx = -1
            no = [no[j] for j in keep]
            nw = [nw[j] for j in keep]
            npos = [npos[j] for j in keep]
            nmet = [nmet[j] for j in keep]
            npar = [npar[j] for j in keep]
            nbit = [nbit[j] for j in keep]

        parents.append(np.array(npar, dtype=np.int64))
        bits.append(np.array(nbit, dtype=np.uint8))
        o_arr, w_arr, pos_arr, met_arr = no, nw, npos, nmet

    K = len(met_arr)
    order = sorted(range(K), key=lambda j: (-met_arr[j], j))
    bits_matrix = np.zeros((K, n), dtype=np.uint8)
    for r, idx in enumerate(order):
        j = idx
        for step in range(n - 1, -1, -1):
            bits_matrix[r, step] = bits[step][j]
            j = parents[step][j]
    metrics = np.array([met_arr[j] for j in order])
    correct_present = None if truth is None else (true_idx >= 0)
    return bits_matrix, metrics, correct_present, pruned_at
