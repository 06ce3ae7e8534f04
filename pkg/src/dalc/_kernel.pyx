# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled fixed-precision decode loop.

Must stay bit-identical to ``_kernel_py.decode_fixed``; the test suite
cross-checks the two backends on randomized inputs.
"""

import numpy as np

from libcpp.vector cimport vector
from libcpp.algorithm cimport sort as cpp_sort

cdef extern from *:
    ctypedef unsigned long long u128 "__uint128_t"

ctypedef unsigned long long u64
ctypedef long long i64
ctypedef unsigned char u8

BACKEND = "compiled"

DEF F_BITS = 62

cdef u64 RENORM_MIN_C = (<u64>1) << (F_BITS - 32)

cdef struct Cand:
    double m
    long long idx

cdef bint cand_before(Cand a, Cand b) noexcept nogil:
    if a.m != b.m:
        return a.m > b.m
    return a.idx < b.idx


def decode_fixed(cbits, long long n, long long t,
                 long long P0e, long long P1e, long long P0, long long P1,
                 int q, long long M, y, mtab, truth=None):
    if n == 0:
        return (np.zeros((1, 0), dtype=np.uint8), np.zeros(1),
                (None if truth is None else True), -1)

    cdef long long pad = F_BITS + 31 * n + 64
    cb_np = np.zeros(len(cbits) + pad, dtype=np.uint8)
    cb_np[:len(cbits)] = cbits
    cdef unsigned char[::1] cb = cb_np
    y_np = np.ascontiguousarray(y, dtype=np.uint8)
    cdef unsigned char[::1] yv = y_np
    cdef unsigned char[::1] tv
    cdef bint has_truth = truth is not None
    if has_truth:
        t_np = np.ascontiguousarray(truth, dtype=np.uint8)
        tv = t_np
    else:
        tv = np.zeros(1, dtype=np.uint8)

    cdef double m00 = mtab[0][0]
    cdef double m01 = mtab[0][1]
    cdef double m10 = mtab[1][0]
    cdef double m11 = mtab[1][1]

    cdef vector[u64] o_arr, w_arr, no, nw
    cdef vector[i64] pos_arr, npos
    cdef vector[double] met_arr, nmet
    cdef vector[vector[i64]] parents
    cdef vector[vector[u8]] bitsv
    cdef vector[i64] npar
    cdef vector[u8] nbit
    cdef vector[Cand] cands
    cdef vector[i64] keep

    cdef u64 c0 = 0
    cdef long long j
    for j in range(F_BITS):
        c0 = (c0 << 1) | cb[j]

    o_arr.push_back(c0)
    w_arr.push_back((<u64>1) << F_BITS)
    pos_arr.push_back(F_BITS)
    met_arr.push_back(0.0)

    cdef long long true_idx = 0 if has_truth else -1
    cdef long long pruned_at = -1
    cdef long long one = (<long long>1) << q

    cdef long long i, k, K, new_true, tbit, p, pp
    cdef long long P0c, P1c, Pd
    cdef u64 o, w, w0, d, oo, ww
    cdef double met, m0, m1
    cdef Cand cd

    for i in range(n):
        if i < n - t:
            P0c = P0e
            P1c = P1e
        else:
            P0c = P0
            P1c = P1
        Pd = one - P1c
        if yv[i]:
            m0 = m01
            m1 = m11
        else:
            m0 = m00
            m1 = m10
        tbit = tv[i] if (has_truth and true_idx >= 0) else -1

        no.clear(); nw.clear(); npos.clear(); nmet.clear(); npar.clear(); nbit.clear()
        new_true = -1
        K = <long long>o_arr.size()
        for k in range(K):
            o = o_arr[k]
            w = w_arr[k]
            p = pos_arr[k]
            met = met_arr[k]
            w0 = <u64>((<u128>w * <u128>P0c) >> q)
            d = <u64>((<u128>w * <u128>Pd) >> q)
            if o < w0:
                oo = o
                ww = w0
                pp = p
                while ww < RENORM_MIN_C:
                    ww <<= 1
                    oo = (oo << 1) | cb[pp]
                    pp += 1
                if k == true_idx and tbit == 0:
                    new_true = <long long>no.size()
                no.push_back(oo); nw.push_back(ww); npos.push_back(pp)
                nmet.push_back(met + m0); npar.push_back(k); nbit.push_back(0)
            if o >= d:
                oo = o - d
                ww = w - d
                pp = p
                while ww < RENORM_MIN_C:
                    ww <<= 1
                    oo = (oo << 1) | cb[pp]
                    pp += 1
                if k == true_idx and tbit == 1:
                    new_true = <long long>no.size()
                no.push_back(oo); nw.push_back(ww); npos.push_back(pp)
                nmet.push_back(met + m1); npar.push_back(k); nbit.push_back(1)

        if true_idx >= 0 and new_true < 0:
            pruned_at = i
        true_idx = new_true

        K = <long long>no.size()
        if K > M:
            cands.clear()
            for k in range(K):
                cd.m = nmet[k]
                cd.idx = k
                cands.push_back(cd)
            cpp_sort(cands.begin(), cands.end(), cand_before)
            keep.clear()
            for k in range(M):
                keep.push_back(cands[k].idx)
            cpp_sort(keep.begin(), keep.end())
            if true_idx >= 0:
                new_true = -1
                for k in range(M):
                    if keep[k] == true_idx:
                        new_true = k
                        break
                if new_true < 0:
                    pruned_at = i
                true_idx = new_true
            o_arr.clear(); w_arr.clear(); pos_arr.clear(); met_arr.clear()
            parents.push_back(vector[i64]())
            bitsv.push_back(vector[u8]())
            for k in range(M):
                j = keep[k]
                o_arr.push_back(no[j]); w_arr.push_back(nw[j])
                pos_arr.push_back(npos[j]); met_arr.push_back(nmet[j])
                parents.back().push_back(npar[j])
                bitsv.back().push_back(nbit[j])
        else:
            o_arr = no
            w_arr = nw
            pos_arr = npos
            met_arr = nmet
            parents.push_back(npar)
            bitsv.push_back(nbit)

    K = <long long>met_arr.size()
    cands.clear()
    for k in range(K):
        cd.m = met_arr[k]
        cd.idx = k
        cands.push_back(cd)
    cpp_sort(cands.begin(), cands.end(), cand_before)

    bits_matrix = np.zeros((K, n), dtype=np.uint8)
    metrics = np.zeros(K, dtype=np.float64)
    cdef unsigned char[:, ::1] bm = bits_matrix
    cdef double[::1] mv = metrics
    cdef long long r, step
    for r in range(K):
        mv[r] = cands[r].m
        j = cands[r].idx
        for step in range(n - 1, -1, -1):
            bm[r, step] = bitsv[step][j]
            j = parents[step][j]

    correct_present = None if not has_truth else (true_idx >= 0)
    return bits_matrix, metrics, correct_present, pruned_at
