# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel core: segmented max, row scatter-add, ray-box casting.

Mirrors _kernels_np exactly, including float accumulation order and
tie-breaking, so the two backends return bit-identical arrays.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def segment_max(values, seg, num_segments):
    """Columnwise max per segment with argmax row index (ties: lowest row)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] v = \
        np.ascontiguousarray(values, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] s = \
        np.ascontiguousarray(seg, dtype=np.int64)
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t d = v.shape[1]
    cdef Py_ssize_t m = num_segments
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] out = \
        np.full((m, d), -np.inf, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] arg = \
        np.full((m, d), -1, dtype=np.int64)
    cdef Py_ssize_t i, c
    cdef cnp.int64_t j
    for i in range(n):
        j = s[i]
        if j < 0 or j >= m:
            raise ValueError("segment index out of range")
        for c in range(d):
            if v[i, c] > out[j, c]:
                out[j, c] = v[i, c]
                arg[j, c] = i
    for i in range(m):
        if d > 0 and arg[i, 0] < 0:
            raise ValueError("every segment must contain at least one row")
    return out, arg


def scatter_add_rows(values, seg, num_segments):
    """out[seg[i]] += values[i], accumulated in ascending i."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] v = \
        np.ascontiguousarray(values, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] s = \
        np.ascontiguousarray(seg, dtype=np.int64)
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t d = v.shape[1]
    cdef Py_ssize_t m = num_segments
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] out = \
        np.zeros((m, d), dtype=np.float64)
    cdef Py_ssize_t i, c
    cdef cnp.int64_t j
    for i in range(n):
        j = s[i]
        if j < 0 or j >= m:
            raise ValueError("segment index out of range")
        for c in range(d):
            out[j, c] += v[i, c]
    return out


def raycast_boxes(origin, dirs, boxes):
    """Nearest axis-aligned box hit per ray (slab method, lower id wins ties)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] o = \
        np.ascontiguousarray(origin, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] dr = \
        np.ascontiguousarray(dirs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] bx = \
        np.ascontiguousarray(boxes, dtype=np.float64)
    cdef Py_ssize_t p = dr.shape[0]
    cdef Py_ssize_t nb = bx.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] best_t = \
        np.full(p, np.inf, dtype=np.float64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1, mode="c"] best_id = \
        np.full(p, -1, dtype=np.int32)
    cdef Py_ssize_t r, b, a
    cdef double tnear, tfar, t0, t1, lo_t, hi_t, d, oa, t_hit
    cdef bint ok
    for r in range(p):
        for b in range(nb):
            tnear = -np.inf
            tfar = np.inf
            ok = True
            for a in range(3):
                d = dr[r, a]
                oa = o[a]
                if d == 0.0:
                    if oa < bx[b, a] or oa > bx[b, a + 3]:
                        ok = False
                        break
                else:
                    t0 = (bx[b, a] - oa) / d
                    t1 = (bx[b, a + 3] - oa) / d
                    lo_t = min(t0, t1)
                    hi_t = max(t0, t1)
                    tnear = max(tnear, lo_t)
                    tfar = min(tfar, hi_t)
            if not ok or tnear > tfar:
                continue
            t_hit = tnear if tnear > 0.0 else tfar
            if t_hit > 0.0 and t_hit < best_t[r]:
                best_t[r] = t_hit
                best_id[r] = <cnp.int32_t>b
        if best_id[r] < 0:
            best_t[r] = -1.0
    return best_t, best_id
