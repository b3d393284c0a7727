"""Pure-NumPy implementations of the hot kernels.

Drop-in replacement for the compiled ``_kernels`` extension. Both backends
visit elements in the same order wherever the result depends on float
accumulation order, so their outputs are bit-identical (verified by
tests/test_kernels.py).
"""

import numpy as np


def segment_max(values, seg, num_segments):
    """Columnwise max per segment, with the argmax row index.

    values: (n, d) float64, finite. seg: (n,) int64 in [0, num_segments);
    every segment must be nonempty. Ties go to the lowest row index.
    Returns (out (m, d) float64, arg (m, d) int64 of row indices).
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    seg = np.ascontiguousarray(seg, dtype=np.int64)
    n, d = values.shape
    m = int(num_segments)
    if seg.size and (seg.min() < 0 or seg.max() >= m):
        raise ValueError("segment index out of range")

    order = np.argsort(seg, kind="stable")
    sseg = seg[order]
    starts = np.searchsorted(sseg, np.arange(m))
    counts = np.diff(np.append(starts, n))
    if n == 0 or counts.min() == 0:
        raise ValueError("every segment must contain at least one row")

    sval = values[order]
    out = np.maximum.reduceat(sval, starts, axis=0)
    # Lowest original index attaining the max: rows within a segment are in
    # ascending original order after the stable sort, so the smallest sorted
    # position wins.
    hit = sval == np.repeat(out, counts, axis=0)
    pos = np.arange(n, dtype=np.int64)[:, None]
    score = np.where(hit, -pos, np.int64(-n - 1))
    best = np.maximum.reduceat(score, starts, axis=0)
    arg = order[-best]
    return out, arg


def scatter_add_rows(values, seg, num_segments):
    """out[seg[i]] += values[i], accumulated in ascending i.

    values: (n, d) float64, seg: (n,) int64 in [0, num_segments).
    np.add.at applies the additions sequentially in index order, matching
    the compiled loop bit for bit.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    seg = np.ascontiguousarray(seg, dtype=np.int64)
    m = int(num_segments)
    if seg.size and (seg.min() < 0 or seg.max() >= m):
        raise ValueError("segment index out of range")
    out = np.zeros((m, values.shape[1]), dtype=np.float64)
    np.add.at(out, seg, values)
    return out


def raycast_boxes(origin, dirs, boxes):
    """Nearest axis-aligned box hit per ray (slab method).

    origin: (3,) float64. dirs: (p, 3) float64, need not be normalised; the
    returned t is the parameter along each dir. boxes: (b, 6) float64 rows
    [xmin ymin zmin xmax ymax zmax]. A ray starting inside a box hits its
    exit face. Ties between boxes go to the lower box index.
    Returns (t (p,) float64 with -1.0 for misses, hit (p,) int32 with -1).
    """
    origin = np.ascontiguousarray(origin, dtype=np.float64)
    dirs = np.ascontiguousarray(dirs, dtype=np.float64)
    boxes = np.ascontiguousarray(boxes, dtype=np.float64)
    p = dirs.shape[0]
    best_t = np.full(p, np.inf)
    best_id = np.full(p, -1, dtype=np.int32)
    for b in range(boxes.shape[0]):
        lo = boxes[b, :3]
        hi = boxes[b, 3:]
        tnear = np.full(p, -np.inf)
        tfar = np.full(p, np.inf)
        ok = np.ones(p, dtype=bool)
        for a in range(3):
            d = dirs[:, a]
            o = origin[a]
            par = d == 0.0
            ok &= ~(par & ((o < lo[a]) | (o > hi[a])))
            # 0/0 -> nan only where par is True, discarded by the where below
            with np.errstate(divide="ignore", invalid="ignore"):
                t0 = (lo[a] - o) / d
                t1 = (hi[a] - o) / d
            lo_t = np.minimum(t0, t1)
            hi_t = np.maximum(t0, t1)
            tnear = np.where(par, tnear, np.maximum(tnear, lo_t))
            tfar = np.where(par, tfar, np.minimum(tfar, hi_t))
        ok &= tnear <= tfar
        t_hit = np.where(tnear > 0.0, tnear, tfar)
        ok &= t_hit > 0.0
        upd = ok & (t_hit < best_t)
        best_t[upd] = t_hit[upd]
        best_id[upd] = b
    best_t[best_id < 0] = -1.0
    return best_t, best_id
