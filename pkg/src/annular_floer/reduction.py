"""Filtered cancellation: shrink a filtered complex without changing its
filtered chain homotopy type.

If ``x -> y`` is a differential coefficient between generators on the
same filtration level, the complex is filtered homotopy equivalent to the
one with ``x`` and ``y`` deleted and ``d(w)`` replaced by ``d(w) + d(x)``
for every ``w`` with ``y`` in ``d(w)``.  Repeating until no same-level
arrow is left yields a small model; for grid complexes of braid closures
almost every state cancels.

The loop runs under numba: it is the only part of the engine whose cost
scales with ``n!``.
"""

from __future__ import annotations

import numpy as np
from numba import njit, types
from numba.typed import List

_INT_ARRAY = types.int32[:]



@njit(cache=True)
def _symdiff(a, b):
    out = np.empty(len(a) + len(b), np.int32)
    i = j = k = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            out[k] = a[i]
            i += 1
            k += 1
        elif a[i] > b[j]:
            out[k] = b[j]
            j += 1
            k += 1
        else:
            i += 1
            j += 1
    while i < len(a):
        out[k] = a[i]
        i += 1
        k += 1
    while j < len(b):
        out[k] = b[j]
        j += 1
        k += 1
    return out[:k].copy()


@njit(cache=True)
def _without(a, v):
    out = np.empty(max(len(a) - 1, 0), np.int32)
    k = 0
    for i in range(len(a)):
        if a[i] != v:
            if k == len(out):
                return a.copy()
            out[k] = a[i]
            k += 1
    return out[:k].copy()


@njit(cache=True)
def _cancel(n_nodes, level, indptr, indices):
    bd = List.empty_list(_INT_ARRAY)
    cob = List.empty_list(_INT_ARRAY)
    counts = np.zeros(n_nodes, np.int64)
    for e in range(len(indices)):
        counts[indices[e]] += 1
    cob_ptr = np.zeros(n_nodes + 1, np.int64)
    for v in range(n_nodes):
        cob_ptr[v + 1] = cob_ptr[v] + counts[v]
    cob_idx = np.empty(len(indices), np.int32)
    fill = cob_ptr[:-1].copy()
    for u in range(n_nodes):
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            cob_idx[fill[v]] = u
            fill[v] += 1
    for u in range(n_nodes):
        bd.append(np.sort(indices[indptr[u]:indptr[u + 1]].astype(np.int32)))
        cob.append(np.sort(cob_idx[cob_ptr[u]:cob_ptr[u + 1]]))

    alive = np.ones(n_nodes, np.bool_)
    empty = np.empty(0, np.int32)
    changed = True
    cancelled = 0
    while changed:
        changed = False
        for x in range(n_nodes):
            if not alive[x]:
                continue
            bx = bd[x]
            best = -1
            best_size = 0
            for t in range(len(bx)):
                y = bx[t]
                if level[y] == level[x]:
                    size = len(cob[y])
                    if best < 0 or size < best_size:
                        best = y
                        best_size = size
            if best < 0:
                continue
            y = best
            cy = cob[y]
            for t in range(len(cy)):
                w = cy[t]
                if w != x:
                    bd[w] = _symdiff(bd[w], bx)
            for t in range(len(bx)):
                z = bx[t]
                if z != y:
                    cob[z] = _symdiff(cob[z], cy)
            cx = cob[x]
            for t in range(len(cx)):
                u = cx[t]
                bd[u] = _without(bd[u], x)
            by = bd[y]
            for t in range(len(by)):
                z = by[t]
                cob[z] = _without(cob[z], y)
            bd[x] = empty
            cob[x] = empty
            bd[y] = empty
            cob[y] = empty
            alive[x] = False
            alive[y] = False
            cancelled += 1
            changed = True

    total = 0
    for u in range(n_nodes):
        if alive[u]:
            total += len(bd[u])
    src = np.empty(total, np.int64)
    dst = np.empty(total, np.int64)
    k = 0
    for u in range(n_nodes):
        if alive[u]:
            b = bd[u]
            for t in range(len(b)):
                src[k] = u
                dst[k] = b[t]
                k += 1
    return alive, src, dst, cancelled


def cancel_same_level(n_nodes: int, level: np.ndarray, src: np.ndarray, dst: np.ndarray):
    """Cancel every same-level arrow of the complex given by edges ``src -> dst``.

    ``level`` is any integer key: two generators are on the same level
    exactly when their keys agree, and all edges must be filtered (they
    never increase the underlying partial order).  Returns
    ``(alive_mask, src, dst, cancelled)`` for the reduced complex, in the
    original node numbering.
    """
    level = np.ascontiguousarray(level, dtype=np.int64)
    order = np.argsort(src, kind="stable")
    src_sorted = np.asarray(src, dtype=np.int64)[order]
    dst_sorted = np.asarray(dst, dtype=np.int64)[order]
    indptr = np.searchsorted(src_sorted, np.arange(n_nodes + 1)).astype(np.int64)
    if n_nodes == 0:
        return np.zeros(0, bool), src_sorted, dst_sorted, 0
    return _cancel(n_nodes, level, indptr, dst_sorted.astype(np.int32))
