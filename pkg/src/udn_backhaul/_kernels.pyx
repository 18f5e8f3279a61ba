# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled routing and scheduling kernels.

Semantics match udn_backhaul._purepy exactly (same tie-breaking, same
squared-distance float expressions); tests assert bit-identical outputs.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "compiled"

NEXT_DIRECT = -1
NEXT_NONE = -2

cdef double INF = float("inf")


def build_routes_arrays(pos_in, gw_in, double r):
    pos_arr = np.ascontiguousarray(pos_in, dtype=np.float64)
    gw_arr = np.ascontiguousarray(gw_in, dtype=np.float64)
    cdef Py_ssize_t n = pos_arr.shape[0]
    assigned_arr = np.zeros(n, dtype=np.int64)
    next_arr = np.full(n, NEXT_NONE, dtype=np.int64)
    hops_arr = np.zeros(n, dtype=np.int64)
    if n == 0:
        return assigned_arr, next_arr, hops_arr

    cdef double[:, ::1] pos = pos_arr
    cdef double[:, ::1] gw = gw_arr
    cdef cnp.int64_t[::1] assigned = assigned_arr
    cdef cnp.int64_t[::1] nxt = next_arr
    cdef cnp.int64_t[::1] hops = hops_arr

    cdef Py_ssize_t g = gw_arr.shape[0]
    cdef double r2 = r * r
    own_g2_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] own_g2 = own_g2_arr
    cdef Py_ssize_t i, j, k, best_k, gi
    cdef double dx, dy, d2, best_d2, gj2, best_g2
    cdef cnp.int64_t best_j

    for i in range(n):
        best_k = 0
        best_d2 = INF
        for k in range(g):
            dx = pos[i, 0] - gw[k, 0]
            dy = pos[i, 1] - gw[k, 1]
            d2 = dx * dx + dy * dy
            if d2 < best_d2:
                best_d2 = d2
                best_k = k
        assigned[i] = best_k
        own_g2[i] = best_d2

    for i in range(n):
        if own_g2[i] <= r2:
            nxt[i] = NEXT_DIRECT
            continue
        best_j = NEXT_NONE
        best_g2 = INF
        gi = assigned[i]
        for j in range(n):
            if j == i:
                continue
            dx = pos[i, 0] - pos[j, 0]
            dy = pos[i, 1] - pos[j, 1]
            d2 = dx * dx + dy * dy
            if d2 > r2:
                continue
            dx = pos[j, 0] - gw[gi, 0]
            dy = pos[j, 1] - gw[gi, 1]
            gj2 = dx * dx + dy * dy
            if gj2 < own_g2[i] and gj2 < best_g2:
                best_g2 = gj2
                best_j = j
        nxt[i] = best_j

    _resolve_hops(nxt, hops, n)
    return assigned_arr, next_arr, hops_arr


cdef void _resolve_hops(cnp.int64_t[::1] nxt, cnp.int64_t[::1] hops, Py_ssize_t n):
    # 0 unknown, -1 disconnected marker while resolving
    stack_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] stack = stack_arr
    cdef Py_ssize_t i, top, steps
    cdef cnp.int64_t cur, base
    for i in range(n):
        if hops[i] != 0:
            continue
        cur = i
        top = 0
        steps = 0
        while hops[cur] == 0 and nxt[cur] >= 0:
            stack[top] = cur
            top += 1
            cur = nxt[cur]
            steps += 1
            if steps > n:  # unreachable: strict progress forbids cycles
                break
        if hops[cur] != 0:
            base = hops[cur]
        elif nxt[cur] == NEXT_DIRECT:
            hops[cur] = 1
            base = 1
        else:
            hops[cur] = -1
            base = -1
        while top > 0:
            top -= 1
            base = base + 1 if base > 0 else -1
            hops[stack[top]] = base
    for i in range(n):
        if hops[i] < 0:
            hops[i] = 0


def run_schedule_arrays(pos_in, flow_owner_in, link_tx_in, link_rx_in,
                        flow_start_in, double excl2, Py_ssize_t n_bs):
    pos_arr = np.ascontiguousarray(pos_in, dtype=np.float64)
    owner_arr = np.ascontiguousarray(flow_owner_in, dtype=np.int64)
    tx_arr = np.ascontiguousarray(link_tx_in, dtype=np.int64)
    rx_arr = np.ascontiguousarray(link_rx_in, dtype=np.int64)
    start_arr = np.ascontiguousarray(flow_start_in, dtype=np.int64)

    cdef double[:, ::1] pos = pos_arr
    cdef cnp.int64_t[::1] owner = owner_arr
    cdef cnp.int64_t[::1] tx = tx_arr
    cdef cnp.int64_t[::1] rx = rx_arr
    cdef cnp.int64_t[::1] start = start_arr

    cdef Py_ssize_t F = owner_arr.shape[0]
    cdef Py_ssize_t L = tx_arr.shape[0]
    slot_assign_arr = np.full(L, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] slot_assign = slot_assign_arr

    progress_arr = np.zeros(F, dtype=np.int64)
    order_arr = np.empty(F, dtype=np.int64)
    admitted_arr = np.empty(F, dtype=np.int64)
    cdef cnp.int64_t[::1] progress = progress_arr
    cdef cnp.int64_t[::1] order = order_arr
    cdef cnp.int64_t[::1] admitted = admitted_arr

    cdef Py_ssize_t remaining_total = L
    cdef Py_ssize_t slot = 0, ne, na, idx, pos_i, jj
    cdef cnp.int64_t f, a, li, la, t, x, ta, xa, rem_f, rem_o
    cdef double dx, dy
    cdef bint ok

    while remaining_total > 0:
        ne = 0
        for f in range(F):
            if progress[f] < start[f + 1] - start[f]:
                order[ne] = f
                ne += 1
        # insertion sort: remaining hops descending, owner ascending
        for idx in range(1, ne):
            f = order[idx]
            rem_f = (start[f + 1] - start[f]) - progress[f]
            pos_i = idx
            while pos_i > 0:
                a = order[pos_i - 1]
                rem_o = (start[a + 1] - start[a]) - progress[a]
                if rem_o > rem_f or (rem_o == rem_f and owner[a] < owner[f]):
                    break
                order[pos_i] = a
                pos_i -= 1
            order[pos_i] = f

        na = 0
        for idx in range(ne):
            f = order[idx]
            li = start[f] + progress[f]
            t = tx[li]
            x = rx[li]
            ok = True
            for jj in range(na):
                a = admitted[jj]
                la = start[a] + progress[a]
                ta = tx[la]
                xa = rx[la]
                dx = pos[t, 0] - pos[ta, 0]
                dy = pos[t, 1] - pos[ta, 1]
                if dx * dx + dy * dy <= excl2:
                    ok = False
                    break
                if x < n_bs and (x == ta or x == xa):
                    ok = False
                    break
                if xa < n_bs and xa == t:
                    ok = False
                    break
            if ok:
                admitted[na] = f
                na += 1
        for jj in range(na):
            f = admitted[jj]
            slot_assign[start[f] + progress[f]] = slot
            progress[f] += 1
        remaining_total -= na
        slot += 1

    return slot, slot_assign_arr
