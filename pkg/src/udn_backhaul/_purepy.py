"""Pure-Python fallback for the routing and scheduling hot loops.

Mirrors udn_backhaul._kernels exactly: same tie-breaking, same floating-point
expressions (squared-distance comparisons), bit-identical outputs.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

NEXT_DIRECT = -1
NEXT_NONE = -2


def build_routes_arrays(pos: np.ndarray, gw: np.ndarray, r: float):
    """Greedy relay routing over a static topology.

    pos: (n, 2) BS positions; gw: (g, 2) gateway positions; r: link range.
    Returns (assigned, next_hop, hop_count) int64 arrays. next_hop uses
    NEXT_DIRECT for a direct BS->gateway link and NEXT_NONE when no relay
    candidate exists; hop_count is 0 for BSs whose chain never reaches a
    gateway.
    """
    n = pos.shape[0]
    if n == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty.copy(), empty.copy(), empty.copy()

    r2 = r * r
    # squared distances BS -> gateway and BS -> BS
    dg2 = (pos[:, None, 0] - gw[None, :, 0]) ** 2 + (pos[:, None, 1] - gw[None, :, 1]) ** 2
    assigned = np.argmin(dg2, axis=1).astype(np.int64)  # first min wins ties
    own_g2 = dg2[np.arange(n), assigned]

    db2 = (pos[:, None, 0] - pos[None, :, 0]) ** 2 + (pos[:, None, 1] - pos[None, :, 1]) ** 2

    next_hop = np.full(n, NEXT_NONE, dtype=np.int64)
    for i in range(n):
        if own_g2[i] <= r2:
            next_hop[i] = NEXT_DIRECT
            continue
        cand_g2 = dg2[:, assigned[i]].copy()
        mask = (db2[i] <= r2) & (cand_g2 < own_g2[i])
        mask[i] = False
        if mask.any():
            cand_g2[~mask] = np.inf
            next_hop[i] = int(np.argmin(cand_g2))  # nearest-to-gateway, lowest index

    hop_count = _resolve_hops(next_hop)
    return assigned, next_hop, hop_count


def _resolve_hops(next_hop: np.ndarray) -> np.ndarray:
    """Chase next-hop pointers, memoizing chain lengths; 0 = disconnected."""
    n = len(next_hop)
    hops = np.zeros(n, dtype=np.int64)  # 0 unknown, -1 disconnected marker
    stack = np.empty(n, dtype=np.int64)
    for i in range(n):
        if hops[i] != 0:
            continue
        cur = i
        top = 0
        steps = 0
        while hops[cur] == 0 and next_hop[cur] >= 0:
            stack[top] = cur
            top += 1
            cur = next_hop[cur]
            steps += 1
            if steps > n:  # unreachable: strict progress forbids cycles
                break
        if hops[cur] != 0:
            base = int(hops[cur])
        elif next_hop[cur] == NEXT_DIRECT:
            hops[cur] = 1
            base = 1
        else:
            hops[cur] = -1
            base = -1
        while top > 0:
            top -= 1
            base = base + 1 if base > 0 else -1
            hops[stack[top]] = base
    hops[hops < 0] = 0
    return hops


def run_schedule_arrays(
    pos: np.ndarray,
    flow_owner: np.ndarray,
    link_tx: np.ndarray,
    link_rx: np.ndarray,
    flow_start: np.ndarray,
    excl2: float,
    n_bs: int,
):
    """Greedy slot-by-slot admission under the transmitter exclusion rule.

    Flow f's links occupy link_tx/link_rx[flow_start[f]:flow_start[f+1]] in
    hop order; receivers >= n_bs denote gateways (receive-only, may take
    several links per slot). Each slot admits eligible links in priority
    order (most remaining hops first, then lowest owner index) when they
    conflict with none already admitted: transmitters closer than or at the
    exclusion distance conflict, as does any shared BS node.

    Returns (n_slots, slot_assign) with slot_assign[l] the slot of link l.
    """
    F = len(flow_owner)
    L = len(link_tx)
    xs = pos[:, 0].tolist()
    ys = pos[:, 1].tolist()
    tx = link_tx.tolist()
    rx = link_rx.tolist()
    start = flow_start.tolist()
    owner = flow_owner.tolist()
    hops = [start[f + 1] - start[f] for f in range(F)]

    slot_assign = np.full(L, -1, dtype=np.int64)
    progress = [0] * F
    remaining_total = L
    slot = 0
    while remaining_total > 0:
        eligible = [f for f in range(F) if progress[f] < hops[f]]
        eligible.sort(key=lambda f: (progress[f] - hops[f], owner[f]))
        admitted: list[int] = []
        for f in eligible:
            li = start[f] + progress[f]
            t = tx[li]
            x = rx[li]
            ok = True
            for a in admitted:
                la = start[a] + progress[a]
                ta = tx[la]
                xa = rx[la]
                dx = xs[t] - xs[ta]
                dy = ys[t] - ys[ta]
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
                admitted.append(f)
        for f in admitted:
            slot_assign[start[f] + progress[f]] = slot
            progress[f] += 1
        remaining_total -= len(admitted)
        slot += 1
    return slot, slot_assign
