"""Greedy multi-hop relay routing toward the nearest backhaul gateway.

Each BS selects its nearest gateway, then forwards to the neighbor within
link range r that is strictly closer to that gateway, preferring the
neighbor closest to the gateway (ties broken by lowest BS index). A BS
within r of its gateway transmits directly. Backhaul flows follow these
per-BS next-hop pointers, so a chain may hand over between gateway regions;
the minimum own-gateway distance strictly decreases along any chain, which
rules out cycles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _backend
from .geometry import Point2D

# next_hop sentinels (match the kernel encoding)
DIRECT_TO_GATEWAY = -1
DISCONNECTED = -2


@dataclass
class NetworkTopology:
    """Static per-trial network state.

    bs_positions (n, 2) and gateway_positions (g, 2) in meters;
    small_cell_radius r > 0 is both the coverage radius and the backhaul
    link range; exclusion_factor is the Delta in the (1+Delta)*r
    simultaneous-transmitter separation rule; link_rate W in bit/s.
    """

    bs_positions: np.ndarray
    gateway_positions: np.ndarray
    small_cell_radius: float
    exclusion_factor: float = 0.5
    link_rate: float = 1e9

    def __post_init__(self):
        self.bs_positions = _as_points_array(self.bs_positions)
        self.gateway_positions = _as_points_array(self.gateway_positions)
        if len(self.gateway_positions) < 1:
            raise ValueError("at least one gateway required")
        if not self.small_cell_radius > 0:
            raise ValueError("small_cell_radius must be > 0")
        if self.exclusion_factor < 0:
            raise ValueError("exclusion_factor must be >= 0")
        if not self.link_rate > 0:
            raise ValueError("link_rate must be > 0")

    @property
    def n_bs(self) -> int:
        return len(self.bs_positions)

    @property
    def exclusion_distance(self) -> float:
        """Minimum separation for simultaneous transmitters: (1+Delta)*r."""
        return (1.0 + self.exclusion_factor) * self.small_cell_radius


def _as_points_array(points) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64)
    if arr.size == 0:
        return np.zeros((0, 2))
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("positions must be an (m, 2) array or a list of points")
    return np.ascontiguousarray(arr)


@dataclass
class RouteTable:
    """Per-BS routing state produced by build_routes.

    next_hop holds a BS index, DIRECT_TO_GATEWAY, or DISCONNECTED; hop_count
    is the pointer-chain length to a gateway (0 when the chain never reaches
    one, including BSs whose relay is itself disconnected).
    """

    assigned_gateway: np.ndarray
    next_hop: np.ndarray
    hop_count: np.ndarray

    @property
    def n_bs(self) -> int:
        return len(self.assigned_gateway)

    @cached_property
    def connected(self) -> np.ndarray:
        return self.hop_count > 0

    @property
    def connected_count(self) -> int:
        return int(np.count_nonzero(self.connected))

    @property
    def k_n(self) -> float:
        """Mean hop count over connected BSs; NaN when none is connected."""
        if self.connected_count == 0:
            return math.nan
        return float(np.mean(self.hop_count[self.connected]))

    def route(self, bs: int) -> list[int]:
        """BS indices along the chain from bs to its terminal gateway hop."""
        if not self.connected[bs]:
            raise ValueError(f"BS {bs} is disconnected")
        chain = [bs]
        cur = bs
        while self.next_hop[cur] != DIRECT_TO_GATEWAY:
            cur = int(self.next_hop[cur])
            chain.append(cur)
        return chain


def assign_gateway(bs: Point2D, gateways: Sequence[Point2D]) -> int:
    """Index of the nearest gateway; ties go to the lowest index."""
    if len(gateways) == 0:
        raise ValueError("gateway list is empty")
    best = 0
    best_d2 = math.inf
    for idx, g in enumerate(gateways):
        d2 = (bs[0] - g[0]) ** 2 + (bs[1] - g[1]) ** 2
        if d2 < best_d2:
            best_d2 = d2
            best = idx
    return best


def next_hop(bs_index: int, topology: NetworkTopology, gateway: Point2D) -> int:
    """Relay selection for one BS toward the given gateway.

    Returns DIRECT_TO_GATEWAY when the BS is within r of the gateway;
    otherwise the index of the in-range neighbor strictly closer to the
    gateway that is itself closest to it (lowest index on ties), or
    DISCONNECTED when no such neighbor exists.

    Scalar reference implementation; build_routes uses the kernel backend.
    """
    pos = topology.bs_positions
    r2 = topology.small_cell_radius**2
    gx, gy = float(gateway[0]), float(gateway[1])
    xi, yi = pos[bs_index]
    own_g2 = (xi - gx) ** 2 + (yi - gy) ** 2
    if own_g2 <= r2:
        return DIRECT_TO_GATEWAY
    best = DISCONNECTED
    best_g2 = math.inf
    for j in range(topology.n_bs):
        if j == bs_index:
            continue
        xj, yj = pos[j]
        d2 = (xi - xj) ** 2 + (yi - yj) ** 2
        if d2 > r2:
            continue
        gj2 = (xj - gx) ** 2 + (yj - gy) ** 2
        if gj2 < own_g2 and gj2 < best_g2:
            best_g2 = gj2
            best = j
    return best


def build_routes(topology: NetworkTopology) -> RouteTable:
    """Assign gateways and resolve next-hop chains for every BS."""
    assigned, nxt, hops = _backend.build_routes_arrays(
        topology.bs_positions,
        topology.gateway_positions,
        topology.small_cell_radius,
    )
    return RouteTable(assigned_gateway=assigned, next_hop=nxt, hop_count=hops)


def min_hops_to_any_gateway(topology: NetworkTopology) -> np.ndarray:
    """BFS hop-count lower bound over the unit-disk graph (edges <= r).

    Hop counts include the final BS->gateway transmission; unreachable BSs
    get 0. Independent of the greedy scheme: used as its oracle (the greedy
    hop count can never beat this bound).
    """
    pos = topology.bs_positions
    gw = topology.gateway_positions
    n = topology.n_bs
    r2 = topology.small_cell_radius**2
    d_bs2 = ((pos[:, None, :] - pos[None, :, :]) ** 2).sum(-1)
    d_gw2 = ((pos[:, None, :] - gw[None, :, :]) ** 2).sum(-1)

    dist = np.zeros(n, dtype=np.int64)
    frontier = np.any(d_gw2 <= r2, axis=1)
    dist[frontier] = 1
    level = 1
    while frontier.any():
        reach = (d_bs2[frontier] <= r2).any(axis=0)
        new = reach & (dist == 0)
        level += 1
        dist[new] = level
        frontier = new
    return dist
