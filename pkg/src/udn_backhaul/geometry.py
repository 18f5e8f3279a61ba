"""Hexagonal macrocell geometry, small-cell placement, and gateway layout.

The macrocell is a regular hexagon with one vertex straight up (vertices at
angles 30 + 60k degrees from the center). Distances are in meters throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import GatewayOutsideRegionError, PlacementInfeasibleError

_SQ3_2 = math.sqrt(3.0) / 2.0

# Unit vectors toward the six vertices, in angle order 30..330 degrees.
_VERTEX_DIRS = np.array(
    [
        (_SQ3_2, 0.5),
        (0.0, 1.0),
        (-_SQ3_2, 0.5),
        (-_SQ3_2, -0.5),
        (0.0, -1.0),
        (_SQ3_2, -0.5),
    ]
)

# Outward edge normals (angles 0..300 degrees); the hexagon's inradius is
# circumradius * sqrt(3)/2 along each of these directions.
_EDGE_NORMALS = np.array(
    [
        (1.0, 0.0),
        (0.5, _SQ3_2),
        (-0.5, _SQ3_2),
        (-1.0, 0.0),
        (-0.5, -_SQ3_2),
        (0.5, -_SQ3_2),
    ]
)

# Gateways sit on alternating vertices (angles 90, 210, 330) so that the
# three of them form an equilateral triangle with side sqrt(3)*R.
_GATEWAY_VERTEX_IDX = (1, 3, 5)

# Boundary slack for containment tests, relative to the circumradius.
_CONTAINS_RTOL = 1e-9

DEFAULT_MAX_REJECTIONS = 10_000


class Point2D(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class MacrocellRegion:
    """Regular hexagonal simulation area.

    circumradius is the center-to-vertex distance in meters; the area is
    (3*sqrt(3)/2) * circumradius**2.
    """

    circumradius: float = 1000.0
    center: Point2D = Point2D(0.0, 0.0)

    def __post_init__(self):
        if not self.circumradius > 0:
            raise ValueError("circumradius must be > 0")

    @property
    def area(self) -> float:
        return 1.5 * math.sqrt(3.0) * self.circumradius**2

    def vertices(self) -> list[Point2D]:
        """The six vertices in angle order 30..330 degrees."""
        cx, cy = self.center
        r = self.circumradius
        return [Point2D(cx + r * dx, cy + r * dy) for dx, dy in _VERTEX_DIRS]

    def contains_mask(self, points: np.ndarray) -> np.ndarray:
        """Boolean inside-or-on-boundary mask for an (m, 2) array of points."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        rel = pts - np.array(self.center, dtype=float)
        proj = rel @ _EDGE_NORMALS.T
        limit = self.circumradius * (_SQ3_2 + _CONTAINS_RTOL)
        return np.all(proj <= limit, axis=1)

    def bounding_box(self) -> tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax); the hexagon fills 75% of this box."""
        cx, cy = self.center
        hw = self.circumradius * _SQ3_2
        return (cx - hw, cy - self.circumradius, cx + hw, cy + self.circumradius)


@dataclass(frozen=True)
class PlacementPolicy:
    """How small-cell positions are drawn inside the hexagon.

    mode "uniform": i.i.d. uniform points (a Poisson process conditioned on
    the count). mode "hardcore": sequential rejection sampling enforcing a
    pairwise minimum separation; min_separation None defers the choice to
    the caller (the experiment engine uses 2r).
    """

    mode: str = "uniform"
    min_separation: float | None = None
    max_rejections: int = DEFAULT_MAX_REJECTIONS

    def __post_init__(self):
        if self.mode not in ("uniform", "hardcore"):
            raise ValueError(f"unknown placement mode {self.mode!r}")
        if self.min_separation is not None and self.min_separation < 0:
            raise ValueError("min_separation must be >= 0")
        if self.max_rejections < 1:
            raise ValueError("max_rejections must be >= 1")


@dataclass(frozen=True)
class GatewayConfig:
    """Backhaul gateway placement.

    "top_vertices": three gateways on alternating hexagon vertices (angles
    90, 210, 330). "single_center": one gateway at the macrocell center.
    "explicit": caller-supplied positions, all inside the hexagon.
    """

    mode: str = "top_vertices"
    explicit_positions: tuple[Point2D, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.mode not in ("top_vertices", "single_center", "explicit"):
            raise ValueError(f"unknown gateway mode {self.mode!r}")
        if self.mode == "explicit" and len(self.explicit_positions) == 0:
            raise ValueError("explicit gateway mode needs at least one position")


def hex_contains(p: Point2D, region: MacrocellRegion) -> bool:
    """True iff p lies inside or on the boundary of the hexagon."""
    return bool(region.contains_mask(np.array([p], dtype=float))[0])


def place_gateways(config: GatewayConfig, region: MacrocellRegion) -> list[Point2D]:
    """Gateway positions for the given placement mode."""
    if config.mode == "single_center":
        return [Point2D(*region.center)]
    if config.mode == "top_vertices":
        verts = region.vertices()
        return [verts[i] for i in _GATEWAY_VERTEX_IDX]
    positions = [Point2D(float(p[0]), float(p[1])) for p in config.explicit_positions]
    for p in positions:
        if not hex_contains(p, region):
            raise GatewayOutsideRegionError(f"gateway outside region: {p}")
    return positions


def sample_bs_positions(
    n: int,
    region: MacrocellRegion,
    policy: PlacementPolicy,
    rng: np.random.Generator,
) -> list[Point2D]:
    """Draw n small-cell positions inside the hexagon.

    Uniform mode draws i.i.d. uniform points; hardcore mode additionally
    enforces pairwise separation >= min_separation and raises
    PlacementInfeasibleError after max_rejections consecutive failures.
    Identical (n, region, policy, seed) yield identical point lists.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return []
    if policy.mode == "hardcore":
        return _sample_hardcore(n, region, policy, rng)
    return _sample_uniform(n, region, rng)


def _sample_uniform(n: int, region: MacrocellRegion, rng: np.random.Generator) -> list[Point2D]:
    xmin, ymin, xmax, ymax = region.bounding_box()
    out = np.empty((0, 2))
    need = n
    while need > 0:
        # ~75% of bounding-box draws land inside the hexagon
        m = max(16, int(need / 0.7) + 8)
        cand = rng.uniform((xmin, ymin), (xmax, ymax), size=(m, 2))
        hits = cand[region.contains_mask(cand)][:need]
        out = np.vstack([out, hits])
        need -= len(hits)
    return [Point2D(float(x), float(y)) for x, y in out]


def _sample_hardcore(
    n: int, region: MacrocellRegion, policy: PlacementPolicy, rng: np.random.Generator
) -> list[Point2D]:
    if policy.min_separation is None:
        raise ValueError("hardcore placement requires min_separation")
    d2_min = policy.min_separation**2
    xmin, ymin, xmax, ymax = region.bounding_box()
    placed = np.empty((n, 2))
    count = 0
    rejections = 0
    while count < n:
        cand = rng.uniform((xmin, ymin), (xmax, ymax))
        ok = bool(region.contains_mask(cand[None, :])[0])
        if ok and count > 0:
            d2 = np.sum((placed[:count] - cand) ** 2, axis=1)
            ok = bool(np.min(d2) >= d2_min)
        if ok:
            placed[count] = cand
            count += 1
            rejections = 0
        else:
            rejections += 1
            if rejections >= policy.max_rejections:
                raise PlacementInfeasibleError(count, n, policy.max_rejections)
    return [Point2D(float(x), float(y)) for x, y in placed]


def triangle_sector(points: Sequence[Point2D] | np.ndarray, region: MacrocellRegion) -> np.ndarray:
    """Index (0..5) of the congruent center-to-edge triangle containing each point.

    Triangle k spans polar angles [30 + 60k, 30 + 60(k+1)) degrees about the
    center. Used by uniformity checks: under uniform placement the six
    triangle counts are equidistributed.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    rel = pts - np.array(region.center, dtype=float)
    ang = np.degrees(np.arctan2(rel[:, 1], rel[:, 0]))
    return np.floor(((ang - 30.0) % 360.0) / 60.0).astype(int) % 6
