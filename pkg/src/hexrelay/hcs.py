"""Integer algebra on the hexagonal cell lattice.

The plane is tiled with regular hexagonal cells of edge length ``r``.  Cells
are indexed by integer coordinates ``(x, y)``: the x-axis runs through cell
centers perpendicular to a pair of parallel cell edges, and the y-axis is the
x-axis rotated pi/3 counter-clockwise.  Moving one step along either axis
lands on the edge-adjacent cell, ``sqrt(3)*r`` away in Cartesian terms.

Relay coverage is modelled by a larger hexagon of edge ``lam * r`` with
``lam = 12n + 7``, centered on a cell and oriented like the cells.  Two
relays are *robustly connected* when their coverage hexagons share a boundary
edge segment; the set of center offsets achieving this is small and exactly
enumerable (see :func:`feasible_hop_offsets`).

All coordinates and distances in this module are exact integers; inner
products are exact rationals.  Cartesian conversion is the only place floats
appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

SQRT3 = math.sqrt(3.0)


class HexCoord(NamedTuple):
    """A cell index on the lattice."""

    x: int
    y: int

    def __sub__(self, other: "HexCoord") -> "HexVec":
        return HexVec(self.x - other.x, self.y - other.y)

    def shift(self, v: "HexVec") -> "HexCoord":
        return HexCoord(self.x + v.dx, self.y + v.dy)


class HexVec(NamedTuple):
    """A displacement between two cells."""

    dx: int
    dy: int

    def __neg__(self) -> "HexVec":
        return HexVec(-self.dx, -self.dy)

    def scaled(self, k: int) -> "HexVec":
        return HexVec(self.dx * k, self.dy * k)


@dataclass(frozen=True)
class HcsFrame:
    """Anchors the lattice in Cartesian space.

    ``origin`` is the Cartesian point of cell (0, 0) -- by convention the
    center of geometry of the input clusters.  ``r`` is the cell edge length
    in meters and ``n`` the coverage scale, so the coverage hexagon edge is
    ``(12n + 7) * r``.
    """

    origin: tuple[float, float]
    r: float
    n: int

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError(f"cell edge r must be positive, got {self.r}")
        if self.n < 0 or int(self.n) != self.n:
            raise ValueError(f"scale n must be a non-negative integer, got {self.n}")

    @property
    def lam(self) -> int:
        return 12 * self.n + 7

    @property
    def big_radius(self) -> float:
        """Coverage hexagon edge length (= circumradius of the enclosing disk)."""
        return self.lam * self.r


def hex_distance(u: HexCoord, v: HexCoord) -> int:
    """Cell count of the shortest lattice path between two cells."""
    dx = u[0] - v[0]
    dy = u[1] - v[1]
    return max(abs(dx), abs(dy), abs(dx + dy))


def vec_norm(v: HexVec) -> int:
    """Lattice length of a displacement (same measure as :func:`hex_distance`)."""
    return max(abs(v[0]), abs(v[1]), abs(v[0] + v[1]))


def inner_product(a: HexVec, b: HexVec) -> Fraction:
    """Exact inner product honoring the pi/3 angle between the axes.

    The basis Gram matrix is [[1, 1/2], [1/2, 1]], so half-integer values
    are possible; the result is an exact Fraction.
    """
    return Fraction(2 * (a[0] * b[0] + a[1] * b[1]) + a[0] * b[1] + a[1] * b[0], 2)


def orientation(d: HexVec) -> float:
    """Angle in [0, pi/3) between ``d`` and its reference lattice axis.

    Vectors parallel to any of the six unit lattice directions (the facade
    normals) return 0.  For the rest, the angle is measured against the
    x-axis when the components share a sign; against the y-axis or the
    negative x-axis otherwise, whichever is nearer.  Raises ValueError for
    the zero vector.
    """
    dx, dy = d
    if dx == 0 and dy == 0:
        raise ValueError("orientation is undefined for the zero vector")
    if dx == 0 or dy == 0 or dx + dy == 0:
        return 0.0
    ax, ay = abs(dx), abs(dy)
    if dx * dy > 0:
        return math.atan(SQRT3 * ay / (2 * ax + ay))
    if ax < ay:
        # nearer the y-axis
        return math.atan(SQRT3 * ax / (2 * ay - ax))
    # nearer the x-axis (other side)
    return math.atan(SQRT3 * ay / (2 * ax - ay))


def to_cartesian(c: HexCoord, f: HcsFrame) -> tuple[float, float]:
    """Cartesian center of a cell."""
    step = SQRT3 * f.r
    return (
        f.origin[0] + step * (c[0] + c[1] / 2.0),
        f.origin[1] + step * (SQRT3 / 2.0) * c[1],
    )


def from_cartesian(p: tuple[float, float], f: HcsFrame) -> HexCoord:
    """Cell whose center is nearest to a Cartesian point (inverse of to_cartesian)."""
    yf = 2.0 * (p[1] - f.origin[1]) / (3.0 * f.r)
    xf = (p[0] - f.origin[0]) / (SQRT3 * f.r) - yf / 2.0
    return _cube_round(xf, yf)


def _cube_round(xf: float, yf: float) -> HexCoord:
    # round in cube coordinates, then repair the axis with the largest error
    zf = -xf - yf
    rx, ry, rz = round(xf), round(yf), round(zf)
    ex, ey, ez = abs(rx - xf), abs(ry - yf), abs(rz - zf)
    if ex > ey and ex > ez:
        rx = -ry - rz
    elif ey > ez:
        ry = -rx - rz
    return HexCoord(int(rx), int(ry))


# The six unit facade directions: center offsets (up to the lam scale) at
# which a coverage hexagon has a neighbor sharing a full edge.
UNIT_FACADES: tuple[HexVec, ...] = (
    HexVec(1, 0),
    HexVec(-1, 0),
    HexVec(0, 1),
    HexVec(0, -1),
    HexVec(1, -1),
    HexVec(-1, 1),
)

# Lattice step of length 2 perpendicular to each facade: sliding a facade
# neighbor along the shared edge moves its center by multiples of this.
PERP_STEP: dict[HexVec, HexVec] = {
    HexVec(1, 0): HexVec(-1, 2),
    HexVec(-1, 0): HexVec(1, -2),
    HexVec(0, 1): HexVec(2, -1),
    HexVec(0, -1): HexVec(-2, 1),
    HexVec(1, -1): HexVec(1, 1),
    HexVec(-1, 1): HexVec(-1, -1),
}


def facades(n: int) -> tuple[HexVec, ...]:
    """The six lam-scaled facade vectors for scale ``n``."""
    lam = 12 * n + 7
    return tuple(u.scaled(lam) for u in UNIT_FACADES)


def perp_step(u: HexVec) -> HexVec:
    """Slide step perpendicular to a unit facade direction."""
    return PERP_STEP[u]


def facade_track(anchor: HexCoord, unit: HexVec, n: int) -> list[HexCoord]:
    """All 8n+5 cells adjacent to ``anchor``'s coverage hexagon across one facade.

    The track is the facade neighbor ``anchor + lam*unit`` slid by up to
    4n+2 perpendicular steps each way; beyond that the hexagon edges no
    longer overlap.
    """
    lam = 12 * n + 7
    base = anchor.shift(unit.scaled(lam))
    p = PERP_STEP[unit]
    kmax = 4 * n + 2
    return [HexCoord(base.x + k * p.dx, base.y + k * p.dy) for k in range(-kmax, kmax + 1)]


@lru_cache(maxsize=None)
def feasible_hop_offsets(n: int) -> frozenset[HexVec]:
    """Center offsets under which two coverage hexagons share a boundary edge.

    For each facade ``u`` the offsets are ``lam*u + k*perp(u)`` for
    ``|k| <= 4n+2``: the perfectly aligned neighbor plus every slide that
    keeps at least one cell edge of contact.  There are exactly 6*(8n+5)
    distinct offsets and their lattice lengths span [12n+7, 16n+9].
    """
    if n < 0:
        raise ValueError(f"scale n must be non-negative, got {n}")
    lam = 12 * n + 7
    kmax = 4 * n + 2
    out = set()
    for u in UNIT_FACADES:
        p = PERP_STEP[u]
        fx, fy = lam * u.dx, lam * u.dy
        for k in range(-kmax, kmax + 1):
            out.add(HexVec(fx + k * p.dx, fy + k * p.dy))
    return frozenset(out)


def is_robustly_connected(u: HexCoord, v: HexCoord, n: int) -> bool:
    """True when the coverage hexagons at ``u`` and ``v`` share a boundary edge."""
    return HexVec(v[0] - u[0], v[1] - u[1]) in feasible_hop_offsets(n)


def is_coverage_connected(u: HexCoord, v: HexCoord, n: int) -> bool:
    """True when the coverage hexagons at ``u`` and ``v`` intersect at all.

    This is the link criterion the placement algorithms maintain: a shared
    boundary edge (a robust hop) or an outright overlap both leave the pair
    within communication reach with positive margin.  Geometrically this is
    membership of the center offset in the hexagon scaled by two; vertex
    contact would need non-integer cell coordinates, so it cannot occur.
    """
    lam = 12 * n + 7
    # components in half-apothem / half-edge units, where the doubled hexagon
    # is {|X| <= 2*lam, |X+Y| <= 4*lam, |X-Y| <= 4*lam}
    bx = 2 * (v[0] - u[0]) + (v[1] - u[1])
    by = 3 * (v[1] - u[1])
    return abs(bx) <= 2 * lam and abs(bx + by) <= 4 * lam and abs(bx - by) <= 4 * lam


def hexagon_vertices(
    center: tuple[float, float], edge: float
) -> list[tuple[float, float]]:
    """Cartesian vertices of a cell-oriented hexagon (edges parallel to y-axis)."""
    cx, cy = center
    a = SQRT3 / 2.0 * edge
    h = edge / 2.0
    return [
        (cx + a, cy + h),
        (cx, cy + edge),
        (cx - a, cy + h),
        (cx - a, cy - h),
        (cx, cy - edge),
        (cx + a, cy - h),
    ]
