"""Plane geometry for node placement and the forward-region next-hop rule."""

import math
from dataclasses import dataclass

from src.core.exceptions import DegenerateGeometryError

EPS = 1e-12


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")


def distance(a: Point, b: Point) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def in_forward_region(candidate: Point, sender: Point, sink: Point) -> bool:
    """
    Checks whether a candidate lies in the sender's forward region.

    The region is the closed half-plane bounded by the line through the sender
    perpendicular to the sender-to-sink ray, on the sink's side. The boundary
    line itself belongs to the region.

    Args:
        candidate (Point): Position of the candidate next hop.
        sender (Point): Position of the forwarding node.
        sink (Point): Position of the sink.

    Returns:
        bool: True if (sink - sender) . (candidate - sender) >= 0.

    Raises:
        DegenerateGeometryError: If the sender sits on the sink.
    """
    dx = sink.x - sender.x
    dy = sink.y - sender.y
    if dx == 0.0 and dy == 0.0:
        raise DegenerateGeometryError(f"sender {sender} coincides with the sink")
    return dx * (candidate.x - sender.x) + dy * (candidate.y - sender.y) >= 0.0


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def segment_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> Point | None:
    """Returns the intersection point of segments p1p2 and q1q2, or None. Collinear overlaps return None."""
    rx, ry = p2.x - p1.x, p2.y - p1.y
    sx, sy = q2.x - q1.x, q2.y - q1.y
    denom = rx * sy - ry * sx
    if abs(denom) < EPS:
        return None
    qpx, qpy = q1.x - p1.x, q1.y - p1.y
    t = (qpx * sy - qpy * sx) / denom
    u = (qpx * ry - qpy * rx) / denom
    if -EPS <= t <= 1 + EPS and -EPS <= u <= 1 + EPS:
        return Point(p1.x + t * rx, p1.y + t * ry)
    return None


def segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Proper crossing: the segments intersect at a point interior to both. Shared endpoints do not count."""
    d1 = _cross(q1, q2, p1)
    d2 = _cross(q1, q2, p2)
    d3 = _cross(p1, p2, q1)
    d4 = _cross(p1, p2, q2)
    return ((d1 > EPS and d2 < -EPS) or (d1 < -EPS and d2 > EPS)) and (
        (d3 > EPS and d4 < -EPS) or (d3 < -EPS and d4 > EPS)
    )
