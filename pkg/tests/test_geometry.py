import math

import pytest

from src.core.exceptions import DegenerateGeometryError
from src.core.geometry import Point, distance, in_forward_region, segment_intersection, segments_cross

SENDER = Point(0.0, 0.0)
SINK = Point(10.0, 0.0)


def test_distance():
    assert distance(Point(0, 0), Point(3, 4)) == 5.0


@pytest.mark.parametrize(
    "candidate, expected",
    [
        (Point(3, 4), True),
        (Point(-1, 5), False),
        (Point(0, 5), True),
        (Point(0, -5), True),
        (Point(10, 0), True),
        (Point(-0.001, 0), False),
    ],
)
def test_forward_region(candidate, expected):
    assert in_forward_region(candidate, SENDER, SINK) is expected


def test_forward_region_rejects_sender_on_sink():
    with pytest.raises(DegenerateGeometryError):
        in_forward_region(Point(1, 1), SINK, SINK)


def test_forward_region_is_rotation_invariant():
    angle = math.radians(37)

    def rotate(p: Point) -> Point:
        return Point(p.x * math.cos(angle) - p.y * math.sin(angle), p.x * math.sin(angle) + p.y * math.cos(angle))

    for candidate in (Point(3, 4), Point(-1, 5), Point(2, -7), Point(-3, -3)):
        assert in_forward_region(candidate, SENDER, SINK) == in_forward_region(rotate(candidate), SENDER, rotate(SINK))


def test_point_rejects_non_finite():
    with pytest.raises(ValueError):
        Point(math.nan, 0.0)
    with pytest.raises(ValueError):
        Point(0.0, math.inf)


def test_segment_intersection():
    hit = segment_intersection(Point(0, 0), Point(2, 2), Point(0, 2), Point(2, 0))
    assert hit == Point(1.0, 1.0)
    assert segment_intersection(Point(0, 0), Point(1, 0), Point(0, 1), Point(1, 1)) is None
    assert segment_intersection(Point(0, 0), Point(1, 1), Point(3, 0), Point(2, 1)) is None


def test_segments_cross_ignores_shared_endpoints():
    assert segments_cross(Point(0, 0), Point(2, 2), Point(0, 2), Point(2, 0))
    assert not segments_cross(Point(0, 0), Point(2, 2), Point(2, 2), Point(4, 0))
    assert not segments_cross(Point(0, 0), Point(2, 0), Point(1, 0), Point(3, 0))


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (Point(1, 0), Point(0, 1), math.sqrt(2)),
        (Point(2.5, -1), Point(2.5, -1), 0.0),
        (Point(-3, 0), Point(0, 4), 5.0),
    ],
)
def test_distance_examples(a, b, expected):
    assert distance(a, b) == pytest.approx(expected, abs=1e-12)
    assert distance(a, b) == distance(b, a)


def test_distance_is_zero_only_for_equal_points(rng):
    for x, y, u, v in rng.uniform(-50, 50, size=(200, 4)):
        a, b = Point(float(x), float(y)), Point(float(u), float(v))
        assert distance(a, a) == 0.0
        assert distance(a, b) > 0.0
        assert distance(a, b) == distance(b, a)


def test_forward_region_is_translation_invariant(rng):
    for _ in range(200):
        sender, sink, candidate, shift = (Point(*map(float, rng.uniform(-100, 100, size=2))) for _ in range(4))
        moved = [Point(p.x + shift.x, p.y + shift.y) for p in (candidate, sender, sink)]
        assert in_forward_region(candidate, sender, sink) == in_forward_region(*moved)


def test_reflection_across_the_perpendicular_flips_membership(rng):
    for _ in range(500):
        sender, sink, candidate = (Point(*map(float, rng.uniform(-100, 100, size=2))) for _ in range(3))
        ux, uy = sink.x - sender.x, sink.y - sender.y
        norm = math.hypot(ux, uy)
        ux, uy = ux / norm, uy / norm
        along = (candidate.x - sender.x) * ux + (candidate.y - sender.y) * uy
        if abs(along) < 1e-6:
            continue
        mirrored = Point(candidate.x - 2 * along * ux, candidate.y - 2 * along * uy)
        assert in_forward_region(candidate, sender, sink) != in_forward_region(mirrored, sender, sink)


def test_points_on_the_perpendicular_belong_to_the_region():
    for y in (-7.0, -0.5, 0.0, 3.0):
        candidate = Point(0.0, y)
        mirrored = Point(-candidate.x, y)
        assert in_forward_region(candidate, SENDER, SINK)
        assert in_forward_region(mirrored, SENDER, SINK)
