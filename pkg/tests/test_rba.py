import pytest

from src.core.geometry import Point, distance, in_forward_region
from src.core.predictor import PredictorParams, replay
from src.core.protocols import DROP, Mode, Neighbor, RoutingDecision, check_view, rba_select

SENDER = Point(0.0, 0.0)
SINK = Point(100.0, 0.0)


def predicted(history: list[float]) -> float:
    return replay(history, PredictorParams(epsilon=1.0))[-1].predicted


def test_picks_neighbour_with_highest_predicted_rba():
    view = [
        Neighbor(1, Point(10.0, 5.0), predicted([85, 70, 55, 40])),
        Neighbor(4, Point(8.0, -6.0), predicted([25, 32, 35, 39])),
        Neighbor(5, Point(12.0, 1.0), predicted([50, 46, 42, 38])),
    ]
    decision = rba_select(SENDER, SINK, view)
    assert decision == RoutingDecision(4, Mode.RBA)


def test_single_forward_neighbour():
    assert rba_select(SENDER, SINK, [Neighbor(3, Point(5, 5), 1.0)]).next_hop == 3


def test_tie_goes_to_neighbour_nearer_the_sink_then_lower_id():
    view = [Neighbor(2, Point(5, 5), 30.0), Neighbor(9, Point(8, 0), 30.0)]
    assert rba_select(SENDER, SINK, view).next_hop == 9
    view = [Neighbor(7, Point(5, 5), 30.0), Neighbor(3, Point(5, -5), 30.0)]
    assert rba_select(SENDER, SINK, view).next_hop == 3


def test_backward_neighbours_are_ignored_even_with_more_bandwidth():
    view = [Neighbor(1, Point(-5, 0), 99.0), Neighbor(2, Point(3, 3), 1.0)]
    assert rba_select(SENDER, SINK, view) == RoutingDecision(2, Mode.RBA)


def test_drops_when_no_neighbour_makes_progress():
    sender = Point(50.0, 50.0)
    sink = Point(50.0, 0.0)
    view = [Neighbor(1, Point(30.0, 55.0), 5.0), Neighbor(2, Point(60.0, 50.01), 9.0)]
    # both behind the perpendicular through the sender, neither closer to the sink
    assert rba_select(sender, sink, view) == DROP


def test_visited_neighbours_are_only_reached_greedily():
    view = [Neighbor(1, Point(5, 0), 50.0), Neighbor(2, Point(-1, 0.5), 10.0)]
    assert rba_select(SENDER, SINK, view, exclude={1}) == RoutingDecision(1, Mode.GREEDY)
    view = [Neighbor(1, Point(5, 0), 50.0), Neighbor(2, Point(0, 4), 10.0)]
    assert rba_select(SENDER, SINK, view, exclude={1}) == RoutingDecision(2, Mode.RBA)


def test_drops_when_only_visited_lateral_neighbours_remain():
    sender = Point(10.0, 10.0)
    sink = Point(10.0, 0.0)
    view = [Neighbor(1, Point(15.0, 10.0), 50.0), Neighbor(2, Point(12.0, 12.0), 10.0)]
    assert rba_select(sender, sink, view, exclude={1}) == DROP


def test_packet_never_revisits_a_node_through_rba_hops(rng):
    for _ in range(100):
        points = {i: Point(float(x), float(y)) for i, (x, y) in enumerate(rng.uniform(0, 100, size=(40, 2)))}
        rbas = {i: float(value) for i, value in enumerate(rng.uniform(0, 100, size=40))}
        sink = Point(50.0, 0.0)
        hops = [int(rng.integers(40))]
        while len(hops) < 2000:
            here = points[hops[-1]]
            view = [
                Neighbor(i, p, rbas[i]) for i, p in points.items() if i != hops[-1] and distance(p, here) <= 30.0
            ]
            if distance(here, sink) <= 30.0:
                break
            decision = rba_select(here, sink, view, exclude=frozenset(hops))
            if decision.next_hop is None:
                break
            if decision.mode is Mode.RBA:
                assert decision.next_hop not in hops
            hops.append(decision.next_hop)
        assert len(hops) < 2000


def test_empty_view_drops():
    assert rba_select(SENDER, SINK, []) == DROP


@pytest.mark.parametrize("scale", [0.001, 0.5, 3.0, 1e6])
def test_argmax_is_scale_invariant(rng, scale):
    for _ in range(50):
        view = [
            Neighbor(i, Point(float(rng.uniform(-30, 30)), float(rng.uniform(-30, 30))), float(rng.uniform(0, 100)))
            for i in range(12)
        ]
        scaled = [Neighbor(n.node_id, n.position, n.rba * scale) for n in view]
        assert rba_select(SENDER, SINK, view) == rba_select(SENDER, SINK, scaled)


def test_rba_mode_never_leaves_forward_region(rng):
    for _ in range(200):
        view = [
            Neighbor(i, Point(float(rng.uniform(-30, 30)), float(rng.uniform(-30, 30))), float(rng.uniform(0, 100)))
            for i in range(8)
        ]
        decision = rba_select(SENDER, SINK, view)
        chosen = {n.node_id: n for n in view}.get(decision.next_hop)
        if decision.mode is Mode.RBA:
            assert in_forward_region(chosen.position, SENDER, SINK)
        elif decision.mode is Mode.GREEDY:
            assert distance(chosen.position, SINK) < distance(SENDER, SINK)


def test_decision_requires_drop_mode_for_missing_hop():
    with pytest.raises(ValueError):
        RoutingDecision(None, Mode.RBA)
    with pytest.raises(ValueError):
        RoutingDecision(3, Mode.DROP)


def test_view_validation():
    with pytest.raises(ValueError):
        check_view([Neighbor(1, Point(0, 0), 1.0), Neighbor(1, Point(1, 1), 2.0)])
    with pytest.raises(ValueError):
        check_view([Neighbor(1, Point(0, 0), -1.0)])


@pytest.mark.parametrize(
    "view",
    [
        [Neighbor(4, Point(3, 1), 2.0), Neighbor(4, Point(5, -1), 6.0)],
        [Neighbor(4, Point(3, 1), 2.0), Neighbor(7, Point(5, -1), -0.5)],
    ],
)
def test_selection_rejects_malformed_view(view):
    with pytest.raises(ValueError):
        rba_select(SENDER, SINK, view)
