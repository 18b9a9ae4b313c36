import numpy as np
import pytest

from src.core.geometry import Point, distance
from src.core.protocols import ClusterNode, election_threshold, epoch_length, is_eligible, leach_round, nearest_head


def scattered(n: int, seed: int = 0) -> list[ClusterNode]:
    rng = np.random.default_rng(seed)
    return [ClusterNode(i, Point(float(x), float(y))) for i, (x, y) in enumerate(rng.uniform(0, 100, size=(n, 2)))]


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
def test_probability_must_be_open_unit_interval(p):
    with pytest.raises(ValueError):
        leach_round(scattered(5), 0, p, np.random.default_rng(0))


def test_threshold_schedule():
    assert epoch_length(0.05) == 20
    assert election_threshold(0.05, 0) == pytest.approx(0.05)
    assert election_threshold(0.05, 20) == pytest.approx(0.05)
    assert election_threshold(0.05, 19) == pytest.approx(1.0)
    assert election_threshold(0.3, 1) == pytest.approx(0.3 / 0.7)


def test_expected_head_count_at_epoch_start():
    nodes = scattered(100)
    rng = np.random.default_rng(2024)
    counts = [len(leach_round(nodes, 0, 0.05, rng).heads) for _ in range(10_000)]
    assert 4.5 <= float(np.mean(counts)) <= 5.5


def test_heads_sit_out_the_rest_of_their_epoch():
    node = ClusterNode(1, Point(0, 0), last_head_round=3)
    assert not is_eligible(node, 10, 0.05)
    assert is_eligible(node, 20, 0.05)
    assert is_eligible(ClusterNode(2, Point(0, 0)), 7, 0.05)

    ineligible = [ClusterNode(i, Point(float(i), 0.0), last_head_round=0) for i in range(30)]
    rng = np.random.default_rng(5)
    assert leach_round(ineligible, 19, 0.05, rng).heads == ()


def test_every_remaining_node_heads_the_last_round_of_an_epoch():
    nodes = scattered(40)
    assignment = leach_round(nodes, 19, 0.05, np.random.default_rng(1))
    assert set(assignment.heads) == {node.node_id for node in nodes}


def test_members_join_the_nearest_head():
    nodes = scattered(60, seed=3)
    rng = np.random.default_rng(11)
    assignment = leach_round(nodes, 10, 0.05, rng)
    while not assignment.heads:
        assignment = leach_round(nodes, 10, 0.05, rng)
    heads = [node for node in nodes if node.node_id in assignment.heads]
    for node in nodes:
        head = assignment.head_of[node.node_id]
        if node.node_id in assignment.heads:
            assert head == node.node_id and assignment.is_head(head)
            continue
        best = min(distance(node.position, h.position) for h in heads)
        chosen = next(h for h in heads if h.node_id == head)
        assert distance(node.position, chosen.position) == best


def test_round_without_heads_has_no_membership():
    rng = np.random.default_rng(0)
    nodes = [ClusterNode(0, Point(0, 0)), ClusterNode(1, Point(1, 1))]
    for _ in range(100):
        assignment = leach_round(nodes, 0, 0.01, rng)
        if not assignment.heads:
            assert assignment.head_of == {}
            return
    pytest.fail("expected at least one headless round")


def test_nearest_head_of_empty_set():
    assert nearest_head(Point(0, 0), []) is None


def test_election_is_seeded():
    nodes = scattered(100)
    first = leach_round(nodes, 2, 0.05, np.random.default_rng(77))
    second = leach_round(nodes, 2, 0.05, np.random.default_rng(77))
    assert first == second
