from .base import DROP, Mode, Neighbor, NeighborView, PerimeterState, RoutingDecision, check_view
from .gpsr import gabriel_neighbors, gpsr_greedy, gpsr_next_hop, gpsr_perimeter, planarize, route_gpsr
from .leach import (
    ClusterAssignment,
    ClusterNode,
    election_threshold,
    epoch_length,
    is_eligible,
    leach_round,
    nearest_head,
)
from .rba import rba_select
