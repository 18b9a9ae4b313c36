from .energy import RadioModel
from .experiment import TrialResult, TrialSpec, build_world, run_experiment, run_trial, trial_matrix, trial_seeds
from .policies import GpsrPolicy, LeachPolicy, RbaPolicy, RoutingPolicy, make_policy
from .seeds import TOPOLOGY_STREAM, generator, mix64, splitmix64
from .topology import SINK_ID, Topology, build_topology, unit_disk_graph
from .traffic import TrafficPlan, choose_sources, source_count, synthetic_plan, tracker_payloads, tracker_plan
from .world import Metrics, NodeState, Packet, World, run, step
