"""Permutation routing by matchings on regular expander graphs.

A permutation ``pi`` of the vertices is routed by a sequence of rounds, each
a matching whose edges swap the two pebbles they join; pebble ``v`` must end
on vertex ``pi[v]``. :func:`route` builds such a schedule by splitting ``pi``
into two involutions and moving their pairs along matching-switchable path
families.
"""

from .graph import (
    Graph,
    estimate_lambda,
    from_edge_list,
    gen_complete,
    gen_cycle,
    gen_hypercube,
    gen_random_regular,
    mixing_discrepancy,
)
from .oracle import rt_exact, rt_lower_bound
from .partition import Partition, check_partition, find_partition
from .paths import BuilderParams, SwitchablePathFamily, build_family, family_schedule, verify_switchable
from .perm import Involution, Permutation, compose, decompose_into_involutions
from .scheduler import RouteReport, route, theoretical_round_bound
from .sim import Schedule, run_schedule, verify_achieves

__version__ = "0.1.0"

__all__ = [
    "BuilderParams",
    "Graph",
    "Involution",
    "Partition",
    "Permutation",
    "RouteReport",
    "Schedule",
    "SwitchablePathFamily",
    "build_family",
    "check_partition",
    "compose",
    "decompose_into_involutions",
    "estimate_lambda",
    "family_schedule",
    "find_partition",
    "from_edge_list",
    "gen_complete",
    "gen_cycle",
    "gen_hypercube",
    "gen_random_regular",
    "mixing_discrepancy",
    "route",
    "rt_exact",
    "rt_lower_bound",
    "run_schedule",
    "theoretical_round_bound",
    "verify_achieves",
    "verify_switchable",
]
