"""Diffusion scoring over layered networks.

Each follow edge carries a tweet-transmission factor: the downstream
account's tweet rate relative to the upstream one, times the downstream
retweet propensity. A path from root to sink crossing every layer once
scores the product of its edge factors (the sink hop is structural and
contributes none). A network's total is the sum over all such paths; the
network with the larger total spreads information further.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime

from .errors import SinkOperand
from .network import LayeredNetwork, NetworkNode, RankingCategory, build_network
from .store import SnapshotDataset

# Totals closer than this are reported as a tie rather than a winner.
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class TransmissionPath:
    """One root-to-sink path: its nodes, per-edge factors, and their product."""

    nodes: tuple[str, ...]
    edge_tt: tuple[float, ...]
    path_tt: float


@dataclass(frozen=True)
class DiffusionReport:
    """All qualifying paths of one network and their summed transmission."""

    category: RankingCategory
    path_count: int
    total_tt: float
    per_path: tuple[TransmissionPath, ...]


@dataclass(frozen=True)
class ComparisonResult:
    """The two rival networks' totals, their signed gap, and the winner.

    ``winner`` is None for a tie (totals within TIE_TOLERANCE). The full
    reports and networks are retained so callers can show path counts or
    dump the graphs without rebuilding.
    """

    by_influence_ttt: float
    by_followers_ttt: float
    difference: float
    winner: RankingCategory | None
    by_influence_report: DiffusionReport
    by_followers_report: DiffusionReport
    by_influence_network: LayeredNetwork
    by_followers_network: LayeredNetwork


def tweet_transmission(upstream: NetworkNode, downstream: NetworkNode) -> float:
    """Per-edge transmission factor: (downstream tcr / upstream tcr) * downstream retweet prob.

    An upstream that never tweets transmits nothing (returns 0 rather than
    dividing by zero). Raises SinkOperand if either node is the sink.
    """
    if upstream.is_sink or downstream.is_sink:
        raise SinkOperand("tweet transmission is undefined for the sink node")
    if upstream.tcr == 0:
        return 0.0
    return (downstream.tcr / upstream.tcr) * downstream.retweet_prob


def enumerate_paths(network: LayeredNetwork) -> list[TransmissionPath]:
    """All root-to-sink paths whose layers strictly step 0, 1, ..., ttl, sink.

    Edges that stay within a layer, skip layers, or point back up are never
    traversed. Paths come out in lexicographic node-id order. An empty list
    means the network has no complete chain (degenerate or truncated).
    """
    nodes = network.nodes
    adjacency = network.successors()
    paths: list[TransmissionPath] = []

    def walk(chain: list[str]) -> None:
        current = chain[-1]
        depth = len(chain) - 1
        if depth == network.ttl:
            if network.sink_id in adjacency[current]:
                edge_tt = tuple(
                    tweet_transmission(nodes[a], nodes[b]) for a, b in zip(chain, chain[1:])
                )
                paths.append(TransmissionPath(
                    nodes=tuple(chain) + (network.sink_id,),
                    edge_tt=edge_tt,
                    path_tt=math.prod(edge_tt),
                ))
            return
        for succ in adjacency[current]:
            if succ != network.sink_id and nodes[succ].layer == depth + 1:
                walk(chain + [succ])

    if network.root in nodes:
        walk([network.root])
    return paths


def total_tweet_transmission(paths: list[TransmissionPath]) -> float:
    """Sum of per-path transmission products; 0.0 for no paths."""
    return sum(p.path_tt for p in paths)


def diffusion_report(network: LayeredNetwork) -> DiffusionReport:
    paths = enumerate_paths(network)
    return DiffusionReport(
        category=network.category,
        path_count=len(paths),
        total_tt=total_tweet_transmission(paths),
        per_path=tuple(paths),
    )


def compare_networks(
    dataset: SnapshotDataset,
    root: str,
    n_f: int,
    k: int,
    ttl: int,
    as_of: datetime,
) -> ComparisonResult:
    """Build both category networks with the same budget and compare totals.

    The difference is by-influence minus by-followers; its sign picks the
    winner unless the totals are within TIE_TOLERANCE of each other.
    """
    influence_net = build_network(
        dataset, root, n_f, k, ttl, RankingCategory.BY_INFLUENCE, as_of
    )
    followers_net = build_network(
        dataset, root, n_f, k, ttl, RankingCategory.BY_FOLLOWERS, as_of
    )
    influence_report = diffusion_report(influence_net)
    followers_report = diffusion_report(followers_net)
    difference = influence_report.total_tt - followers_report.total_tt
    if abs(difference) < TIE_TOLERANCE:
        winner = None
    elif difference > 0:
        winner = RankingCategory.BY_INFLUENCE
    else:
        winner = RankingCategory.BY_FOLLOWERS
    return ComparisonResult(
        by_influence_ttt=influence_report.total_tt,
        by_followers_ttt=followers_report.total_tt,
        difference=difference,
        winner=winner,
        by_influence_report=influence_report,
        by_followers_report=followers_report,
        by_influence_network=influence_net,
        by_followers_network=followers_net,
    )
