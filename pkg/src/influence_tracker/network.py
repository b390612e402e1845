"""Layered follower networks rooted at one account.

Starting from a root, each layer's nodes are expanded by fetching up to
``n_f`` of their followers and keeping the top ``k`` under one of two
rival ranking categories: by influence score, or by raw follower count.
Expansion stops after ``ttl`` layers; a synthetic sink node is then wired
to every node on the last layer so all diffusion paths share one endpoint.

A node's layer is the depth at which it was first selected (first
assignment wins); later selections only add edges. The root is never
re-entered: a selection that points back at it is dropped, so the graph
stays loop-free at the layer level.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum

from .errors import UnknownAccount
from .metrics import compute_tcr, influence_metric, retweet_probability
from .models import AccountSnapshot, TweetWindow
from .store import SnapshotDataset, followers_of

DEFAULT_SINK_ID = "__sink__"


class RankingCategory(Enum):
    BY_INFLUENCE = "by_influence"
    BY_FOLLOWERS = "by_followers"


@dataclass(frozen=True)
class NetworkNode:
    """One account in the network, with the rates diffusion needs.

    ``layer`` is None for the sink, which carries zero rates.
    """

    account_id: str
    layer: int | None
    tcr: float
    retweet_prob: float
    influence: float
    followers_count: int

    @property
    def is_sink(self) -> bool:
        return self.layer is None


@dataclass(frozen=True)
class NetworkEdge:
    """Directed follow edge: ``dst`` follows ``src``, tweets flow src -> dst."""

    src: str
    dst: str

    def __post_init__(self):
        if self.src == self.dst:
            raise ValueError(f"self-edge on {self.src!r}")


@dataclass
class LayeredNetwork:
    """A rooted, layer-annotated follower graph with a sink, under one category."""

    root: str
    category: RankingCategory
    ttl: int
    sink_id: str
    nodes: dict[str, NetworkNode] = field(default_factory=dict)
    edges: set[NetworkEdge] = field(default_factory=set)

    @property
    def is_degenerate(self) -> bool:
        """True when the root has no selected followers at all."""
        return not any(n.layer == 1 for n in self.nodes.values())

    def successors(self) -> dict[str, list[str]]:
        """Adjacency map with deterministically sorted out-neighbour lists."""
        adj: dict[str, list[str]] = {node_id: [] for node_id in self.nodes}
        for edge in self.edges:
            adj[edge.src].append(edge.dst)
        for targets in adj.values():
            targets.sort()
        return adj

    def sorted_nodes(self) -> list[NetworkNode]:
        """Nodes ordered by (layer, account_id), sink last."""
        return sorted(
            self.nodes.values(),
            key=lambda n: (n.layer if n.layer is not None else self.ttl + 1, n.account_id),
        )

    def to_dict(self) -> dict:
        """JSON-ready dump: node records then edge records, fully sorted."""
        return {
            "root": self.root,
            "category": self.category.value,
            "ttl": self.ttl,
            "sink_id": self.sink_id,
            "nodes": [
                {
                    "id": n.account_id,
                    "layer": n.layer,
                    "tcr": n.tcr,
                    "retweet_prob": n.retweet_prob,
                    "influence": n.influence,
                    "followers_count": n.followers_count,
                }
                for n in self.sorted_nodes()
            ],
            "edges": [
                {"from": e.src, "to": e.dst}
                for e in sorted(self.edges, key=lambda e: (e.src, e.dst))
            ],
        }

    def to_jsonl(self) -> str:
        """Deterministic line-per-record graph dump for debugging/export."""
        dump = self.to_dict()
        lines = []
        for node in dump["nodes"]:
            lines.append(json.dumps({"kind": "node", **node}, separators=(",", ":")))
        for edge in dump["edges"]:
            lines.append(json.dumps({"kind": "edge", **edge}, separators=(",", ":")))
        return "\n".join(lines) + "\n"


def rank_followers(
    followers: list[tuple[AccountSnapshot, TweetWindow | None]],
    category: RankingCategory,
    k: int,
    as_of: datetime,
) -> list[str]:
    """Top-k follower ids under a category, ties broken by ascending id.

    ByInfluence sorts on the influence score (stubs score 0); ByFollowers
    on the raw follower count. Returns at most k ids, best first.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if category is RankingCategory.BY_INFLUENCE:
        def sort_key(pair):
            snapshot, window = pair
            return (-influence_metric(snapshot, window, as_of).value, snapshot.account_id)
    else:
        def sort_key(pair):
            snapshot, _ = pair
            return (-snapshot.followers_count, snapshot.account_id)
    ranked = sorted(followers, key=sort_key)
    return [snapshot.account_id for snapshot, _ in ranked[:k]]


def _node_rates(
    snapshot: AccountSnapshot, window: TweetWindow | None, as_of: datetime
) -> tuple[float, float, float]:
    """(tcr, retweet_prob, influence) for an account; zeros for stubs."""
    score = influence_metric(snapshot, window, as_of)
    if window is None or window.window_size == 0:
        return 0.0, 0.0, score.value
    return compute_tcr(window, as_of), retweet_probability(window), score.value


def _make_sink_id(node_ids: set[str]) -> str:
    sink_id = DEFAULT_SINK_ID
    while sink_id in node_ids:
        sink_id += "_"
    return sink_id


def build_network(
    dataset: SnapshotDataset,
    root: str,
    n_f: int,
    k: int,
    ttl: int,
    category: RankingCategory,
    as_of: datetime,
) -> LayeredNetwork:
    """Expand a layered top-k follower network from ``root``.

    Per node at layer n < ttl: fetch up to ``n_f`` followers, rank them
    under ``category``, select the top ``k``. New accounts join at layer
    n+1; known accounts only gain an edge. Selections of the root are
    dropped. Finally every layer-``ttl`` node is wired to the sink.

    A root with no resolvable followers yields a degenerate network (root
    plus sink, no paths); callers are expected to report that, not fail.
    """
    if root not in dataset.accounts:
        raise UnknownAccount(f"no account {root!r} in dataset {dataset.dataset_id!r}")
    if ttl < 1:
        raise ValueError(f"ttl must be >= 1, got {ttl}")
    if n_f < 1:
        raise ValueError(f"n_f must be >= 1, got {n_f}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    rates: dict[str, tuple[float, float, float]] = {}

    def node_for(account_id: str, layer: int) -> NetworkNode:
        if account_id not in rates:
            rates[account_id] = _node_rates(
                dataset.accounts[account_id], dataset.windows.get(account_id), as_of
            )
        tcr, retweet_prob, influence = rates[account_id]
        return NetworkNode(
            account_id=account_id,
            layer=layer,
            tcr=tcr,
            retweet_prob=retweet_prob,
            influence=influence,
            followers_count=dataset.accounts[account_id].followers_count,
        )

    network = LayeredNetwork(root=root, category=category, ttl=ttl, sink_id="")
    network.nodes[root] = node_for(root, 0)
    frontier = [root]

    for layer in range(ttl):
        next_frontier: list[str] = []
        for parent in frontier:
            candidates = [
                (snapshot, dataset.windows.get(snapshot.account_id))
                for snapshot in followers_of(dataset, parent, n_f)
            ]
            for selected in rank_followers(candidates, category, k, as_of):
                if selected == root:
                    continue
                network.edges.add(NetworkEdge(src=parent, dst=selected))
                if selected not in network.nodes:
                    network.nodes[selected] = node_for(selected, layer + 1)
                    next_frontier.append(selected)
        frontier = next_frontier

    sink_id = _make_sink_id(set(network.nodes))
    network.sink_id = sink_id
    network.nodes[sink_id] = NetworkNode(
        account_id=sink_id, layer=None, tcr=0.0, retweet_prob=0.0,
        influence=0.0, followers_count=0,
    )
    for node in list(network.nodes.values()):
        if node.layer == ttl:
            network.edges.add(NetworkEdge(src=node.account_id, dst=sink_id))
    return network
