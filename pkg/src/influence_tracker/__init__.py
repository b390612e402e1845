"""Influence scoring and tweet-diffusion analysis over account snapshots."""

from .diffusion import (
    ComparisonResult,
    DiffusionReport,
    TransmissionPath,
    compare_networks,
    diffusion_report,
    enumerate_paths,
    total_tweet_transmission,
    tweet_transmission,
)
from .errors import (
    AccountMismatch,
    ClockSkew,
    DanglingReference,
    DatasetError,
    DuplicateAccount,
    EmptyWindow,
    InfluenceTrackerError,
    ParseError,
    SinkOperand,
    UnknownAccount,
)
from .metrics import (
    HIndexReport,
    InfluenceScore,
    compute_tcr,
    h_index,
    h_index_report,
    influence_metric,
    order_of_magnitude,
    retweet_probability,
)
from .models import MAX_WINDOW_SIZE, AccountSnapshot, TweetRecord, TweetWindow
from .network import (
    LayeredNetwork,
    NetworkEdge,
    NetworkNode,
    RankingCategory,
    build_network,
    rank_followers,
)
from .store import (
    SnapshotDataset,
    followers_of,
    generate_synthetic,
    load_dataset,
    save_dataset,
)

__version__ = "0.1.0"

__all__ = [
    "AccountMismatch",
    "AccountSnapshot",
    "ClockSkew",
    "ComparisonResult",
    "DanglingReference",
    "DatasetError",
    "DiffusionReport",
    "DuplicateAccount",
    "EmptyWindow",
    "HIndexReport",
    "InfluenceScore",
    "InfluenceTrackerError",
    "LayeredNetwork",
    "MAX_WINDOW_SIZE",
    "NetworkEdge",
    "NetworkNode",
    "ParseError",
    "RankingCategory",
    "SinkOperand",
    "SnapshotDataset",
    "TransmissionPath",
    "TweetRecord",
    "TweetWindow",
    "UnknownAccount",
    "build_network",
    "compare_networks",
    "compute_tcr",
    "diffusion_report",
    "enumerate_paths",
    "followers_of",
    "generate_synthetic",
    "h_index",
    "h_index_report",
    "influence_metric",
    "load_dataset",
    "order_of_magnitude",
    "rank_followers",
    "retweet_probability",
    "save_dataset",
    "total_tweet_transmission",
    "tweet_transmission",
]
