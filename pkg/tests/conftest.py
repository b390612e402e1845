"""Shared builders for snapshots, windows, and whole datasets."""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

import pytest

from influence_tracker import AccountSnapshot, SnapshotDataset, TweetRecord, TweetWindow

AS_OF = datetime(2023, 5, 1, tzinfo=timezone.utc)


def make_tweets(
    author_id: str,
    n: int,
    span_days: float,
    *,
    retweet_counts=None,
    favorite_counts=None,
    retweet_fraction: float = 0.0,
    end: datetime = AS_OF,
) -> list[TweetRecord]:
    """n tweets evenly spread over span_days, newest at ``end``.

    The first round(n * retweet_fraction) tweets (newest first) are marked
    as retweets, so the retweet share of the window is exact.
    """
    n_retweets = round(n * retweet_fraction)
    tweets = []
    for i in range(n):
        offset = span_days * (i / (n - 1)) if n > 1 else span_days
        tweets.append(TweetRecord(
            tweet_id=f"{author_id}-t{i:03d}",
            author_id=author_id,
            created_at=end - timedelta(days=offset),
            retweet_count=retweet_counts[i] if retweet_counts else 0,
            favorite_count=favorite_counts[i] if favorite_counts else 0,
            is_retweet=i < n_retweets,
        ))
    return tweets


def make_window(author_id: str, n: int = 10, span_days: float = 1.0, **kwargs) -> TweetWindow:
    return TweetWindow.from_tweets(author_id, make_tweets(author_id, n, span_days, **kwargs))


def make_account(
    account_id: str,
    followers_count: int = 100,
    following_count: int = 10,
    follower_ids: tuple[str, ...] = (),
    handle: str | None = None,
    captured_at: datetime = AS_OF,
) -> AccountSnapshot:
    return AccountSnapshot(
        account_id=account_id,
        handle=handle if handle is not None else account_id,
        followers_count=max(followers_count, len(follower_ids)),
        following_count=following_count,
        follower_ids=tuple(follower_ids),
        captured_at=captured_at,
    )


def dataset_from_spec(spec: dict[str, dict], dataset_id: str = "fixture") -> SnapshotDataset:
    """Build a dataset from per-account keyword dicts.

    Each entry may carry AccountSnapshot keywords plus ``tweets`` (count,
    None for a stub), ``span_days``, ``retweet_fraction``, and
    ``retweet_counts`` / ``favorite_counts`` for the window.
    """
    accounts = {}
    windows = {}
    for account_id, params in spec.items():
        params = dict(params)
        n_tweets = params.pop("tweets", 10)
        span_days = params.pop("span_days", 1.0)
        window_kwargs = {
            key: params.pop(key)
            for key in ("retweet_fraction", "retweet_counts", "favorite_counts")
            if key in params
        }
        accounts[account_id] = make_account(account_id, **params)
        if n_tweets is not None:
            windows[account_id] = make_window(account_id, n_tweets, span_days, **window_kwargs)
    return SnapshotDataset(
        dataset_id=dataset_id, captured_at=AS_OF, accounts=accounts, windows=windows
    )


def complete_tree_spec(branching: int = 3, depth: int = 3, **account_kwargs) -> dict[str, dict]:
    """A complete follower tree: the root's followers, their followers, ...

    Every account gets the same window shape, so all tweet rates are equal.
    Ids are 'n0' (root), then 'n0.0', 'n0.0.1', ... by position.
    """
    spec: dict[str, dict] = {}

    def grow(node_id: str, level: int) -> None:
        if level == depth:
            spec[node_id] = dict(account_kwargs)
            return
        children = [f"{node_id}.{i}" for i in range(branching)]
        spec[node_id] = dict(account_kwargs, follower_ids=tuple(children))
        for child in children:
            grow(child, level + 1)

    grow("n0", 0)
    return spec


@pytest.fixture
def tree_dataset() -> SnapshotDataset:
    """Complete 3-ary, 3-layer tree; every edge transmission factor is 1."""
    spec = complete_tree_spec(3, 3, tweets=10, span_days=2.0, retweet_fraction=1.0)
    return dataset_from_spec(spec, dataset_id="tree")
