"""Snapshot datasets: JSONL persistence, follower lookup, synthetic data.

File format (UTF-8, one JSON object per line):

    {"kind": "account", "id": ..., "handle": ..., "followers_count": ...,
     "following_count": ..., "follower_ids": [...], "captured_at": RFC 3339}
    {"kind": "tweet", "id": ..., "author_id": ..., "created_at": RFC 3339,
     "retweet_count": ..., "favorite_count": ..., "is_retweet": ...}

Lines starting with "#" are comments. Accounts must precede their tweets;
otherwise line order is free. Parsing is strict: unknown kinds, duplicate
accounts, duplicate tweet ids, tweets without a preceding account record,
and invariant violations are all errors carrying the offending line number.

An account with counters but no tweets is a *stub*: a frontier account
whose own activity was never fetched. Stubs are legal and rank as inactive
(zero tweet rate). Follower ids that resolve to no account record at all
are tolerated on load and skipped by followers_of, since they carry no
counters to rank.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path

from .errors import DanglingReference, DuplicateAccount, ParseError, UnknownAccount
from .models import MAX_WINDOW_SIZE, AccountSnapshot, TweetRecord, TweetWindow

_ACCOUNT_FIELDS = ("id", "handle", "followers_count", "following_count", "follower_ids", "captured_at")
_TWEET_FIELDS = ("id", "author_id", "created_at", "retweet_count", "favorite_count", "is_retweet")


@dataclass
class SnapshotDataset:
    """All accounts and tweet windows captured in one snapshot.

    Immutable by convention after load/generation; concurrent readers are
    safe. ``windows`` holds at most one window per account, and only for
    accounts present in ``accounts``.
    """

    dataset_id: str
    captured_at: datetime
    accounts: dict[str, AccountSnapshot] = field(default_factory=dict)
    windows: dict[str, TweetWindow] = field(default_factory=dict)

    def is_stub(self, account_id: str) -> bool:
        return account_id in self.accounts and account_id not in self.windows

    def window_for(self, account_id: str) -> TweetWindow | None:
        return self.windows.get(account_id)

    def resolve(self, handle_or_id: str) -> AccountSnapshot:
        """Find an account by exact id, or by handle (case-insensitive,
        leading "@" optional). Raises UnknownAccount."""
        if handle_or_id in self.accounts:
            return self.accounts[handle_or_id]
        query = handle_or_id.lstrip("@").casefold()
        matches = [a for a in self.accounts.values() if a.handle.casefold() == query]
        if len(matches) == 1:
            return matches[0]
        if len(matches) > 1:
            raise UnknownAccount(f"handle {handle_or_id!r} is ambiguous in dataset {self.dataset_id!r}")
        raise UnknownAccount(f"no account {handle_or_id!r} in dataset {self.dataset_id!r}")


def _parse_timestamp(raw: object, line_no: int, field_name: str) -> datetime:
    if not isinstance(raw, str):
        raise ParseError(line_no, f"{field_name} must be an RFC 3339 string")
    try:
        ts = datetime.fromisoformat(raw.replace("Z", "+00:00"))
    except ValueError as exc:
        raise ParseError(line_no, f"bad {field_name} {raw!r}: {exc}") from None
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _require_fields(record: dict, fields: tuple[str, ...], line_no: int) -> None:
    missing = [f for f in fields if f not in record]
    if missing:
        raise ParseError(line_no, f"missing field(s): {', '.join(missing)}")


def load_dataset(path: str | Path) -> SnapshotDataset:
    """Parse a JSONL snapshot file into a SnapshotDataset.

    The dataset id is the file stem; the dataset capture instant is the
    latest account capture time. Tweets beyond the newest 100 per account
    are dropped (the window covers the latest 100 tweets only).
    """
    path = Path(path)
    accounts: dict[str, AccountSnapshot] = {}
    tweets_by_author: dict[str, list[TweetRecord]] = {}
    seen_tweet_ids: dict[str, set[str]] = {}

    with path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(line_no, f"invalid JSON: {exc.msg}") from None
            if not isinstance(record, dict):
                raise ParseError(line_no, "record must be a JSON object")
            kind = record.get("kind")
            if kind == "account":
                _require_fields(record, _ACCOUNT_FIELDS, line_no)
                account_id = record["id"]
                if account_id in accounts:
                    raise DuplicateAccount(f"line {line_no}: account {account_id!r} already defined")
                try:
                    snapshot = AccountSnapshot(
                        account_id=account_id,
                        handle=record["handle"],
                        followers_count=record["followers_count"],
                        following_count=record["following_count"],
                        follower_ids=tuple(record["follower_ids"]),
                        captured_at=_parse_timestamp(record["captured_at"], line_no, "captured_at"),
                    )
                except (TypeError, ValueError) as exc:
                    raise ParseError(line_no, f"bad account record: {exc}") from None
                accounts[account_id] = snapshot
                tweets_by_author[account_id] = []
                seen_tweet_ids[account_id] = set()
            elif kind == "tweet":
                _require_fields(record, _TWEET_FIELDS, line_no)
                author_id = record["author_id"]
                if author_id not in accounts:
                    raise DanglingReference(
                        f"line {line_no}: tweet {record['id']!r} references "
                        f"account {author_id!r} with no preceding account record"
                    )
                if record["id"] in seen_tweet_ids[author_id]:
                    raise ParseError(line_no, f"duplicate tweet id {record['id']!r} for {author_id!r}")
                created_at = _parse_timestamp(record["created_at"], line_no, "created_at")
                if created_at > accounts[author_id].captured_at:
                    raise ParseError(
                        line_no,
                        f"tweet {record['id']!r} created after its account's capture time",
                    )
                try:
                    tweet = TweetRecord(
                        tweet_id=record["id"],
                        author_id=author_id,
                        created_at=created_at,
                        retweet_count=record["retweet_count"],
                        favorite_count=record["favorite_count"],
                        is_retweet=bool(record["is_retweet"]),
                    )
                except (TypeError, ValueError) as exc:
                    raise ParseError(line_no, f"bad tweet record: {exc}") from None
                tweets_by_author[author_id].append(tweet)
                seen_tweet_ids[author_id].add(tweet.tweet_id)
            else:
                raise ParseError(line_no, f"unknown record kind {kind!r}")

    if not accounts:
        raise ParseError(0, f"dataset {path.name!r} contains no account records")

    windows = {
        author_id: TweetWindow.from_tweets(author_id, tweets)
        for author_id, tweets in tweets_by_author.items()
        if tweets
    }
    captured_at = max(a.captured_at for a in accounts.values())
    return SnapshotDataset(
        dataset_id=path.stem,
        captured_at=captured_at,
        accounts=accounts,
        windows=windows,
    )


def save_dataset(dataset: SnapshotDataset, path: str | Path) -> None:
    """Write a dataset as canonical JSONL: accounts sorted by id, each
    followed by its window's tweets newest-first."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for account_id in sorted(dataset.accounts):
            account = dataset.accounts[account_id]
            fh.write(json.dumps({
                "kind": "account",
                "id": account.account_id,
                "handle": account.handle,
                "followers_count": account.followers_count,
                "following_count": account.following_count,
                "follower_ids": list(account.follower_ids),
                "captured_at": account.captured_at.isoformat(),
            }, separators=(",", ":")) + "\n")
            window = dataset.windows.get(account_id)
            if window is None:
                continue
            for tweet in window.tweets:
                fh.write(json.dumps({
                    "kind": "tweet",
                    "id": tweet.tweet_id,
                    "author_id": tweet.author_id,
                    "created_at": tweet.created_at.isoformat(),
                    "retweet_count": tweet.retweet_count,
                    "favorite_count": tweet.favorite_count,
                    "is_retweet": tweet.is_retweet,
                }, separators=(",", ":")) + "\n")


def followers_of(dataset: SnapshotDataset, account_id: str, limit: int) -> list[AccountSnapshot]:
    """Up to ``limit`` follower snapshots of an account, smallest ids first.

    Follower ids with no account record are skipped. Raises UnknownAccount
    if the account itself is absent.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if account_id not in dataset.accounts:
        raise UnknownAccount(f"no account {account_id!r} in dataset {dataset.dataset_id!r}")
    resolvable = sorted(
        fid for fid in dataset.accounts[account_id].follower_ids if fid in dataset.accounts
    )
    return [dataset.accounts[fid] for fid in resolvable[:limit]]


_SYNTHETIC_EPOCH = datetime(2020, 6, 1, tzinfo=timezone.utc)
_STUB_FRACTION = 0.15


def generate_synthetic(seed: int, accounts: int, max_followers: int) -> SnapshotDataset:
    """Deterministic pseudo-random dataset for tests and demos.

    The same seed always yields the identical dataset (and therefore a
    byte-identical file once saved). Roughly 15% of accounts are stubs;
    the rest carry 1..100 tweets with varying activity spans, engagement
    scales, and retweet propensities.
    """
    if accounts < 2:
        raise ValueError(f"accounts must be >= 2, got {accounts}")
    if max_followers < 1:
        raise ValueError(f"max_followers must be >= 1, got {max_followers}")

    rng = random.Random(seed)
    ids = [f"acct-{i:05d}" for i in range(accounts)]
    snapshots: dict[str, AccountSnapshot] = {}
    windows: dict[str, TweetWindow] = {}

    for i, account_id in enumerate(ids):
        others = ids[:i] + ids[i + 1:]
        n_followers = rng.randint(0, min(max_followers, len(others)))
        follower_ids = tuple(rng.sample(others, n_followers))
        followers_count = n_followers + int(10 ** rng.uniform(0, 4))
        following_count = rng.randint(0, 3000)
        snapshots[account_id] = AccountSnapshot(
            account_id=account_id,
            handle=f"user_{i:05d}",
            followers_count=followers_count,
            following_count=following_count,
            follower_ids=follower_ids,
            captured_at=_SYNTHETIC_EPOCH,
        )

        if rng.random() < _STUB_FRACTION:
            continue
        n_tweets = rng.randint(1, MAX_WINDOW_SIZE)
        span_days = rng.uniform(0.5, 40.0)
        engagement_scale = int(10 ** rng.uniform(0, 3))
        retweet_propensity = rng.random()
        tweets = []
        for j in range(n_tweets):
            offset = span_days * (j / (n_tweets - 1)) if n_tweets > 1 else rng.uniform(0.01, span_days)
            tweets.append(TweetRecord(
                tweet_id=f"tw-{i:05d}-{j:03d}",
                author_id=account_id,
                created_at=_SYNTHETIC_EPOCH - timedelta(days=offset),
                retweet_count=rng.randint(0, engagement_scale),
                favorite_count=rng.randint(0, engagement_scale * 2),
                is_retweet=rng.random() < retweet_propensity,
            ))
        windows[account_id] = TweetWindow.from_tweets(account_id, tweets)

    return SnapshotDataset(
        dataset_id=f"synthetic-{seed}",
        captured_at=_SYNTHETIC_EPOCH,
        accounts=snapshots,
        windows=windows,
    )
