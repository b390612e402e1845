"""Domain records: account snapshots and tweet windows.

These are immutable value objects captured from a crawl (or generated
synthetically). All timestamps are timezone-aware UTC datetimes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime

# The scoring window covers at most this many of an account's newest tweets.
MAX_WINDOW_SIZE = 100


@dataclass(frozen=True)
class AccountSnapshot:
    """One account's profile counters and (possibly truncated) follower list.

    ``follower_ids`` is a sample of the account's followers at capture time;
    it may be shorter than ``followers_count`` but never longer, and never
    contains the account itself or duplicates.
    """

    account_id: str
    handle: str
    followers_count: int
    following_count: int
    follower_ids: tuple[str, ...]
    captured_at: datetime

    def __post_init__(self):
        if self.followers_count < 0:
            raise ValueError(f"followers_count must be >= 0, got {self.followers_count}")
        if self.following_count < 0:
            raise ValueError(f"following_count must be >= 0, got {self.following_count}")
        if len(set(self.follower_ids)) != len(self.follower_ids):
            raise ValueError("follower_ids contains duplicates")
        if self.account_id in self.follower_ids:
            raise ValueError("follower_ids must not contain the account itself")
        if len(self.follower_ids) > self.followers_count:
            raise ValueError(
                f"follower_ids has {len(self.follower_ids)} entries but "
                f"followers_count is {self.followers_count}"
            )


@dataclass(frozen=True)
class TweetRecord:
    """One tweet's engagement counters.

    ``is_retweet`` marks a repost of another account's tweet.
    """

    tweet_id: str
    author_id: str
    created_at: datetime
    retweet_count: int
    favorite_count: int
    is_retweet: bool

    def __post_init__(self):
        if self.retweet_count < 0:
            raise ValueError(f"retweet_count must be >= 0, got {self.retweet_count}")
        if self.favorite_count < 0:
            raise ValueError(f"favorite_count must be >= 0, got {self.favorite_count}")


@dataclass(frozen=True)
class TweetWindow:
    """An account's newest tweets, ordered newest-first.

    Holds at most MAX_WINDOW_SIZE tweets. Ordering is created_at descending
    with tweet_id as a deterministic tie-breaker, so identical inputs always
    produce the identical window.
    """

    author_id: str
    tweets: tuple[TweetRecord, ...] = field(default=())

    def __post_init__(self):
        if len(self.tweets) > MAX_WINDOW_SIZE:
            raise ValueError(f"window holds {len(self.tweets)} tweets, max is {MAX_WINDOW_SIZE}")
        for t in self.tweets:
            if t.author_id != self.author_id:
                raise ValueError(f"tweet {t.tweet_id} belongs to {t.author_id}, not {self.author_id}")
        for newer, older in zip(self.tweets, self.tweets[1:]):
            if newer.created_at < older.created_at:
                raise ValueError("tweets must be ordered newest-first")
            if newer.created_at == older.created_at and newer.tweet_id >= older.tweet_id:
                raise ValueError("equal-timestamp tweets must be ordered by tweet_id")

    @property
    def window_size(self) -> int:
        return len(self.tweets)

    @property
    def oldest(self) -> TweetRecord:
        if not self.tweets:
            raise IndexError("window is empty")
        return self.tweets[-1]

    @property
    def newest(self) -> TweetRecord:
        if not self.tweets:
            raise IndexError("window is empty")
        return self.tweets[0]

    @classmethod
    def from_tweets(cls, author_id: str, tweets: list[TweetRecord] | tuple[TweetRecord, ...]) -> "TweetWindow":
        """Build a window from tweets in any order, keeping the newest 100."""
        by_id = sorted(tweets, key=lambda t: t.tweet_id)
        newest_first = sorted(by_id, key=lambda t: t.created_at, reverse=True)
        return cls(author_id=author_id, tweets=tuple(newest_first[:MAX_WINDOW_SIZE]))
