"""Account scoring: tweet-creation rate, influence score, and h-indexes.

Score definition
----------------
For an account with ``Followers`` followers and ``Following`` followed
accounts, posting at a rate of ``TCR`` tweets per day over its latest
(up to 100) tweets:

    influence = TCR * OOM(Followers) * log10(Followers / Following + 1)

where OOM(n) is the order of magnitude of the follower count
(10^floor(log10 n), and 0 for n = 0 so that follower-less accounts score
zero). The +1 offset inside the log keeps the last factor positive even
when the two counts are equal; a zero Following is treated as 1 to keep
the ratio finite.

TCR divides the window size by the age, in days, of the oldest tweet in
the window at the evaluation instant; the age is clamped below at one
second so a burst of simultaneous tweets cannot divide by zero. Retweets
count like any other tweet.

The retweet/favorite h-index of a window is the largest h such that h of
its tweets have at least h retweets (favorites); the "daily" variants
divide by the window's time span in days.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime
from typing import Iterable, Sequence

from .errors import AccountMismatch, ClockSkew, EmptyWindow
from .models import AccountSnapshot, TweetWindow

SECONDS_PER_DAY = 86400.0

# Smallest window span, in days (one second): division-by-zero guard.
EPSILON_DAYS = 1.0 / SECONDS_PER_DAY


@dataclass(frozen=True)
class InfluenceScore:
    """An influence value together with the three factors it multiplies.

    ``value`` is always the literal product ``tcr * oom_followers *
    ftf_factor`` of the stored fields, so the decomposition can be audited
    bit-for-bit.
    """

    tcr: float
    oom_followers: float
    ftf_factor: float
    value: float


@dataclass(frozen=True)
class HIndexReport:
    """Retweet/favorite h-indexes of a window, raw and per-day."""

    retweet_h_last100: int
    favorite_h_last100: int
    retweet_h_daily: float
    favorite_h_daily: float
    span_days: float


def window_span_days(window: TweetWindow, as_of: datetime) -> float:
    """Age in days of the oldest tweet in the window, clamped to >= 1 second.

    Raises EmptyWindow for an empty window and ClockSkew if any tweet is
    newer than ``as_of``.
    """
    if window.window_size == 0:
        raise EmptyWindow(f"account {window.author_id} has an empty tweet window")
    if window.newest.created_at > as_of:
        raise ClockSkew(
            f"tweet {window.newest.tweet_id} created {window.newest.created_at.isoformat()} "
            f"is newer than as_of {as_of.isoformat()}"
        )
    span = (as_of - window.oldest.created_at).total_seconds() / SECONDS_PER_DAY
    return max(EPSILON_DAYS, span)


def compute_tcr(window: TweetWindow, as_of: datetime) -> float:
    """Tweets per day over the window: size / age of its oldest tweet."""
    return window.window_size / window_span_days(window, as_of)


def order_of_magnitude(n: int) -> float:
    """Largest power of ten that is <= n; 0.0 for n = 0.

    Computed from the decimal digit count so exact powers of ten are never
    misrounded by floating-point log10.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return 0.0
    return float(10 ** (len(str(n)) - 1))


def follower_following_factor(followers_count: int, following_count: int) -> float:
    """log10(followers/following + 1), with a zero following treated as 1."""
    effective_following = max(following_count, 1)
    return math.log10(followers_count / effective_following + 1.0)


def influence_metric(
    snapshot: AccountSnapshot,
    window: TweetWindow | None,
    as_of: datetime,
) -> InfluenceScore:
    """Score an account from its snapshot and tweet window.

    A missing or empty window means an inactive account: tcr is 0 and so is
    the score. Raises AccountMismatch if the window belongs to a different
    account.
    """
    if window is not None and window.author_id != snapshot.account_id:
        raise AccountMismatch(
            f"window belongs to {window.author_id}, snapshot to {snapshot.account_id}"
        )
    oom = order_of_magnitude(snapshot.followers_count)
    ftf = follower_following_factor(snapshot.followers_count, snapshot.following_count)
    if window is None or window.window_size == 0:
        tcr = 0.0
    else:
        tcr = compute_tcr(window, as_of)
    return InfluenceScore(tcr=tcr, oom_followers=oom, ftf_factor=ftf, value=tcr * oom * ftf)


def h_index(counts: Iterable[int] | Sequence[int]) -> int:
    """Largest h such that at least h of the counts are >= h."""
    h = 0
    for c in sorted(counts, reverse=True):
        if c > h:
            h += 1
        else:
            break
    return h


def h_index_report(window: TweetWindow, as_of: datetime) -> HIndexReport:
    """Retweet and favorite h-indexes over the window, raw and per-day."""
    span = window_span_days(window, as_of)
    retweet_h = h_index(t.retweet_count for t in window.tweets)
    favorite_h = h_index(t.favorite_count for t in window.tweets)
    return HIndexReport(
        retweet_h_last100=retweet_h,
        favorite_h_last100=favorite_h,
        retweet_h_daily=retweet_h / span,
        favorite_h_daily=favorite_h / span,
        span_days=span,
    )


def retweet_probability(window: TweetWindow) -> float:
    """Fraction of the window that is retweets, in [0, 1]."""
    if window.window_size == 0:
        raise EmptyWindow(f"account {window.author_id} has an empty tweet window")
    return sum(1 for t in window.tweets if t.is_retweet) / window.window_size
