"""Command-line front door: score accounts, compare networks, generate data.

Exit codes: 0 success, 1 usage error, 2 data error (parse failures,
unknown accounts), 3 internal error. The default output format comes from
the INFLUENCE_TRACKER_FORMAT environment variable (text, csv, or json);
an explicit --format wins.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .diffusion import compare_networks
from .errors import InfluenceTrackerError
from .reports import render_compare, render_score, score_rows
from .store import generate_synthetic, load_dataset, save_dataset

FORMATS = ("text", "csv", "json")
FORMAT_ENV_VAR = "INFLUENCE_TRACKER_FORMAT"


class UsageError(Exception):
    """Bad command line or configuration; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}".rstrip())


@dataclass(frozen=True)
class RunConfig:
    """One resolved run: dataset, root, budget, instant, and format."""

    dataset_path: Path
    root: str | None = None
    n_f: int = 50
    k: int = 3
    ttl: int = 3
    as_of: datetime | None = None
    output_format: str = "text"

    def __post_init__(self):
        if self.k < 1 or self.n_f < self.k:
            raise UsageError(f"need followers-fetched >= top-k >= 1, got n_f={self.n_f}, k={self.k}")
        if self.ttl < 1:
            raise UsageError(f"ttl must be >= 1, got {self.ttl}")
        if self.output_format not in FORMATS:
            raise UsageError(f"unknown output format {self.output_format!r}")


def _parse_timestamp(raw: str) -> datetime:
    try:
        ts = datetime.fromisoformat(raw.replace("Z", "+00:00"))
    except ValueError:
        raise UsageError(f"cannot parse timestamp {raw!r} (expected RFC 3339)") from None
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _parse_int_list(raw: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in raw.split(",")]
    except ValueError:
        raise UsageError(f"{flag} expects an integer or comma-separated integers, got {raw!r}") from None


def _resolve_format(explicit: str | None) -> str:
    if explicit is not None:
        return explicit
    from_env = os.environ.get(FORMAT_ENV_VAR)
    if from_env is None:
        return "text"
    if from_env not in FORMATS:
        raise UsageError(f"{FORMAT_ENV_VAR} must be one of {', '.join(FORMATS)}, got {from_env!r}")
    return from_env


def cmd_score(args) -> int:
    fmt = _resolve_format(args.format)
    explicit_as_of = _parse_timestamp(args.as_of) if args.as_of else None
    dataset = load_dataset(args.dataset)
    as_of = explicit_as_of or dataset.captured_at
    rows = score_rows(dataset, args.handles, as_of)
    for row in rows:
        if row.span_clamped:
            print(
                f"note: tweet window span of {row.handle} clamped to one second",
                file=sys.stderr,
            )
    sys.stdout.write(render_score(rows, fmt, dataset.dataset_id, as_of))
    return 0


def cmd_compare(args) -> int:
    fmt = _resolve_format(args.format)
    n_f_values = _parse_int_list(args.nf, "--nf")
    k_values = _parse_int_list(args.k, "--k")
    if len(n_f_values) == 1 and len(k_values) > 1:
        n_f_values = n_f_values * len(k_values)
    if len(k_values) == 1 and len(n_f_values) > 1:
        k_values = k_values * len(n_f_values)
    if len(n_f_values) != len(k_values):
        raise UsageError(
            f"--nf and --k must pair up, got {len(n_f_values)} and {len(k_values)} values"
        )
    explicit_as_of = _parse_timestamp(args.as_of) if args.as_of else None
    configs = [
        RunConfig(
            dataset_path=Path(args.dataset), root=args.root, n_f=n_f, k=k,
            ttl=args.ttl, as_of=explicit_as_of, output_format=fmt,
        )
        for n_f, k in zip(n_f_values, k_values)
    ]

    dataset = load_dataset(args.dataset)
    as_of = explicit_as_of or dataset.captured_at
    root = dataset.resolve(args.root)

    results = []
    for config in configs:
        result = compare_networks(dataset, root.account_id, config.n_f, config.k, config.ttl, as_of)
        if result.by_influence_network.is_degenerate and result.by_followers_network.is_degenerate:
            print(
                f"warning: root {root.handle} has no resolvable followers; "
                "both networks are empty",
                file=sys.stderr,
            )
        results.append((config.n_f, config.k, config.ttl, result))
    sys.stdout.write(render_compare(
        results, fmt, dataset.dataset_id, root.handle, as_of,
        dump_networks=args.dump_networks,
    ))
    return 0


def cmd_gen(args) -> int:
    try:
        dataset = generate_synthetic(args.seed, args.accounts, args.max_followers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    save_dataset(dataset, args.out)
    stubs = sum(1 for a in dataset.accounts if a not in dataset.windows)
    tweets = sum(w.window_size for w in dataset.windows.values())
    print(f"wrote {args.out}: {len(dataset.accounts)} accounts ({stubs} stubs), {tweets} tweets")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="influence-tracker", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    score = sub.add_parser("score", help="score accounts and print a ranked table")
    score.add_argument("--dataset", required=True, help="snapshot JSONL file")
    score.add_argument("--as-of", dest="as_of", help="evaluation instant (RFC 3339); defaults to the dataset capture time")
    score.add_argument("--format", choices=FORMATS, help="output format (default from env, else text)")
    score.add_argument("handles", nargs="*", metavar="HANDLE", help="handles or account ids to score")
    score.set_defaults(func=cmd_score)

    compare = sub.add_parser("compare", help="compare rival top-k networks rooted at one account")
    compare.add_argument("--dataset", required=True, help="snapshot JSONL file")
    compare.add_argument("--root", required=True, help="root handle or account id")
    compare.add_argument("--nf", default="50", help="followers fetched per node; comma list for batches (default 50)")
    compare.add_argument("--k", default="3", help="top-k selections per node; comma list for batches (default 3)")
    compare.add_argument("--ttl", type=int, default=3, help="layer budget (default 3)")
    compare.add_argument("--as-of", dest="as_of", help="evaluation instant (RFC 3339)")
    compare.add_argument("--format", choices=FORMATS, help="output format (default from env, else text)")
    compare.add_argument("--dump-networks", action="store_true",
                         help="embed both network dumps in JSON output")
    compare.set_defaults(func=cmd_compare)

    gen = sub.add_parser("gen", help="write a deterministic synthetic dataset")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--accounts", type=int, required=True)
    gen.add_argument("--max-followers", dest="max_followers", type=int, required=True)
    gen.add_argument("--out", required=True, help="output JSONL path")
    gen.set_defaults(func=cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) is None:
            raise UsageError(parser.format_usage().rstrip())
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except InfluenceTrackerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        raise
    except Exception as exc:  # invariant breakage; never expected
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
