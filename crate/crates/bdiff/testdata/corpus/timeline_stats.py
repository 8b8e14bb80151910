"""Summary statistics over event timelines."""

from __future__ import annotations

import csv
import math
import sys
from collections import defaultdict
from datetime import datetime, timedelta


ISO_FORMAT = "%Y-%m-%dT%H:%M:%S"
BUCKET_MINUTES = 15


def parse_timestamp(text: str) -> datetime:
    cleaned = text.strip().replace("Z", "")
    return datetime.strptime(cleaned, ISO_FORMAT)


def bucket_of(moment: datetime) -> datetime:
    minutes = (moment.minute // BUCKET_MINUTES) * BUCKET_MINUTES
    return moment.replace(minute=minutes, second=0, microsecond=0)


class TimelineAccumulator:
    def __init__(self) -> None:
        self.counts_by_bucket: dict[datetime, int] = defaultdict(int)
        self.durations_ms: list[float] = []
        self.error_codes: dict[str, int] = defaultdict(int)
        self.first_event: datetime | None = None
        self.last_event: datetime | None = None

    def observe(self, moment: datetime, duration_ms: float, code: str) -> None:
        self.counts_by_bucket[bucket_of(moment)] += 1
        self.durations_ms.append(duration_ms)
        if code and code != "ok":
            self.error_codes[code] += 1
        if self.first_event is None or moment < self.first_event:
            self.first_event = moment
        if self.last_event is None or moment > self.last_event:
            self.last_event = moment

    def span(self) -> timedelta:
        if self.first_event is None or self.last_event is None:
            return timedelta(0)
        return self.last_event - self.first_event

    def percentile(self, fraction: float) -> float:
        if not self.durations_ms:
            return 0.0
        ordered = sorted(self.durations_ms)
        rank = max(0, math.ceil(fraction * len(ordered)) - 1)
        return ordered[rank]

    def busiest_bucket(self) -> tuple[datetime | None, int]:
        best_moment = None
        best_count = 0
        for moment, count in sorted(self.counts_by_bucket.items()):
            if count > best_count:
                best_moment = moment
                best_count = count
        return best_moment, best_count


def read_events(path: str) -> TimelineAccumulator:
    acc = TimelineAccumulator()
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        for row in reader:
            try:
                moment = parse_timestamp(row["timestamp"])
                duration = float(row.get("duration_ms", "0") or 0)
            except (KeyError, ValueError):
                continue
            acc.observe(moment, duration, row.get("status", "ok"))
    return acc


def format_report(acc: TimelineAccumulator) -> str:
    lines = []
    lines.append("timeline summary")
    lines.append(f"  events observed: {sum(acc.counts_by_bucket.values())}")
    lines.append(f"  active span: {acc.span()}")
    lines.append(f"  p50 duration: {acc.percentile(0.50):.1f} ms")
    lines.append(f"  p95 duration: {acc.percentile(0.95):.1f} ms")
    lines.append(f"  p99 duration: {acc.percentile(0.99):.1f} ms")
    busiest, count = acc.busiest_bucket()
    if busiest is not None:
        lines.append(f"  busiest bucket: {busiest.isoformat()} ({count} events)")
    if acc.error_codes:
        lines.append("  error breakdown:")
        for code, seen in sorted(acc.error_codes.items()):
            lines.append(f"    {code}: {seen}")
    return "\n".join(lines)


def main(argv: list[str]) -> int:
    if len(argv) != 2:
        print("usage: timeline_stats.py EVENTS_CSV", file=sys.stderr)
        return 2
    accumulator = read_events(argv[1])
    print(format_report(accumulator))
    return 0


if __name__ == "__main__":
    raise SystemExit(main(sys.argv))
