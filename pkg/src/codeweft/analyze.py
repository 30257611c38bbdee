"""Corpus statistics: grouped counts, per-unit class percentages, top-N."""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import EmptyInput, UnknownColumn

Row = Mapping[str, object]


def _check_columns(rows: Sequence[Row], columns: Sequence[str]) -> None:
    if not rows:
        return
    missing = [c for c in columns if c not in rows[0]]
    if missing:
        raise UnknownColumn(f"unknown column(s): {', '.join(missing)}")


def count_funcs(
    rows: Sequence[Row], keys: Sequence[str], sort: bool = False
) -> list[dict]:
    """One output row per distinct key tuple with its row count `n`.

    With sort=True, rows are ordered by n descending, ties by key tuple
    ascending; otherwise by first appearance.
    """
    if not keys or len(set(keys)) != len(keys):
        raise UnknownColumn("grouping keys must be non-empty and unique")
    _check_columns(rows, keys)
    counts: dict[tuple, int] = {}
    for row in rows:
        key = tuple(row[k] for k in keys)
        counts[key] = counts.get(key, 0) + 1
    items = list(counts.items())
    if sort:
        items.sort(key=lambda kv: (-kv[1], kv[0]))
    return [dict(zip(keys, key)) | {"n": n} for key, n in items]


def class_percentages(
    rows: Sequence[Row], unit: str, class_col: str = "classification"
) -> list[dict]:
    """Average, across units, of each class's share of the unit's rows.

    Per unit, each class's share is n / (unit row count); the average for
    a class is taken over the units in which it appears. Output is
    percentage points, sorted descending.
    """
    if not rows:
        raise EmptyInput("no rows to summarise")
    _check_columns(rows, [unit, class_col])
    per_unit: dict[object, dict[object, int]] = {}
    for row in rows:
        unit_counts = per_unit.setdefault(row[unit], {})
        cls = row[class_col]
        unit_counts[cls] = unit_counts.get(cls, 0) + 1
    shares: dict[object, list[float]] = {}
    for unit_counts in per_unit.values():
        total = sum(unit_counts.values())
        for cls, n in unit_counts.items():
            shares.setdefault(cls, []).append(n / total)
    out = [
        {class_col: cls, "average_percent": 100.0 * sum(vals) / len(vals)}
        for cls, vals in shares.items()
    ]
    out.sort(key=lambda r: (-r["average_percent"], str(r[class_col])))
    return out


def top_n_by_group(
    count_table: Sequence[Row], group_col: str, n: int
) -> list[dict]:
    """Per group, the n rows with the highest `n` count.

    Rows tying the nth-largest count are all retained. Input order is
    preserved within the output.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_columns(count_table, [group_col, "n"])
    by_group: dict[object, list[int]] = {}
    for row in count_table:
        by_group.setdefault(row[group_col], []).append(int(row["n"]))  # type: ignore[arg-type]
    cutoffs = {
        group: sorted(counts, reverse=True)[min(n, len(counts)) - 1]
        for group, counts in by_group.items()
    }
    return [dict(row) for row in count_table if int(row["n"]) >= cutoffs[row[group_col]]]  # type: ignore[arg-type]
