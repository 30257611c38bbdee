#!/usr/bin/env python3
"""Construct the corpus fixture behind the class-percentage table test.

Targets (percentage points, 2 dp) for the per-class average of per-unit
shares. Work in hundredths of a percent ("cents", denominator 10000): a
unit holds 10000 rows and class c contributes an integer cents count, so
its share in that unit is exact.

Class c appears in k_c units; its average share is exact when its cents
across those units sum to k_c * cents_c. Per unit the counts must sum to
10000, so sum(k_c * cents_c) = 10000 * U. The smallest solution is U = 3
with a unique k vector. Construction: every class takes exactly cents_c
in each of its units, except one slack class present in all units that
absorbs each unit's remainder; its average is still exact because its
total is fixed by the k vector.

Run from the repository root: python3 tools/gen_percent_fixture.py
"""

from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "percent_fixture.json"

TARGETS = {
    "data cleaning": 3640,
    "visualization": 2317,
    "exploratory": 2132,
    "setup": 1887,
    "modeling": 1769,
    "import": 858,
    "communication": 514,
    "evaluation": 362,
    "export": 82,
}

CLASSES = list(TARGETS)
CENTS = [TARGETS[c] for c in CLASSES]
UNIT_SUM = 10000


def multiplicities(units: int) -> list[list[int]]:
    """All k vectors with 1 <= k_c <= units and sum(k_c * cents_c) filling
    the units exactly."""
    total = UNIT_SUM * units
    out: list[list[int]] = []

    def rec(i: int, acc: int, mult: list[int]) -> None:
        if i == len(CENTS):
            if acc == total:
                out.append(mult[:])
            return
        rest_min = sum(CENTS[i:])
        if acc + rest_min > total or acc + units * rest_min < total:
            return
        for m in range(1, units + 1):
            mult.append(m)
            rec(i + 1, acc + m * CENTS[i], mult)
            mult.pop()

    rec(0, 0, [])
    return out


def construct(mult: list[int], units: int) -> list[dict[str, int]] | None:
    """Count matrix: rows sum to UNIT_SUM, column c sums to k_c * cents_c,
    exactly k_c positive entries per column."""
    for slack in range(len(CLASSES)):
        if mult[slack] != units:
            continue
        rows: list[dict[str, int]] = [dict() for _ in range(units)]
        loads = [0] * units
        # spread the fixed-share classes over the least-loaded units
        order = sorted(
            (i for i in range(len(CLASSES)) if i != slack),
            key=lambda i: -CENTS[i],
        )
        for i in order:
            for u in sorted(range(units), key=lambda u: loads[u])[: mult[i]]:
                rows[u][CLASSES[i]] = CENTS[i]
                loads[u] += CENTS[i]
        if all(load < UNIT_SUM for load in loads):
            for u in range(units):
                rows[u][CLASSES[slack]] = UNIT_SUM - loads[u]
            total = sum(r[CLASSES[slack]] for r in rows)
            assert total == units * CENTS[slack]
            return rows
    return None


def solve() -> tuple[int, list[dict[str, int]]]:
    for units in range(2, 9):
        for mult in multiplicities(units):
            rows = construct(mult, units)
            if rows is not None:
                return units, rows
    raise SystemExit("no fixture found")


def main() -> None:
    units, rows = solve()
    table = []
    for u, counts in enumerate(rows, start=1):
        assert sum(counts.values()) == UNIT_SUM
        table.append({"unit": f"u{u}", "counts": counts})
    # independent check of the statistic the fixture encodes
    for i, cls in enumerate(CLASSES):
        shares = [r["counts"][cls] for r in table if cls in r["counts"]]
        avg = sum(s / UNIT_SUM for s in shares) / len(shares)
        assert abs(avg * 100 - TARGETS[cls] / 100) < 1e-9, (cls, avg)
    expected = [
        {"classification": c, "average_percent": TARGETS[c] / 100} for c in CLASSES
    ]
    expected.sort(key=lambda r: -r["average_percent"])
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(
        json.dumps({"units": table, "expected": expected}, indent=1) + "\n",
        encoding="utf-8",
    )
    print(f"wrote {units}-unit fixture to {OUT}")
    for entry in table:
        print(" ", entry["unit"], entry["counts"])


if __name__ == "__main__":
    main()
