"""Function-classification lexicons and stop-function lists.

The bundled lexicon ships in `data/classifications.csv` with the closed
nine-category scheme; it is a partial starter table, extensible by
pointing CODEWEFT_LEXICON_PATH at a directory with replacement
`classifications.csv` / `stopfuncs.txt` files of the same shape.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import (
    SchemaError,
    ScoreOutOfRange,
    UnknownCategory,
    UnknownLexicon,
)
from .unnest import FuncToken

CATEGORIES = frozenset(
    [
        "setup",
        "exploratory",
        "data cleaning",
        "modeling",
        "evaluation",
        "visualization",
        "communication",
        "import",
        "export",
    ]
)

LEXICON_NAMES = frozenset(["crowdsource", "leeklab"])

_HEADER = ["func", "classification", "lexicon", "score"]

# published tables are rounded, so group sums may be slightly off 1
SCORE_SUM_TOLERANCE = 0.005

ENV_LEXICON_PATH = "CODEWEFT_LEXICON_PATH"


@dataclass(frozen=True)
class ClassificationEntry:
    func: str
    classification: str
    lexicon: str
    score: float


@dataclass(frozen=True)
class StopFuncList:
    funcs: frozenset[str]

    def __contains__(self, func: str) -> bool:
        return func in self.funcs


def _data_dir() -> Path:
    override = os.environ.get(ENV_LEXICON_PATH)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def default_lexicon_path() -> Path:
    return _data_dir() / "classifications.csv"


def default_stopfuncs_path() -> Path:
    return _data_dir() / "stopfuncs.txt"


def load_classifications(
    source: Optional[str | Path] = None,
    which: Optional[str] = None,
    include_duplicates: bool = True,
) -> list[ClassificationEntry]:
    """Load and validate a lexicon file.

    With `which`, only that lexicon's entries are returned. With
    include_duplicates=False, each (func, lexicon) keeps only its
    highest-scoring classification (ties broken by category name);
    downstream tabular output then omits the score column.
    """
    path = Path(source) if source is not None else default_lexicon_path()
    if which is not None and which not in LEXICON_NAMES:
        raise UnknownLexicon(f"unknown lexicon {which!r}; expected one of {sorted(LEXICON_NAMES)}")

    entries: list[ClassificationEntry] = []
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read lexicon file {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != _HEADER:
            raise SchemaError(f"bad lexicon header {header!r}; expected {_HEADER!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise SchemaError(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
            func, classification, lexicon, score_text = row
            if not func:
                raise SchemaError(f"{path}:{lineno}: empty func")
            if classification not in CATEGORIES:
                raise UnknownCategory(f"{path}:{lineno}: unknown category {classification!r}")
            if lexicon not in LEXICON_NAMES:
                raise UnknownLexicon(f"{path}:{lineno}: unknown lexicon {lexicon!r}")
            try:
                score = float(score_text)
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: bad score {score_text!r}") from exc
            if not 0 < score <= 1:
                raise ScoreOutOfRange(f"{path}:{lineno}: score {score} outside (0, 1]")
            entries.append(ClassificationEntry(func, classification, lexicon, score))

    _check_unique(entries)
    _check_normalization(entries)

    if which is not None:
        entries = [e for e in entries if e.lexicon == which]
    if not include_duplicates:
        entries = best_classifications(entries)
    return entries


def _check_unique(entries: Sequence[ClassificationEntry]) -> None:
    seen = set()
    for e in entries:
        key = (e.func, e.classification, e.lexicon)
        if key in seen:
            raise SchemaError(f"duplicate lexicon row {key!r}")
        seen.add(key)


def _check_normalization(entries: Sequence[ClassificationEntry]) -> None:
    sums: dict[tuple[str, str], float] = {}
    for e in entries:
        key = (e.func, e.lexicon)
        sums[key] = sums.get(key, 0.0) + e.score
    for (func, lexicon), total in sums.items():
        if abs(total - 1.0) > SCORE_SUM_TOLERANCE:
            raise SchemaError(
                f"scores for ({func!r}, {lexicon}) sum to {total:.4f}, not 1"
            )


def best_classifications(
    entries: Iterable[ClassificationEntry],
) -> list[ClassificationEntry]:
    """Highest-scoring entry per (func, lexicon); score ties break by name."""
    best: dict[tuple[str, str], ClassificationEntry] = {}
    for e in entries:
        key = (e.func, e.lexicon)
        cur = best.get(key)
        if (
            cur is None
            or e.score > cur.score
            or (e.score == cur.score and e.classification < cur.classification)
        ):
            best[key] = e
    return list(best.values())


def classify(
    tokens: Sequence[FuncToken], entries: Sequence[ClassificationEntry]
) -> list[tuple[FuncToken, ClassificationEntry]]:
    """Inner join of tokens with lexicon entries on func.

    Tokens without an entry are dropped; a token matching k entries yields
    k rows. Token order is preserved; a token's matches are ordered by
    lexicon name, then descending score.
    """
    by_func: dict[str, list[ClassificationEntry]] = {}
    for e in entries:
        by_func.setdefault(e.func, []).append(e)
    for matches in by_func.values():
        matches.sort(key=lambda e: (e.lexicon, -e.score, e.classification))
    out: list[tuple[FuncToken, ClassificationEntry]] = []
    for token in tokens:
        for entry in by_func.get(token.func, ()):
            out.append((token, entry))
    return out


def load_stopfuncs(source: Optional[str | Path] = None) -> StopFuncList:
    """Newline-delimited function names; `#` starts a comment."""
    path = Path(source) if source is not None else default_stopfuncs_path()
    funcs = set()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read stopfuncs file {path}: {exc}") from exc
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#") or not line:
            continue
        funcs.add(line)
    if not funcs:
        raise SchemaError(f"stopfuncs file {path} is empty")
    return StopFuncList(frozenset(funcs))


def remove_stopfuncs(
    tokens: Sequence[FuncToken], stops: StopFuncList
) -> list[FuncToken]:
    """Anti-join: tokens whose func is not a stop function, order kept."""
    return [t for t in tokens if t.func not in stops]
