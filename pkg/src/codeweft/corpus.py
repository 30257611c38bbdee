"""Ingest R source from files, raw HTTP(S) URLs and strings into CallRecords."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import requests

from . import __version__
from .errors import HttpError, IoError, SourceError
from .parser import parse_program
from .rast import Expr

STRING_SOURCE = "<string>"

USER_AGENT = f"codeweft/{__version__}"

# placeholder columns kept for shape compatibility with evaluated logs;
# evaluation is out of scope, so the cells stay empty
RECITAL_PLACEHOLDERS = ("value", "error", "output", "warnings", "messages")


@dataclass(frozen=True)
class CallRecord:
    """One top-level expression with provenance."""

    file: str
    expr: Expr
    line: int  # 1-based start line in the original source


@dataclass
class ReadResult:
    """Records plus the side channel of per-source errors."""

    records: list[CallRecord] = field(default_factory=list)
    errors: list[Exception] = field(default_factory=list)

    def extend(self, other: "ReadResult") -> None:
        self.records.extend(other.records)
        self.errors.extend(other.errors)


def _is_url(source: str) -> bool:
    return source.startswith(("http://", "https://"))


def _fetch_url(url: str, retries: int = 0, backoff: float = 0.5) -> str:
    attempt = 0
    while True:
        try:
            resp = requests.get(url, headers={"User-Agent": USER_AGENT}, timeout=30)
        except requests.RequestException as exc:
            if attempt < retries:
                time.sleep(backoff * (2**attempt))
                attempt += 1
                continue
            raise HttpError(url, None, str(exc)) from exc
        if resp.status_code == 200:
            resp.encoding = "utf-8"
            return resp.text
        if attempt < retries:
            time.sleep(backoff * (2**attempt))
            attempt += 1
            continue
        raise HttpError(url, resp.status_code)


def _read_local(path: str) -> str:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise IoError(path, exc.strerror or str(exc)) from exc
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IoError(path, f"not valid UTF-8: {exc}") from exc


def parse_source_text(source_id: str, text: str) -> ReadResult:
    """Parse already-fetched text into records under the given source id."""
    result = ReadResult()
    program = parse_program(text)
    for expr, span in program.exprs:
        result.records.append(CallRecord(file=source_id, expr=expr, line=span.start_line))
    for err in program.errors:
        result.errors.append(_tag_source(err, source_id))
    return result


def _tag_source(err: SourceError, source_id: str) -> SourceError:
    err.args = (f"{source_id}: {err.args[0]}",) + err.args[1:]
    return err


def read_rfiles(sources: Sequence[str], retries: int = 0) -> ReadResult:
    """Read multiple .R files or links to .R files, in the given order.

    An error in one source never affects the records of another.
    """
    result = ReadResult()
    for source in sources:
        try:
            text = _fetch_url(source, retries) if _is_url(source) else _read_local(source)
        except (IoError, HttpError) as exc:
            result.errors.append(exc)
            continue
        result.extend(parse_source_text(source, text))
    return result


def recital(text: str) -> ReadResult:
    """Records for each top-level expression of a code string.

    Tabular output of these records carries empty value/error/output/
    warnings/messages cells (see RECITAL_PLACEHOLDERS).
    """
    return parse_source_text(STRING_SOURCE, text)


def read_manifest(path: str) -> list[str]:
    """Newline-delimited sources; `#` starts a comment, blanks ignored."""
    sources = []
    for raw in _read_local(path).splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            sources.append(line)
    return sources


def fetch_manifest(
    manifest: str, concurrency: int = 4, retries: int = 2
) -> ReadResult:
    """read_rfiles over a manifest's sources, fetching URLs concurrently.

    Output ordering follows the manifest regardless of download timing;
    each URL is retried (exponential backoff) before reporting HttpError.
    """
    if concurrency < 1:
        raise ValueError("concurrency must be positive")
    sources = read_manifest(manifest)

    def load(source: str) -> ReadResult:
        try:
            text = _fetch_url(source, retries) if _is_url(source) else _read_local(source)
        except (IoError, HttpError) as exc:
            failed = ReadResult()
            failed.errors.append(exc)
            return failed
        return parse_source_text(source, text)

    result = ReadResult()
    with ThreadPoolExecutor(max_workers=concurrency) as pool:
        for partial in pool.map(load, sources):
            result.extend(partial)
    return result


def examples_dir() -> Path:
    """Directory holding the bundled sample .R scripts."""
    return Path(__file__).parent / "data" / "examples"


def example_path(name: Optional[str] = None):
    """Path to a bundled sample script, or the list of available names."""
    base = examples_dir()
    if name is None:
        return sorted(p.name for p in base.glob("*.R"))
    path = base / name
    if not path.exists():
        raise IoError(name, "no such bundled example")
    return path
