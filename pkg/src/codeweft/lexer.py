"""Tokenizer for the supported R subset.

Comments are dropped. Newlines are emitted as tokens only where they can
terminate an expression: inside `(`, `[` and `[[` groups they are
swallowed, inside `{` blocks they separate statements, mirroring the R
grammar's newline handling.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidCharacter, UnterminatedBacktick, UnterminatedString
from .rast import SrcSpan

# token kinds
NUM = "num"
STRING = "string"
NAME = "name"
SPECIAL = "special"  # %...% user/builtin infix, includes %% and %/%
OP = "op"
KEYWORD = "keyword"
NEWLINE = "newline"
SEMI = "semi"
EOF = "eof"

KEYWORDS = frozenset(
    ["if", "else", "for", "while", "repeat", "function", "break", "next", "in"]
)

# longest match first
_OPERATORS = [
    ":::", "<<-", "->>",
    "::", "<-", "->", "<=", ">=", "==", "!=", "&&", "||", "[[",
    "+", "-", "*", "/", "^", "<", ">", "!", "&", "|", "~", "?", ":",
    "=", "$", "@", "(", ")", "[", "]", "{", "}", ",",
]

_NUM_RE = re.compile(
    r"""
    0[xX][0-9a-fA-F]+L?
    | (?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?L?
    """,
    re.VERBOSE,
)

_NAME_RE = re.compile(r"[a-zA-Z.][a-zA-Z0-9._]*")

_ESCAPES = {
    "n": "\n", "t": "\t", "r": "\r", "a": "\a", "b": "\b",
    "f": "\f", "v": "\v", "0": "\0", "\\": "\\", '"': '"', "'": "'", "`": "`",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SrcSpan
    value: object = field(default=None, compare=False)  # decoded string / number
    quoted: bool = False  # backtick-quoted name


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def advance(self, n: int = 1) -> str:
        chunk = self.text[self.pos : self.pos + n]
        for ch in chunk:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return chunk

    def here(self) -> tuple[int, int]:
        return self.line, self.col

    def span_from(self, start: tuple[int, int]) -> SrcSpan:
        # end position is the last consumed character
        end_line, end_col = self.line, self.col - 1
        if (end_line, end_col) < start:  # consumed a line break; clamp
            end_line, end_col = start
        return SrcSpan(start[0], start[1], end_line, end_col)


def _scan_string(sc: _Scanner) -> Token:
    start = sc.here()
    start_pos = sc.pos
    quote = sc.advance()
    out: list[str] = []
    while True:
        if sc.eof():
            raise UnterminatedString("unterminated string literal", sc.span_from(start))
        ch = sc.advance()
        if ch == quote:
            break
        if ch == "\\":
            if sc.eof():
                raise UnterminatedString("unterminated string literal", sc.span_from(start))
            esc = sc.advance()
            if esc in _ESCAPES:
                out.append(_ESCAPES[esc])
            elif esc in "xuU":
                width = {"x": 2, "u": 4, "U": 8}[esc]
                digits = ""
                while len(digits) < width and sc.peek() in "0123456789abcdefABCDEF":
                    digits += sc.advance()
                if not digits:
                    raise InvalidCharacter(
                        f"invalid escape \\{esc}", sc.span_from(start)
                    )
                out.append(chr(int(digits, 16)))
            else:
                raise InvalidCharacter(f"unknown escape \\{esc}", sc.span_from(start))
        else:
            out.append(ch)
    span = sc.span_from(start)
    return Token(STRING, sc.text[start_pos : sc.pos], span, value="".join(out))


def _scan_backtick(sc: _Scanner) -> Token:
    start = sc.here()
    sc.advance()  # `
    out: list[str] = []
    while True:
        if sc.eof() or sc.peek() == "\n":
            raise UnterminatedBacktick("unterminated backtick name", sc.span_from(start))
        ch = sc.advance()
        if ch == "`":
            break
        out.append(ch)
    span = sc.span_from(start)
    return Token(NAME, "".join(out), span, quoted=True)


def tokenize(text: str, keep_newlines: bool = False) -> list[Token]:
    """Lex `text` into tokens.

    With keep_newlines the stream includes expression-terminating NEWLINE
    tokens (those outside `(`/`[` groups); `tokenize` callers who only want
    the lexical content leave it off.
    """
    sc = _Scanner(text)
    tokens: list[Token] = []
    # delimiter stack entries: True = newlines significant ({ and top level)
    stack: list[bool] = []

    def newlines_significant() -> bool:
        return stack[-1] if stack else True

    while not sc.eof():
        ch = sc.peek()
        if ch == "#":
            while not sc.eof() and sc.peek() != "\n":
                sc.advance()
            continue
        if ch == "\n":
            start = sc.here()
            sc.advance()
            if newlines_significant():
                tokens.append(Token(NEWLINE, "\n", sc.span_from(start)))
            continue
        if ch in " \t\r\f":
            sc.advance()
            continue
        if ch == ";":
            start = sc.here()
            sc.advance()
            tokens.append(Token(SEMI, ";", sc.span_from(start)))
            continue
        if ch in "\"'":
            tokens.append(_scan_string(sc))
            continue
        if ch == "`":
            tokens.append(_scan_backtick(sc))
            continue
        if ch == "%":
            start = sc.here()
            sc.advance()
            body = ""
            while not sc.eof() and sc.peek() not in "%\n":
                body += sc.advance()
            if sc.eof() or sc.peek() == "\n":
                raise InvalidCharacter("unterminated %..% operator", sc.span_from(start))
            sc.advance()  # closing %
            tokens.append(Token(SPECIAL, f"%{body}%", sc.span_from(start)))
            continue
        if ch.isdigit() or (ch == "." and sc.peek(1).isdigit()):
            start = sc.here()
            m = _NUM_RE.match(sc.text, sc.pos)
            assert m is not None
            raw = m.group(0)
            sc.advance(len(raw))
            is_int = raw.endswith("L")
            body = raw[:-1] if is_int else raw
            value = float(int(body, 16)) if body.lower().startswith("0x") else float(body)
            tokens.append(
                Token(NUM, raw, sc.span_from(start), value=(value, is_int))
            )
            continue
        m = _NAME_RE.match(sc.text, sc.pos)
        if m:
            start = sc.here()
            raw = m.group(0)
            sc.advance(len(raw))
            kind = KEYWORD if raw in KEYWORDS else NAME
            tokens.append(Token(kind, raw, sc.span_from(start)))
            continue
        matched = False
        for op in _OPERATORS:
            if sc.text.startswith(op, sc.pos):
                start = sc.here()
                sc.advance(len(op))
                tokens.append(Token(OP, op, sc.span_from(start)))
                if op in ("(", "["):
                    stack.append(False)
                elif op == "[[":
                    stack.append(False)
                    stack.append(False)  # one entry per expected ]
                elif op == "{":
                    stack.append(True)
                elif op in (")", "]", "}") and stack:
                    stack.pop()
                matched = True
                break
        if matched:
            continue
        start = sc.here()
        sc.advance()
        raise InvalidCharacter(f"invalid character {ch!r}", sc.span_from(start))

    if not keep_newlines:
        tokens = [t for t in tokens if t.kind != NEWLINE]
    return tokens
