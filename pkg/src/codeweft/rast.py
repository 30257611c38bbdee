"""Expression tree types for the supported subset of the R language.

Everything that is not a literal or a symbol is a call: operators,
assignment, parentheses, braces, subsetting, `function` definitions and
user infixes are all calls whose callee is the operator's symbol. This
mirrors R's own homogeneous language objects, so `a + b` is
``Call(SymbolRef("+"), [a, b])`` and `(x)` is ``Call(SymbolRef("("), [x])``.

Equality between expressions is structural: source spans never take part
in comparisons, and numeric literals compare by value rather than by the
spelling they had in the source.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


@dataclass(frozen=True)
class SrcSpan:
    """1-based, inclusive source region."""

    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self) -> None:
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError(f"backwards span: {self}")

    @staticmethod
    def cover(first: "SrcSpan", last: "SrcSpan") -> "SrcSpan":
        return SrcSpan(first.start_line, first.start_col, last.end_line, last.end_col)


_NOSPAN = None  # spans are optional on synthesised trees


@dataclass(frozen=True)
class NullLit:
    span: Optional[SrcSpan] = field(default=_NOSPAN, compare=False)


@dataclass(frozen=True)
class LogicalLit:
    """TRUE / FALSE / NA (value None means NA)."""

    value: Optional[bool]
    span: Optional[SrcSpan] = field(default=_NOSPAN, compare=False)


@dataclass(frozen=True, eq=False)
class NumLit:
    """Numeric literal keeping its source spelling for faithful deparse."""

    text: str
    value: float
    is_int: bool = False  # carried an L suffix

    span: Optional[SrcSpan] = field(default=_NOSPAN, compare=False)

    def __eq__(self, other: object) -> bool:
        # compare by value, not spelling; NaN literals compare equal
        if not isinstance(other, NumLit):
            return NotImplemented
        if self.is_int != other.is_int:
            return False
        if self.value != self.value and other.value != other.value:
            return True
        return self.value == other.value

    def __hash__(self) -> int:
        return hash((NumLit, self.is_int, str(self.value)))

    @staticmethod
    def of(value: Union[int, float], is_int: bool = False) -> "NumLit":
        # the text never carries the L suffix; deparse re-adds it from is_int
        if is_int:
            text = str(int(value))
        elif isinstance(value, int) or float(value).is_integer():
            text = str(int(value))
        else:
            text = repr(float(value))
        return NumLit(text=text, value=float(value), is_int=is_int)


@dataclass(frozen=True)
class StringLit:
    value: str
    span: Optional[SrcSpan] = field(default=_NOSPAN, compare=False)


@dataclass(frozen=True)
class SymbolRef:
    """A name. The empty name is R's missing argument (as in `x[, 1]`)."""

    name: str
    span: Optional[SrcSpan] = field(default=_NOSPAN, compare=False)


@dataclass(frozen=True)
class Arg:
    """One call argument, optionally named (`value = TRUE`)."""

    value: "Expr"
    name: Optional[str] = None


@dataclass(frozen=True)
class Call:
    callee: "Expr"
    args: tuple[Arg, ...] = ()
    span: Optional[SrcSpan] = field(default=_NOSPAN, compare=False)

    def callee_name(self) -> Optional[str]:
        return self.callee.name if isinstance(self.callee, SymbolRef) else None


Expr = Union[NullLit, LogicalLit, NumLit, StringLit, SymbolRef, Call]

LITERAL_KINDS = (NullLit, LogicalLit, NumLit, StringLit)


def is_call(expr: Expr) -> bool:
    return isinstance(expr, Call)


def is_literal(expr: Expr) -> bool:
    return isinstance(expr, LITERAL_KINDS)


def call(name: str, *args: Union[Expr, Arg], **named: Expr) -> Call:
    """Convenience constructor used by tests: call("+", a, b)."""
    built = [a if isinstance(a, Arg) else Arg(a) for a in args]
    built += [Arg(v, name=k) for k, v in named.items()]
    return Call(SymbolRef(name), tuple(built))


def sym(name: str) -> SymbolRef:
    return SymbolRef(name)


def num(value: Union[int, float], is_int: bool = False) -> NumLit:
    return NumLit.of(value, is_int)


def count_calls(expr: Expr) -> int:
    """Number of Call nodes in the tree (the unnest row count)."""
    if not isinstance(expr, Call):
        return 0
    n = 1 + count_calls(expr.callee)
    for arg in expr.args:
        n += count_calls(arg.value)
    return n


def strip_parens(expr: Expr) -> Expr:
    """Drop `(` wrapper calls everywhere; used by round-trip property tests."""
    if not isinstance(expr, Call):
        return expr
    if expr.callee_name() == "(" and len(expr.args) == 1 and expr.args[0].name is None:
        return strip_parens(expr.args[0].value)
    return Call(
        strip_parens(expr.callee),
        tuple(Arg(strip_parens(a.value), a.name) for a in expr.args),
        expr.span,
    )


def to_json(expr: Expr) -> dict:
    """Plain-dict dump of a tree (spans omitted); the golden-file schema."""
    if isinstance(expr, NullLit):
        return {"kind": "null"}
    if isinstance(expr, LogicalLit):
        return {"kind": "logical", "value": expr.value}
    if isinstance(expr, NumLit):
        out: dict = {"kind": "num", "text": expr.text, "value": expr.value}
        if expr.is_int:
            out["int"] = True
        return out
    if isinstance(expr, StringLit):
        return {"kind": "string", "value": expr.value}
    if isinstance(expr, SymbolRef):
        return {"kind": "symbol", "name": expr.name}
    if isinstance(expr, Call):
        args = []
        for a in expr.args:
            item: dict = {"value": to_json(a.value)}
            if a.name is not None:
                item["name"] = a.name
            args.append(item)
        return {"kind": "call", "callee": to_json(expr.callee), "args": args}
    raise TypeError(f"not an Expr: {expr!r}")


def from_json(data: dict) -> Expr:
    kind = data["kind"]
    if kind == "null":
        return NullLit()
    if kind == "logical":
        return LogicalLit(data["value"])
    if kind == "num":
        return NumLit(text=data["text"], value=data["value"], is_int=data.get("int", False))
    if kind == "string":
        return StringLit(data["value"])
    if kind == "symbol":
        return SymbolRef(data["name"])
    if kind == "call":
        args = tuple(Arg(from_json(a["value"]), a.get("name")) for a in data["args"])
        return Call(from_json(data["callee"]), args)
    raise ValueError(f"unknown node kind {kind!r}")
