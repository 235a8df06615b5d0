"""Goedel coding of terms, formulas and sentence sequences.

A code is the big-endian integer value of a byte stream. The first byte is a
sort marker, which is never zero, so the integer determines the stream
(including its length) uniquely.

Layout::

    term code      = 0xF1 body(t)
    formula code   = 0xF2 body(phi)
    sequence code  = 0xF3 varint(n) { varint(len(e_i)) e_i }  for i < n

where ``e_i`` is the complete byte stream of the i-th formula code (starting
with its own 0xF2 marker) and ``body`` is the prefix (Polish) serialization
of the tree, one tag byte per node::

    0x01 Zero        0x05 Var  varint(index)    0x09 Or
    0x02 Succ        0x06 Eq                    0x0A Forall varint(var)
    0x03 Add         0x07 Not                   0x0B Exists varint(var)
    0x04 Mul         0x08 And                   0x0C PrProp

``varint`` is unsigned LEB128: seven bits per byte, least significant group
first, high bit set on every byte but the last. ``PrProp`` is followed by
the body of its argument formula.

A proper subformula's stream is strictly shorter than its parent's and
starts with the same marker, so its code is strictly smaller.
"""

from __future__ import annotations

from collections.abc import Iterable

from ._node import Node
from .syntax import (
    Add, And, Eq, Exists, Forall, Formula, Mul, Not, Or, PrProp, Succ, Term, Var, Zero,
)

__all__ = [
    "DecodeError", "encode_term", "decode_term", "encode_formula", "decode_formula",
    "encode_seq", "decode_seq", "seq_length", "seq_get",
]

TERM_SORT = 0xF1
FORMULA_SORT = 0xF2
SEQ_SORT = 0xF3

_TAGS: dict[type, int] = {
    Zero: 0x01, Succ: 0x02, Add: 0x03, Mul: 0x04, Var: 0x05, Eq: 0x06,
    Not: 0x07, And: 0x08, Or: 0x09, Forall: 0x0A, Exists: 0x0B, PrProp: 0x0C,
}
_CLASSES = {tag: cls for cls, tag in _TAGS.items()}
_ARITY = {Zero: 0, Succ: 1, Add: 2, Mul: 2, Var: 0, Eq: 2, Not: 1, And: 2, Or: 2,
          Forall: 1, Exists: 1, PrProp: 1}
_WITH_INDEX = (Var, Forall, Exists)


class DecodeError(ValueError):
    """Raised when a number is not a well-formed code of the requested sort."""


def _varint(n: int, out: bytearray) -> None:
    while True:
        low = n & 0x7F
        n >>= 7
        if n:
            out.append(low | 0x80)
        else:
            out.append(low)
            return


def _read_varint(data: bytes, pos: int) -> tuple[int, int]:
    value = 0
    shift = 0
    while True:
        if pos >= len(data):
            raise DecodeError("truncated varint")
        b = data[pos]
        pos += 1
        value |= (b & 0x7F) << shift
        shift += 7
        if not b & 0x80:
            return value, pos


def _body(root: Node, out: bytearray) -> None:
    stack = [root]
    while stack:
        node = stack.pop()
        cls = type(node)
        out.append(_TAGS[cls])
        if cls in _WITH_INDEX:
            _varint(node.args[0], out)
        stack.extend(reversed(node.children()))


def _to_int(data: bytes | bytearray) -> int:
    return int.from_bytes(data, "big")


def _to_bytes(code: int) -> bytes:
    if isinstance(code, bool) or not isinstance(code, int) or code <= 0:
        raise DecodeError(f"not a code: {code!r}")
    return code.to_bytes((code.bit_length() + 7) // 8, "big")


def _stream(sort: int, node: Node) -> bytearray:
    out = bytearray([sort])
    _body(node, out)
    return out


def encode_term(t: Term) -> int:
    if not isinstance(t, Term):
        raise TypeError(f"expected a Term, got {type(t).__name__}")
    return _to_int(_stream(TERM_SORT, t))


def encode_formula(phi: Formula) -> int:
    if not isinstance(phi, Formula):
        raise TypeError(f"expected a Formula, got {type(phi).__name__}")
    return _to_int(_stream(FORMULA_SORT, phi))


def _decode_body(data: bytes, pos: int, end: int) -> Node:
    # read the prefix stream into (cls, index) tokens, then build right to left
    tokens: list[tuple[type, int | None]] = []
    while pos < end:
        cls = _CLASSES.get(data[pos])
        if cls is None:
            raise DecodeError(f"unknown tag 0x{data[pos]:02x} at byte {pos}")
        pos += 1
        index = None
        if cls in _WITH_INDEX:
            index, pos = _read_varint(data, pos)
            if pos > end:
                raise DecodeError("varint runs past the end of the stream")
        tokens.append((cls, index))
    stack: list[Node] = []
    for cls, index in reversed(tokens):
        arity = _ARITY[cls]
        if len(stack) < arity:
            raise DecodeError(f"{cls.__name__} is missing arguments")
        args = [stack.pop() for _ in range(arity)]
        if index is not None:
            args.insert(0, index)
        try:
            stack.append(cls(*args))
        except TypeError as exc:
            raise DecodeError(f"ill-sorted {cls.__name__}: {exc}") from None
    if len(stack) != 1:
        raise DecodeError(f"stream holds {len(stack)} trees, expected 1")
    return stack[0]


def _decode(code: int, sort: int, want: type, name: str) -> Node:
    data = _to_bytes(code)
    if data[0] != sort:
        raise DecodeError(f"sort mismatch: code has marker 0x{data[0]:02x}, not a {name} code")
    node = _decode_body(data, 1, len(data))
    if not isinstance(node, want):
        raise DecodeError(f"sort mismatch: decoded a {type(node).__name__}, not a {name}")
    return node


def decode_term(code: int) -> Term:
    return _decode(code, TERM_SORT, Term, "term")


def decode_formula(code: int) -> Formula:
    return _decode(code, FORMULA_SORT, Formula, "formula")


def encode_seq(phis: Iterable[Formula]) -> int:
    items = list(phis)
    out = bytearray([SEQ_SORT])
    _varint(len(items), out)
    for phi in items:
        if not isinstance(phi, Formula):
            raise TypeError(f"expected a Formula, got {type(phi).__name__}")
        elem = _stream(FORMULA_SORT, phi)
        _varint(len(elem), out)
        out += elem
    return _to_int(out)


def _seq_spans(code: int) -> tuple[bytes, list[tuple[int, int]]]:
    data = _to_bytes(code)
    if data[0] != SEQ_SORT:
        raise DecodeError(f"sort mismatch: code has marker 0x{data[0]:02x}, not a sequence code")
    n, pos = _read_varint(data, 1)
    spans = []
    for _ in range(n):
        size, pos = _read_varint(data, pos)
        if pos + size > len(data):
            raise DecodeError("sequence element runs past the end of the stream")
        spans.append((pos, pos + size))
        pos += size
    if pos != len(data):
        raise DecodeError("trailing bytes after the last sequence element")
    return data, spans


def seq_length(code: int) -> int:
    return len(_seq_spans(code)[1])


def seq_get(code: int, i: int) -> Formula:
    data, spans = _seq_spans(code)
    if not 0 <= i < len(spans):
        raise IndexError(f"sequence index {i} out of range for length {len(spans)}")
    start, end = spans[i]
    return decode_formula(_to_int(data[start:end]))


def decode_seq(code: int) -> list[Formula]:
    data, spans = _seq_spans(code)
    return [decode_formula(_to_int(data[s:e])) for s, e in spans]
