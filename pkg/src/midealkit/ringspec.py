"""Textual ring specifications.

Grammar::

    spec  := zn:<n> | prod:<spec>,<spec>,... | mat:<k>:<spec> | table:<path>
           | quot:<spec>/<ideal> | null:<n> | sut:<k>:<spec>
           | ideal:<spec>/<ideal> | unit:<spec> | ( spec )

A ``prod`` list, a ``table`` path and the ideal after ``/`` all run to the end
of the enclosing group; use parentheses to nest them inside another list,
e.g. ``prod:(quot:zn:12/4),zn:9``.

Ideal syntax depends on the ring: for structured rings either one generator
per factor (``6`` or ``2,3``) or an exponent vector (``[1,0,2]``); for table
rings a comma list of element indices whose generated ideal is used.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InvalidIdealError, SpecParseError
from .lattice import generated_ideal
from .rings import (
    StructuredRing,
    TableRing,
    load_table,
    make_matrix_ring,
    make_product,
    make_quotient,
    make_unitization,
    make_zn,
    null_ring,
    product_tables,
    strictly_upper_triangular,
    structured_ideal_mask,
    subring_of_ideal,
    to_table,
)

_KEYWORDS = ("zn", "prod", "mat", "table", "quot", "null", "sut", "ideal", "unit")


@dataclass(frozen=True)
class Node:
    kind: str
    args: tuple
    text: str


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise SpecParseError(msg, self.text, self.pos)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self):
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def group_rest(self):
        """Raw text up to the end of the current parenthesis group."""
        depth, start = 0, self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            self.pos += 1
        return self.text[start:self.pos]

    def spec(self, stop=""):
        start = self.pos
        if self.peek() == "(":
            self.pos += 1
            node = self.spec()
            self.expect(")")
            return node
        m = re.compile(r"[a-z]+").match(self.text, self.pos)
        if not m or m.group() not in _KEYWORDS:
            self.error("expected one of " + ", ".join(_KEYWORDS))
        kind = m.group()
        self.pos = m.end()
        self.expect(":")
        if kind in ("zn", "null"):
            args = (self.integer(),)
        elif kind in ("mat", "sut"):
            k = self.integer()
            self.expect(":")
            args = (k, self.spec(stop))
        elif kind == "unit":
            args = (self.spec(stop),)
        elif kind == "table":
            path = self.group_rest()
            if not path:
                self.error("empty table path")
            args = (path,)
        elif kind == "prod":
            items = [self.spec(stop="/")]
            while self.peek() == ",":
                self.pos += 1
                items.append(self.spec(stop="/"))
            args = tuple(items)
        else:  # quot, ideal
            inner = self.spec(stop="/")
            self.expect("/")
            ideal = self.group_rest()
            if not ideal:
                self.error("empty ideal")
            args = (inner, ideal)
        return Node(kind, args, self.text[start:self.pos])


def parse(text: str) -> Node:
    p = _Parser(text.strip())
    node = p.spec()
    if p.pos != len(p.text):
        p.error("unexpected trailing text")
    return node


def build(text: str, cap=None):
    """Parse and construct a ring; structured when possible."""
    return _build(parse(text), cap)


def _as_table(r, cap):
    return to_table(r, cap) if isinstance(r, StructuredRing) else r


def _build(node: Node, cap):
    k, a = node.kind, node.args
    if k == "zn":
        return make_zn(a[0])
    if k == "null":
        r = null_ring(a[0])
        r.name = node.text
        return r
    if k == "prod":
        parts = [_build(x, cap) for x in a]
        if all(isinstance(x, StructuredRing) for x in parts):
            return make_product(parts)
        r = product_tables([_as_table(x, cap) for x in parts], cap)
        r.name = node.text
        return r
    if k == "mat":
        r = make_matrix_ring(_as_table(_build(a[1], cap), cap), a[0], cap)
        r.name = node.text
        return r
    if k == "sut":
        r = strictly_upper_triangular(_as_table(_build(a[1], cap), cap), a[0])
        r.name = node.text
        return r
    if k == "unit":
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            r = make_unitization(_as_table(_build(a[0], cap), cap), cap)
        r.name = node.text
        return r
    if k == "table":
        r = load_table(a[0])
        return r
    if k == "quot":
        base = _build(a[0], cap)
        q = make_quotient(base, parse_ideal(base, a[1]))
        r = q.ring
        if isinstance(r, StructuredRing):
            r = StructuredRing(r.components, origin=node.text, groups=r.groups)
        else:
            r.name = node.text
        return r
    if k == "ideal":
        base = _build(a[0], cap)
        key = parse_ideal(base, a[1])
        if isinstance(base, StructuredRing):
            key = structured_ideal_mask(base, key)
        r = subring_of_ideal(_as_table(base, cap), key)
        r.name = node.text
        return r
    raise SpecParseError(f"unhandled kind {k}", node.text, 0)  # pragma: no cover


def parse_ideal(ring, text: str):
    """Ideal key (exponent tuple or mask) named by ``text`` in ``ring``."""
    text = text.strip()
    try:
        if isinstance(ring, StructuredRing):
            if text.startswith("["):
                inner = text.strip("[]").strip()
                return ring.check_ideal([int(x) for x in inner.split(",")] if inner else [])
            return ring.ideal_from_generators([int(x) for x in text.split(",")])
        if isinstance(ring, TableRing):
            gens = [int(x) for x in text.split(",")] if text else []
            return generated_ideal(ring, gens)
    except ValueError as exc:
        if isinstance(exc, InvalidIdealError):
            raise
        raise InvalidIdealError(f"cannot read ideal {text!r}: {exc}") from None
    raise InvalidIdealError(f"unsupported ring {ring!r}")


def ring_name(ring) -> str:
    return ring.origin if isinstance(ring, StructuredRing) else ring.name
