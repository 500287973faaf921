"""Set expressions: an LL(1) grammar over ring literals and built-in sets.

::

    expr  := diff  ( '|'  diff  )*
    diff  := meet  ( '\\' meet  )*
    meet  := unary ( '&'  unary )*
    unary := '~' unary | atom
    atom  := '(' expr ')' | ring | NAME
    ring  := 'U' ( '[' RAT ',' RAT ')' )*  |  'N' '{' [ NAT ( ',' NAT )* ] '}'
    NAME  := geometric-pack | evens | odds | half-line | omega | empty

``|`` binds loosest and ``~`` tightest; binary operators associate to the
left.  Intersection, difference and complement are partial on δ_μ names,
so their nodes carry a promise tag and an ordinal (1-based, in order of
the operator's position in the text) that ``--promise tag@k`` can target.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .names import from_ring, from_ring_tilde, name_of_omega, name_of_scheme
from .ring import LEBESGUE, ParseError, RingSet, parse_intervals, parse_naturals
from .schemes import BUILTINS, builtin
from .mu_ops import COCO, DIFF, MEET, complement, difference, intersection, union
from .tilde_ops import (
    reduce_mu_to_tilde,
    tilde_complement,
    tilde_difference,
    tilde_intersection,
    tilde_union,
)
from .budget import DEFAULT_STEPS

ALL = "all"
TAG_OF = {"&": MEET, "\\": DIFF, "~": COCO}


class PromiseMissing(ValueError):
    def __init__(self, node: "Node"):
        super().__init__(
            f"operator {node.op!r} #{node.ordinal} at position {node.pos} needs "
            f"--promise {node.tag} (or {node.tag}@{node.ordinal}, or all)")
        self.node = node


@dataclass
class Node:
    op: str                      # 'ring', 'name', '|', '&', '\\', '~'
    pos: int
    args: list = field(default_factory=list)
    value: object = None         # RingSet or builtin name
    ordinal: int = 0             # partial nodes only

    @property
    def tag(self) -> str | None:
        return TAG_OF.get(self.op)

    def __str__(self):
        if self.op == "ring":
            return str(self.value)
        if self.op == "name":
            return self.value
        if self.op == "~":
            return f"~{self.args[0]}"
        return f"({self.args[0]} {self.op} {self.args[1]})"


_NAME_RE = re.compile(r"[a-z][a-z-]*")


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.pos = 0
        self.partials: list[Node] = []

    def ws(self):
        while self.pos < len(self.s) and self.s[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.ws()
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def error(self, msg, pos=None):
        raise ParseError(msg, self.s, self.pos if pos is None else pos)

    def parse(self) -> Node:
        node = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        # ordinals follow operator positions in the text
        for k, nd in enumerate(sorted(self.partials, key=lambda x: x.pos), start=1):
            nd.ordinal = k
        return node

    def _binary(self, sym, sub):
        left = sub()
        while self.peek() == sym:
            pos = self.pos
            self.pos += 1
            left = Node(sym, pos, [left, sub()])
            if left.tag:
                self.partials.append(left)
        return left

    def expr(self):
        return self._binary("|", self.diff)

    def diff(self):
        return self._binary("\\", self.meet)

    def meet(self):
        return self._binary("&", self.unary)

    def unary(self):
        if self.peek() == "~":
            pos = self.pos
            self.pos += 1
            nd = Node("~", pos, [self.unary()])
            self.partials.append(nd)
            return nd
        return self.atom()

    def atom(self):
        c = self.peek()
        pos = self.pos
        if c == "(":
            self.pos += 1
            nd = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return nd
        if c == "U":
            ivs, self.pos = parse_intervals(self.s, self.pos + 1)
            return Node("ring", pos, value=RingSet.from_intervals(ivs))
        if c == "N":
            items, self.pos = parse_naturals(self.s, self.pos + 1)
            return Node("ring", pos, value=RingSet.from_naturals(items))
        m = _NAME_RE.match(self.s, self.pos)
        if m:
            if m.group() not in BUILTINS:
                self.error(f"unknown set name {m.group()!r} (known: {', '.join(BUILTINS)})")
            self.pos = m.end()
            return Node("name", pos, value=m.group())
        if not c:
            self.error("unexpected end of expression")
        self.error(f"unexpected {c!r}")


def parse(text: str) -> Node:
    return _Parser(text).parse()


def partial_nodes(node: Node) -> list[Node]:
    out = []

    def walk(nd):
        if nd.tag:
            out.append(nd)
        for a in nd.args:
            walk(a)

    walk(node)
    return sorted(out, key=lambda x: x.ordinal)


def parse_promises(flags) -> set[tuple[str, int | None]]:
    """``tag`` or ``tag@k`` strings to ``(tag, k)`` pairs."""
    out = set()
    for f in flags or ():
        tag, _, k = f.partition("@")
        if tag not in (MEET, DIFF, COCO, ALL):
            raise ValueError(f"unknown promise tag {tag!r}")
        if k and not k.isdigit():
            raise ValueError(f"bad promise target {f!r}")
        out.add((tag, int(k) if k else None))
    return out


def _promised(node: Node, promises) -> bool:
    return any(t in (node.tag, ALL) and k in (None, node.ordinal) for t, k in promises)


def _check_space(node: Node, space):
    if node.op == "ring" and node.value.space is not space:
        lit = "U" if node.value.space is LEBESGUE else "N"
        raise ValueError(f"'{lit}' literal at position {node.pos} does not belong to the {space.id} space")


def eval_mu(node: Node, cs, promises=(), step_budget: int = DEFAULT_STEPS):
    """Compose a δ_μ name; partial nodes must be covered by a promise."""
    promises = promises if isinstance(promises, set) else parse_promises(promises)

    def go(nd):
        _check_space(nd, cs.space)
        if nd.op == "ring":
            return from_ring(nd.value, cs)
        if nd.op == "name":
            if nd.value == "omega":
                return name_of_omega(cs)
            return name_of_scheme(builtin(nd.value, cs.space), cs)
        if nd.tag and not _promised(nd, promises):
            raise PromiseMissing(nd)
        args = [go(a) for a in nd.args]
        if nd.op == "|":
            return union(*args, step_budget=step_budget)
        if nd.op == "&":
            return intersection(*args, promise=nd.tag, step_budget=step_budget)
        if nd.op == "\\":
            return difference(*args, promise=nd.tag, step_budget=step_budget)
        return complement(*args, promise=nd.tag, step_budget=step_budget)

    return go(node)


def eval_tilde(node: Node, cs):
    """Compose a δ_μ̃ name; every operation is total here."""

    def go(nd):
        _check_space(nd, cs.space)
        if nd.op == "ring":
            return from_ring_tilde(nd.value, cs)
        if nd.op == "name":
            base = name_of_omega(cs) if nd.value == "omega" else name_of_scheme(builtin(nd.value, cs.space), cs)
            return reduce_mu_to_tilde(base)
        args = [go(a) for a in nd.args]
        if nd.op == "|":
            return tilde_union(*args)
        if nd.op == "&":
            return tilde_intersection(*args)
        if nd.op == "\\":
            return tilde_difference(*args)
        return tilde_complement(*args)

    return go(node)

