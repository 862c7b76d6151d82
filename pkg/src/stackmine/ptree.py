"""Hierarchical process trees.

Nodes are operator applications (sequence, exclusive choice, structured loop,
parallel), activity or silent leaves, named subtrees and recursion leaves.
The textual notation `seq(...)/xor(...)/loop(...)/par(...)/tau/sub:f(...)/rec:f`
round-trips exactly through parse and format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union

from .errors import UnboundRecursionError


class Op(Enum):
    SEQ = "seq"
    XOR = "xor"
    LOOP = "loop"
    PAR = "par"


@dataclass(frozen=True)
class ActivityLeaf:
    activity: str


@dataclass(frozen=True)
class SilentLeaf:
    pass


@dataclass(frozen=True)
class Operator:
    op: Op
    children: tuple["HPTree", ...]

    def __post_init__(self):
        if len(self.children) < 1:
            raise ValueError("operator needs at least one child")
        if self.op is Op.LOOP and len(self.children) < 2:
            raise ValueError("loop needs a body and at least one redo branch")


@dataclass(frozen=True)
class NamedSubtree:
    name: str
    child: "HPTree"


@dataclass(frozen=True)
class RecursionLeaf:
    name: str


HPTree = Union[ActivityLeaf, SilentLeaf, Operator, NamedSubtree, RecursionLeaf]

TAU = SilentLeaf()


def act(name: str) -> ActivityLeaf:
    return ActivityLeaf(name)


def seq(*children: HPTree) -> Operator:
    return Operator(Op.SEQ, tuple(children))


def xor(*children: HPTree) -> Operator:
    return Operator(Op.XOR, tuple(children))


def loop(*children: HPTree) -> Operator:
    return Operator(Op.LOOP, tuple(children))


def par(*children: HPTree) -> Operator:
    return Operator(Op.PAR, tuple(children))


def sub(name: str, child: HPTree) -> NamedSubtree:
    return NamedSubtree(name, child)


def rec(name: str) -> RecursionLeaf:
    return RecursionLeaf(name)


def children_of(tree: HPTree) -> tuple[HPTree, ...]:
    if isinstance(tree, Operator):
        return tree.children
    if isinstance(tree, NamedSubtree):
        return (tree.child,)
    return ()


def walk(tree: HPTree) -> Iterator[HPTree]:
    yield tree
    for child in children_of(tree):
        yield from walk(child)


def tree_size(tree: HPTree) -> int:
    return sum(1 for _ in walk(tree))


def alphabet(tree: HPTree) -> frozenset[str]:
    """All activity names occurring in the tree, including subtree and
    recursion names."""
    names = set()
    for node in walk(tree):
        if isinstance(node, ActivityLeaf):
            names.add(node.activity)
        elif isinstance(node, (NamedSubtree, RecursionLeaf)):
            names.add(node.name)
    return frozenset(names)


def is_well_formed(tree: HPTree) -> bool:
    """Every recursion leaf must sit below a named subtree with its name."""
    def check(node: HPTree, bound: frozenset[str]) -> bool:
        if isinstance(node, RecursionLeaf):
            return node.name in bound
        if isinstance(node, NamedSubtree):
            return check(node.child, bound | {node.name})
        return all(check(c, bound) for c in children_of(node))

    return check(tree, frozenset())


def require_well_formed(tree: HPTree) -> None:
    if not is_well_formed(tree):
        raise UnboundRecursionError("recursion leaf without an enclosing named subtree")


# --- textual notation -------------------------------------------------------

_BARE_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.+\-]*$")
_KEYWORDS = frozenset({"tau", "seq", "xor", "loop", "par", "sub", "rec"})


def _format_name(name: str) -> str:
    if _BARE_NAME.match(name) and name not in _KEYWORDS:
        return name
    escaped = name.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def format_tree(tree: HPTree) -> str:
    """Canonical textual form; xor/par children are emitted sorted."""
    if isinstance(tree, SilentLeaf):
        return "tau"
    if isinstance(tree, ActivityLeaf):
        return _format_name(tree.activity)
    if isinstance(tree, RecursionLeaf):
        return f"rec:{_format_name(tree.name)}"
    if isinstance(tree, NamedSubtree):
        return f"sub:{_format_name(tree.name)}({format_tree(tree.child)})"
    parts = [format_tree(c) for c in tree.children]
    if tree.op in (Op.XOR, Op.PAR):
        parts = sorted(parts)
    return f"{tree.op.value}({', '.join(parts)})"


def canonical(tree: HPTree) -> HPTree:
    """Sort xor/par children into canonical order, recursively."""
    if isinstance(tree, Operator):
        kids = tuple(canonical(c) for c in tree.children)
        if tree.op in (Op.XOR, Op.PAR):
            kids = tuple(sorted(kids, key=format_tree))
        return Operator(tree.op, kids)
    if isinstance(tree, NamedSubtree):
        return NamedSubtree(tree.name, canonical(tree.child))
    return tree


def tree_equal(a: HPTree, b: HPTree) -> bool:
    """Structural equality, order-insensitive for xor/par children."""
    return canonical(a) == canonical(b)


class TreeParseError(ValueError):
    pass


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<lpar>\()|(?P<rpar>\))|(?P<comma>,)|(?P<colon>:)
        |(?P<quoted>"(?:[^"\\]|\\.)*")
        |(?P<bare>[A-Za-z_][A-Za-z0-9_.+\-]*)
    )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            if text[pos:].strip() == "":
                break
            raise TreeParseError(f"unexpected character at offset {pos}: {text[pos]!r}")
        pos = match.end()
        for kind in ("lpar", "rpar", "comma", "colon", "quoted", "bare"):
            value = match.group(kind)
            if value is not None:
                tokens.append((kind, value))
                break
    return tokens


def _unquote(raw: str) -> str:
    body = raw[1:-1]
    return re.sub(r"\\(.)", r"\1", body)


def parse_tree(text: str) -> HPTree:
    tokens = _tokenize(text)
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else (None, None)

    def take(expected: str) -> str:
        nonlocal idx
        kind, value = peek()
        if kind != expected:
            raise TreeParseError(f"expected {expected}, got {value!r}")
        idx += 1
        return value

    def parse_name() -> str:
        kind, value = peek()
        if kind == "quoted":
            take("quoted")
            return _unquote(value)
        if kind == "bare":
            take("bare")
            return value
        raise TreeParseError(f"expected a name, got {value!r}")

    def parse_children() -> tuple[HPTree, ...]:
        take("lpar")
        kids = [parse_node()]
        while peek()[0] == "comma":
            take("comma")
            kids.append(parse_node())
        take("rpar")
        return tuple(kids)

    def parse_node() -> HPTree:
        kind, value = peek()
        if kind == "quoted":
            take("quoted")
            return ActivityLeaf(_unquote(value))
        if kind != "bare":
            raise TreeParseError(f"expected a node, got {value!r}")
        take("bare")
        if value == "tau":
            return TAU
        if value in ("seq", "xor", "loop", "par") and peek()[0] == "lpar":
            return Operator(Op(value), parse_children())
        if value in ("sub", "rec") and peek()[0] == "colon":
            take("colon")
            name = parse_name()
            if value == "sub":
                return NamedSubtree(name, _single(parse_children()))
            return RecursionLeaf(name)
        return ActivityLeaf(value)

    def _single(kids: tuple[HPTree, ...]) -> HPTree:
        if len(kids) != 1:
            raise TreeParseError("sub:NAME(...) takes exactly one child")
        return kids[0]

    tree = parse_node()
    if idx != len(tokens):
        raise TreeParseError(f"trailing input after tree: {tokens[idx]}")
    return tree


# --- rediscoverable-class checker -------------------------------------------


def _nullable(tree: HPTree) -> bool:
    if isinstance(tree, SilentLeaf):
        return True
    if isinstance(tree, (ActivityLeaf, RecursionLeaf, NamedSubtree)):
        return False
    if tree.op is Op.XOR:
        return any(_nullable(c) for c in tree.children)
    if tree.op is Op.LOOP:
        return _nullable(tree.children[0])
    return all(_nullable(c) for c in tree.children)


def _start_acts(tree: HPTree) -> frozenset[str]:
    if isinstance(tree, SilentLeaf):
        return frozenset()
    if isinstance(tree, ActivityLeaf):
        return frozenset({tree.activity})
    if isinstance(tree, (NamedSubtree, RecursionLeaf)):
        return frozenset({tree.name})
    if tree.op in (Op.XOR, Op.PAR):
        out = frozenset()
        for c in tree.children:
            out |= _start_acts(c)
        return out
    if tree.op is Op.LOOP:
        out = _start_acts(tree.children[0])
        if _nullable(tree.children[0]):
            for c in tree.children[1:]:
                out |= _start_acts(c)
        return out
    out = frozenset()
    for c in tree.children:
        out |= _start_acts(c)
        if not _nullable(c):
            return out
    return out


def _end_acts(tree: HPTree) -> frozenset[str]:
    if isinstance(tree, SilentLeaf):
        return frozenset()
    if isinstance(tree, ActivityLeaf):
        return frozenset({tree.activity})
    if isinstance(tree, (NamedSubtree, RecursionLeaf)):
        return frozenset({tree.name})
    if tree.op in (Op.XOR, Op.PAR):
        out = frozenset()
        for c in tree.children:
            out |= _end_acts(c)
        return out
    if tree.op is Op.LOOP:
        out = _end_acts(tree.children[0])
        if _nullable(tree.children[0]):
            for c in tree.children[1:]:
                out |= _end_acts(c)
        return out
    out = frozenset()
    for c in reversed(tree.children):
        out |= _end_acts(c)
        if not _nullable(c):
            return out
    return out


def validate(tree: HPTree) -> list[str]:
    """Check the language-rediscoverable model class; empty list means in-class.

    Reported per operator node: duplicate activities across sibling subtrees,
    loop first branches whose start and end activity sets overlap, silent
    children, and recursion leaves without a binding named subtree.
    """
    violations: list[str] = []

    def visit(node: HPTree, bound: frozenset[str]) -> None:
        if isinstance(node, RecursionLeaf):
            if node.name not in bound:
                violations.append(f"unbound recursion leaf rec:{node.name}")
            return
        if isinstance(node, NamedSubtree):
            visit(node.child, bound | {node.name})
            return
        if isinstance(node, Operator):
            kids = node.children
            for i in range(len(kids)):
                for j in range(i + 1, len(kids)):
                    shared = alphabet(kids[i]) & alphabet(kids[j])
                    if shared:
                        violations.append(
                            f"duplicate activities across siblings of {node.op.value}: "
                            f"{sorted(shared)}"
                        )
            if node.op is Op.LOOP:
                overlap = _start_acts(kids[0]) & _end_acts(kids[0])
                if overlap:
                    violations.append(
                        f"loop body start/end activities overlap: {sorted(overlap)}"
                    )
            for child in kids:
                if isinstance(child, SilentLeaf):
                    violations.append(f"silent child under {node.op.value}")
                visit(child, bound)

    visit(tree, frozenset())
    return violations
