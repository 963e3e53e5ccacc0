"""Data model and text formats for (m,n)-colored mixed graphs.

A mixed graph stores one adjacency per unordered vertex pair. Internally every
ordered pair carries an integer *relation code*:

    0                 absent
    1 .. n            edge of color c                 (code c)
    n+1 .. n+m        arc u -> v of color c           (code n + c)
    n+m+1 .. n+2m     arc v -> u of color c           (code n + m + c)

so the code of ``(v, u)`` is the inverse of the code of ``(u, v)``. The search
kernels work on these codes; :class:`Adjacency` is the readable form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence


class MixedGraphError(ValueError):
    """Base class for invalid graphs and malformed input."""


class SelfLoop(MixedGraphError):
    pass


class ColorOutOfRange(MixedGraphError):
    pass


class DuplicateAdjacency(MixedGraphError):
    pass


class InvalidVertex(MixedGraphError):
    pass


class InvalidSignature(MixedGraphError):
    pass


class ParseError(MixedGraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured work budget."""

    def __init__(self, required: int, budget: int, what: str = "work"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} {required} exceeds budget {budget}")


@dataclass(frozen=True)
class Signature:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise InvalidSignature(f"negative signature ({self.m},{self.n})")
        if self.m == 0 and self.n == 0:
            raise InvalidSignature("signature (0,0) has no adjacency kinds")

    @property
    def kinds(self) -> int:
        """Number of non-absent adjacency kinds, 2m+n."""
        return 2 * self.m + self.n

    def inverse(self, code: int) -> int:
        """Relation code seen from the other endpoint."""
        if code <= self.n:
            return code
        if code <= self.n + self.m:
            return code + self.m
        return code - self.m

    def decode(self, code: int) -> Adjacency:
        if code == 0:
            return ABSENT
        if code <= self.n:
            return Adjacency("edge", code)
        if code <= self.n + self.m:
            return Adjacency("out", code - self.n)
        return Adjacency("in", code - self.n - self.m)

    def encode(self, adj: Adjacency) -> int:
        kind, c = adj
        if kind == "absent":
            return 0
        limit = self.n if kind == "edge" else self.m
        if not 1 <= c <= limit:
            raise ColorOutOfRange(f"{kind} color {c} outside 1..{limit}")
        if kind == "edge":
            return c
        if kind == "out":
            return self.n + c
        if kind == "in":
            return self.n + self.m + c
        raise ValueError(f"unknown adjacency kind {kind!r}")

    def all_adjacencies(self) -> list[Adjacency]:
        """The 2m+n non-absent kinds, in code order."""
        return [self.decode(c) for c in range(1, self.kinds + 1)]


class Adjacency(NamedTuple):
    """Relation of an ordered pair (u, v): kind is absent, edge, out or in."""

    kind: str
    color: int

    def reversed(self) -> Adjacency:
        if self.kind == "out":
            return Adjacency("in", self.color)
        if self.kind == "in":
            return Adjacency("out", self.color)
        return self

    def __str__(self):
        return "Absent" if self.kind == "absent" else f"{self.kind}({self.color})"


ABSENT = Adjacency("absent", 0)


@dataclass(frozen=True, eq=False)
class MixedGraph:
    """Frozen (m,n)-colored mixed graph on vertices 0..vertex_count-1.

    Build one with :class:`GraphBuilder` (or :func:`new_graph` followed by
    :func:`add_edge` / :func:`add_arc`, which return new graphs).
    """

    signature: Signature
    vertex_count: int
    edges: frozenset[tuple[int, int, int]]
    arcs: frozenset[tuple[int, int, int]]
    codes: tuple[tuple[int, ...], ...] = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return (self.signature, self.vertex_count, self.edges, self.arcs) == (
            other.signature,
            other.vertex_count,
            other.edges,
            other.arcs,
        )

    def __hash__(self):
        return hash((self.signature, self.vertex_count, self.edges, self.arcs))

    def __len__(self):
        return self.vertex_count

    def _check(self, v: int):
        if not 0 <= v < self.vertex_count:
            raise InvalidVertex(f"vertex {v} not in 0..{self.vertex_count - 1}")

    def code(self, u: int, v: int) -> int:
        return self.codes[u][v]

    def adjacency_type(self, u: int, v: int) -> Adjacency:
        self._check(u)
        self._check(v)
        if u == v:
            raise InvalidVertex("adjacency_type needs two distinct vertices")
        return self.signature.decode(self.codes[u][v])

    def adjacent(self, u: int, v: int) -> bool:
        return self.codes[u][v] != 0

    def neighbors(self, u: int) -> list[int]:
        row = self.codes[u]
        return [v for v in range(self.vertex_count) if row[v]]

    def adjacency_count(self) -> int:
        return len(self.edges) + len(self.arcs)

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        """Yield (u, v, code) for every adjacent pair with u < v."""
        for u in range(self.vertex_count):
            row = self.codes[u]
            for v in range(u + 1, self.vertex_count):
                if row[v]:
                    yield u, v, row[v]

    def induced(self, vertices: Sequence[int]) -> MixedGraph:
        """Subgraph induced on ``vertices``, relabelled 0.. in the given order."""
        for v in vertices:
            self._check(v)
        b = GraphBuilder(self.signature, len(vertices))
        for i, u in enumerate(vertices):
            for j in range(i + 1, len(vertices)):
                c = self.codes[u][vertices[j]]
                if c:
                    b.set_code(i, j, c)
        return b.build()


class GraphBuilder:
    """Mutable accumulator; ``build()`` freezes it into a :class:`MixedGraph`."""

    def __init__(self, sig: Signature, k: int):
        if k < 0:
            raise ValueError("vertex count must be non-negative")
        self.signature = sig
        self.k = k
        self._codes = [[0] * k for _ in range(k)]

    def _check(self, v: int):
        if not 0 <= v < self.k:
            raise InvalidVertex(f"vertex {v} not in 0..{self.k - 1}")

    def set_code(self, u: int, v: int, code: int) -> GraphBuilder:
        self._check(u)
        self._check(v)
        if u == v:
            raise SelfLoop(f"loop at vertex {u}")
        if not 1 <= code <= self.signature.kinds:
            raise ColorOutOfRange(f"relation code {code} out of range")
        if self._codes[u][v]:
            raise DuplicateAdjacency(f"pair {{{u},{v}}} already carries an adjacency")
        self._codes[u][v] = code
        self._codes[v][u] = self.signature.inverse(code)
        return self

    def add_edge(self, u: int, v: int, c: int) -> GraphBuilder:
        if not 1 <= c <= self.signature.n:
            raise ColorOutOfRange(f"edge color {c} outside 1..{self.signature.n}")
        return self.set_code(u, v, c)

    def add_arc(self, u: int, v: int, c: int) -> GraphBuilder:
        if not 1 <= c <= self.signature.m:
            raise ColorOutOfRange(f"arc color {c} outside 1..{self.signature.m}")
        return self.set_code(u, v, self.signature.n + c)

    def build(self) -> MixedGraph:
        sig = self.signature
        edges, arcs = set(), set()
        for u in range(self.k):
            for v in range(u + 1, self.k):
                a = sig.decode(self._codes[u][v])
                if a.kind == "edge":
                    edges.add((u, v, a.color))
                elif a.kind == "out":
                    arcs.add((u, v, a.color))
                elif a.kind == "in":
                    arcs.add((v, u, a.color))
        return MixedGraph(
            sig,
            self.k,
            frozenset(edges),
            frozenset(arcs),
            tuple(tuple(row) for row in self._codes),
        )


def _builder_from(g: MixedGraph) -> GraphBuilder:
    b = GraphBuilder(g.signature, g.vertex_count)
    b._codes = [list(row) for row in g.codes]
    return b


def new_graph(sig: Signature | tuple[int, int], k: int) -> MixedGraph:
    if not isinstance(sig, Signature):
        sig = Signature(*sig)
    return GraphBuilder(sig, k).build()


def add_edge(g: MixedGraph, u: int, v: int, c: int) -> MixedGraph:
    return _builder_from(g).add_edge(u, v, c).build()


def add_arc(g: MixedGraph, u: int, v: int, c: int) -> MixedGraph:
    return _builder_from(g).add_arc(u, v, c).build()


def from_codes(sig: Signature, k: int, codes: Iterable[tuple[int, int, int]]) -> MixedGraph:
    """Graph from (u, v, code) triples."""
    b = GraphBuilder(sig, k)
    for u, v, c in codes:
        b.set_code(u, v, c)
    return b.build()


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise SelfLoop(f"loop at vertex {u}")
            for w in (u, v):
                if not 0 <= w < self.vertex_count:
                    raise InvalidVertex(f"vertex {w} not in 0..{self.vertex_count - 1}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    def __len__(self):
        return self.vertex_count

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def is_complete(self) -> bool:
        k = self.vertex_count
        return len(self.edges) == k * (k - 1) // 2


def underlying(g: MixedGraph) -> SimpleGraph:
    return SimpleGraph(g.vertex_count, frozenset((u, v) for u, v, _ in g.pairs()))


# -- text formats -----------------------------------------------------------


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _ints(tokens: list[str], count: int, lineno: int) -> list[int]:
    if len(tokens) != count:
        raise ParseError(f"expected {count} fields, got {len(tokens)}", lineno)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer field in {' '.join(tokens)!r}", lineno) from None


def parse(text: str) -> MixedGraph:
    """Parse the ``mixed <m> <n> <k>`` format."""
    lines = _content_lines(text)
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise ParseError("empty input") from None
    if head[0] != "mixed":
        raise ParseError(f"expected 'mixed' header, got {head[0]!r}", lineno)
    m, n, k = _ints(head[1:], 3, lineno)
    if k < 0:
        raise ParseError("negative vertex count", lineno)
    b = GraphBuilder(Signature(m, n), k)
    for lineno, tok in lines:
        if tok[0] not in ("e", "a"):
            raise ParseError(f"unknown record {tok[0]!r}", lineno)
        u, v, c = _ints(tok[1:], 3, lineno)
        try:
            if tok[0] == "e":
                b.add_edge(u, v, c)
            else:
                b.add_arc(u, v, c)
        except MixedGraphError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    return b.build()


def serialize(g: MixedGraph, roles: Sequence[str] | None = None) -> str:
    """Canonical text: header, sorted edge lines, sorted arc lines."""
    out = [f"mixed {g.signature.m} {g.signature.n} {g.vertex_count}"]
    out += [f"e {u} {v} {c}" for u, v, c in sorted(g.edges)]
    out += [f"a {u} {v} {c}" for u, v, c in sorted(g.arcs)]
    if roles is not None:
        out += role_lines(roles)
    return "\n".join(out) + "\n"


def parse_simple(text: str) -> SimpleGraph:
    """Parse the ``simple <k>`` format."""
    lines = _content_lines(text)
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise ParseError("empty input") from None
    if head[0] != "simple":
        raise ParseError(f"expected 'simple' header, got {head[0]!r}", lineno)
    (k,) = _ints(head[1:], 1, lineno)
    if k < 0:
        raise ParseError("negative vertex count", lineno)
    edges: set[tuple[int, int]] = set()
    for lineno, tok in lines:
        if tok[0] != "e":
            raise ParseError(f"unknown record {tok[0]!r}", lineno)
        u, v = _ints(tok[1:], 2, lineno)
        if u == v:
            raise SelfLoop(f"line {lineno}: loop at vertex {u}")
        if not (0 <= u < k and 0 <= v < k):
            raise InvalidVertex(f"line {lineno}: vertex out of range")
        e = (min(u, v), max(u, v))
        if e in edges:
            raise DuplicateAdjacency(f"line {lineno}: repeated edge {u} {v}")
        edges.add(e)
    return SimpleGraph(k, frozenset(edges))


def serialize_simple(g: SimpleGraph, roles: Sequence[str] | None = None) -> str:
    out = [f"simple {g.vertex_count}"]
    out += [f"e {u} {v}" for u, v in g.sorted_edges()]
    if roles is not None:
        out += role_lines(roles)
    return "\n".join(out) + "\n"


def role_lines(roles: Sequence[str]) -> list[str]:
    return [f"# role {v} {label}" for v, label in enumerate(roles)]


def parse_roles(text: str) -> dict[int, str]:
    """Collect ``# role <vertex> <label>`` sidecar comments."""
    roles = {}
    for raw in text.splitlines():
        tok = raw.split()
        if len(tok) >= 4 and tok[0] == "#" and tok[1] == "role":
            roles[int(tok[2])] = " ".join(tok[3:])
    return roles
