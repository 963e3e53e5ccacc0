"""Homomorphisms, quotients and exact (m,n)-chromatic numbers.

The chromatic number is computed over vertex partitions: the image of a
homomorphism is a quotient of the source, so the smallest image is the
smallest *valid* partition (independent parts, consistent relations between
every ordered pair of parts).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import (
    BudgetExceeded,
    GraphBuilder,
    MixedGraph,
    MixedGraphError,
    Signature,
    SimpleGraph,
    from_codes,
)


class MalformedPartition(MixedGraphError):
    pass


class InvalidPartition(MixedGraphError):
    pass


class SignatureMismatch(MixedGraphError):
    pass


@dataclass(frozen=True)
class Partition:
    """``parts[v]`` is the part index of vertex v; indices are dense."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if self.parts and set(self.parts) != set(range(max(self.parts) + 1)):
            raise MalformedPartition(f"part indices not dense: {self.parts}")

    @property
    def count(self) -> int:
        return max(self.parts) + 1 if self.parts else 0

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for v, p in enumerate(self.parts):
            out[p].append(v)
        return out

    def canonical(self) -> Partition:
        """Relabel parts in order of their smallest vertex."""
        relabel: dict[int, int] = {}
        for p in self.parts:
            relabel.setdefault(p, len(relabel))
        return Partition(tuple(relabel[p] for p in self.parts))

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]], k: int) -> Partition:
        parts = [-1] * k
        for i, block in enumerate(blocks):
            for v in block:
                if not 0 <= v < k or parts[v] != -1:
                    raise MalformedPartition(f"vertex {v} repeated or out of range")
                parts[v] = i
        if -1 in parts:
            raise MalformedPartition("partition does not cover every vertex")
        return cls(tuple(parts))

    def __str__(self):
        return " ".join(map(str, self.parts))


def _as_partition(g: MixedGraph, p: Partition | Sequence[int]) -> Partition:
    if not isinstance(p, Partition):
        p = Partition(tuple(p))
    if len(p.parts) != g.vertex_count:
        raise MalformedPartition(
            f"partition covers {len(p.parts)} vertices, graph has {g.vertex_count}"
        )
    return p


def _part_relations(g: MixedGraph, p: Partition) -> dict[tuple[int, int], int] | None:
    """Relation code between each ordered pair of parts, or None when invalid."""
    rel: dict[tuple[int, int], int] = {}
    parts = p.parts
    for u, v, c in g.pairs():
        pu, pv = parts[u], parts[v]
        if pu == pv:
            return None
        if pu > pv:
            pu, pv, c = pv, pu, g.signature.inverse(c)
        if rel.setdefault((pu, pv), c) != c:
            return None
    return rel


def is_valid_partition(g: MixedGraph, p: Partition | Sequence[int]) -> bool:
    p = _as_partition(g, p)
    return _part_relations(g, p) is not None


def quotient(g: MixedGraph, p: Partition | Sequence[int]) -> MixedGraph:
    p = _as_partition(g, p)
    rel = _part_relations(g, p)
    if rel is None:
        raise InvalidPartition("partition does not induce a simple, consistently colored quotient")
    return from_codes(g.signature, p.count, ((a, b, c) for (a, b), c in sorted(rel.items())))


def is_homomorphism(g: MixedGraph, h: MixedGraph, mapping: Sequence[int] | Mapping[int, int]) -> bool:
    """Check the colored homomorphism conditions for a total vertex map."""
    if g.signature != h.signature:
        return False
    try:
        f = [mapping[v] for v in range(g.vertex_count)]
    except (KeyError, IndexError):
        return False
    if any(not 0 <= x < h.vertex_count for x in f):
        return False
    for u, v, c in g.arcs:
        if (f[u], f[v], c) not in h.arcs:
            return False
    for u, v, c in g.edges:
        a, b = min(f[u], f[v]), max(f[u], f[v])
        if (a, b, c) not in h.edges:
            return False
    return True


def find_homomorphism(g: MixedGraph, h: MixedGraph) -> tuple[int, ...] | None:
    """Backtracking search for g -> h; picks the unassigned vertex with the
    fewest consistent images first."""
    if g.signature != h.signature:
        raise SignatureMismatch(f"{g.signature} vs {h.signature}")
    k, t = g.vertex_count, h.vertex_count
    if k == 0:
        return ()
    if t == 0:
        return None
    gc, hc = g.codes, h.codes
    nbrs = [g.neighbors(v) for v in range(k)]
    assign = [-1] * k

    def candidates(v: int) -> list[int]:
        out = []
        row = gc[v]
        for x in range(t):
            hrow = hc[x]
            for w in nbrs[v]:
                fw = assign[w]
                if fw >= 0 and hrow[fw] != row[w]:
                    break
            else:
                out.append(x)
        return out

    def solve(left: int) -> bool:
        if left == 0:
            return True
        best_v, best_c = -1, None
        for v in range(k):
            if assign[v] < 0:
                c = candidates(v)
                if best_c is None or len(c) < len(best_c):
                    best_v, best_c = v, c
                    if not c:
                        return False
        for x in best_c:
            assign[best_v] = x
            if solve(left - 1):
                return True
        assign[best_v] = -1
        return False

    return tuple(assign) if solve(k) else None


def chromatic_number(g: MixedGraph) -> tuple[int, Partition]:
    """Exact (m,n)-chromatic number with a minimum valid partition.

    Vertices are placed in a fixed order (high degree first, then growing
    along neighbourhoods); a vertex may join an existing part or open the
    next one. Part pairs keep a counted relation table so each placement is
    checked only against already-placed neighbours.
    """
    k = g.vertex_count
    if k == 0:
        return 0, Partition(())
    codes = g.codes
    inv = g.signature.inverse
    order = _search_order(g)
    nbrs = [g.neighbors(v) for v in range(k)]

    best_count = k
    best_parts: list[int] = list(range(k))
    lower = _greedy_rigid_clique(g)

    part_of = [-1] * k
    members: list[list[int]] = []
    # rel[(P, Q)] = [code seen from P, multiplicity]
    rel: dict[tuple[int, int], list[int]] = {}

    def place(v: int, p: int) -> list[tuple[int, int]] | None:
        touched: list[tuple[int, int]] = []
        row = codes[v]
        for w in nbrs[v]:
            q = part_of[w]
            if q < 0:
                continue
            if q == p:
                _undo(touched)
                return None
            c = row[w]
            entry = rel.get((p, q))
            if entry is None:
                rel[(p, q)] = [c, 1]
                rel[(q, p)] = [inv(c), 1]
            elif entry[0] != c:
                _undo(touched)
                return None
            else:
                entry[1] += 1
                rel[(q, p)][1] += 1
            touched.append((p, q))
        return touched

    def _undo(touched: list[tuple[int, int]]):
        for key in touched:
            for kk in (key, (key[1], key[0])):
                entry = rel[kk]
                entry[1] -= 1
                if entry[1] == 0:
                    del rel[kk]

    def search(i: int):
        nonlocal best_count, best_parts
        if best_count <= lower:
            return
        if i == k:
            best_count = len(members)
            best_parts = list(part_of)
            return
        v = order[i]
        opened = len(members)
        for p in range(opened + 1):
            if p == opened:
                if opened + 1 >= best_count:
                    break
                members.append([])
            touched = place(v, p)
            if touched is not None:
                part_of[v] = p
                members[p].append(v)
                search(i + 1)
                members[p].pop()
                part_of[v] = -1
                _undo(touched)
            if p == opened:
                members.pop()
            if best_count <= lower:
                return

    search(0)
    return best_count, Partition(tuple(best_parts)).canonical()


def _search_order(g: MixedGraph) -> list[int]:
    k = g.vertex_count
    deg = [len(g.neighbors(v)) for v in range(k)]
    seen = [False] * k
    order: list[int] = []
    while len(order) < k:
        start = max((v for v in range(k) if not seen[v]), key=lambda v: (deg[v], -v))
        frontier = [start]
        seen[start] = True
        while frontier:
            # most already-placed neighbours first, then degree
            placed = set(order)
            frontier.sort(key=lambda v: (-sum(w in placed for w in g.neighbors(v)), -deg[v], v))
            v = frontier.pop(0)
            order.append(v)
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    frontier.append(w)
    return order


def _greedy_rigid_clique(g: MixedGraph) -> int:
    """Size of a greedily grown pairwise-rigid set (a valid lower bound)."""
    from .rigidity import _rigidity_bits

    k = g.vertex_count
    bits = _rigidity_bits(g.codes, range(k))
    best = 1
    for start in range(k):
        chosen = 1 << start
        cand = bits[start]
        size = 1
        while cand:
            v = max(
                (w for w in range(k) if cand >> w & 1),
                key=lambda w: (bin(bits[w] & cand).count("1"), -w),
            )
            chosen |= 1 << v
            cand &= bits[v]
            size += 1
        best = max(best, size)
    return best


# -- maximum over colorings of an undirected graph --------------------------


@dataclass(frozen=True)
class MaxChromaticResult:
    value: int
    assignment: tuple[int, ...]  # relation code per sorted edge
    graph: MixedGraph  # argmax coloring
    partition: Partition  # minimum valid partition of ``graph``
    evaluated: int


DEFAULT_MAX_CHROMATIC_BUDGET = 2**24


def colorings_count(G: SimpleGraph, sig: Signature) -> int:
    return sig.kinds ** len(G.edges)


def assignment_graph(G: SimpleGraph, sig: Signature, assignment: Sequence[int]) -> MixedGraph:
    """Mixed graph on G where sorted edge i carries relation code assignment[i]."""
    b = GraphBuilder(sig, G.vertex_count)
    for (u, v), c in zip(G.sorted_edges(), assignment):
        b.set_code(u, v, c)
    return b.build()


def _scan_range(args) -> tuple[int, tuple[int, ...] | None, int]:
    G, sig, start, stop = args
    edges = G.sorted_edges()
    kinds = sig.kinds
    k = G.vertex_count
    best, arg, seen = -1, None, 0
    for idx in range(start, stop):
        assignment = _odometer(idx, kinds, len(edges))
        value, _ = chromatic_number(assignment_graph(G, sig, assignment))
        seen += 1
        if value > best:
            best, arg = value, assignment
            if best == k:
                break
    return best, arg, seen


def _odometer(idx: int, base: int, length: int) -> tuple[int, ...]:
    digits = [0] * length
    for pos in range(length - 1, -1, -1):
        idx, digits[pos] = divmod(idx, base)
    return tuple(d + 1 for d in digits)


def max_chromatic(
    G: SimpleGraph,
    sig: Signature,
    budget: int = DEFAULT_MAX_CHROMATIC_BUDGET,
    jobs: int = 1,
) -> MaxChromaticResult:
    """Maximum chromatic number over all (2m+n)^|E| colorings of G.

    Colorings are enumerated in odometer order (last edge fastest); the
    reported argmax is the first maximum in that order, whatever ``jobs`` is.
    """
    total = colorings_count(G, sig)
    if total > budget:
        raise BudgetExceeded(total, budget, "colorings")
    jobs = max(1, min(jobs, total))
    if jobs == 1:
        chunks = [(G, sig, 0, total)]
    else:
        step = -(-total // jobs)
        chunks = [(G, sig, s, min(s + step, total)) for s in range(0, total, step)]
    if len(chunks) == 1:
        results = [_scan_range(chunks[0])]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_range, chunks))
    best, arg, seen = -1, None, 0
    for value, assignment, count in results:  # chunks are in odometer order
        seen += count
        if value > best:
            best, arg = value, assignment
    assert arg is not None
    graph = assignment_graph(G, sig, arg)
    value, part = chromatic_number(graph)
    return MaxChromaticResult(value, arg, graph, part, seen)


def all_colorings(G: SimpleGraph, sig: Signature):
    """Every mixed graph with underlying graph G, in odometer order."""
    for assignment in itertools.product(range(1, sig.kinds + 1), repeat=len(G.edges)):
        yield assignment_graph(G, sig, assignment)
