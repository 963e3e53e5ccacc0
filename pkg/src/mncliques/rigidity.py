"""Special 2-paths, rigid pairs, clique recognition and clique numbers.

Two vertices are *rigid* when no homomorphism can identify them: they are
adjacent, or some common neighbour sees them through different relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .core import InvalidVertex, MixedGraph, SimpleGraph


def _check_vertices(g: MixedGraph, *vs: int):
    for v in vs:
        if not 0 <= v < g.vertex_count:
            raise InvalidVertex(f"vertex {v} not in 0..{g.vertex_count - 1}")
    if len(set(vs)) != len(vs):
        raise InvalidVertex(f"vertices {vs} are not pairwise distinct")


def is_special_two_path(g: MixedGraph, u: int, mid: int, v: int) -> bool:
    """Whether u-mid-v is a special 2-path.

    The five shapes, reading the path as u, mid, v:
    edges of different colors; a directed path through mid (either way, any
    colors); two arcs into mid of different colors; two arcs out of mid of
    different colors; exactly one edge.
    """
    _check_vertices(g, u, mid, v)
    a = g.adjacency_type(u, mid)
    b = g.adjacency_type(mid, v)
    if a.kind == "absent" or b.kind == "absent":
        return False
    if a.kind == "edge" and b.kind == "edge":
        return a.color != b.color
    if (a.kind == "edge") != (b.kind == "edge"):
        return True
    # both arcs; a is seen from u, b from mid
    if a.kind == "out" and b.kind == "out":
        return True
    if a.kind == "in" and b.kind == "in":
        return True
    if a.kind == "out" and b.kind == "in":  # u -> mid <- v
        return a.color != b.color
    return a.color != b.color  # u <- mid -> v


def _rigid_codes(codes: Sequence[Sequence[int]], k: int, u: int, v: int) -> bool:
    if codes[u][v]:
        return True
    for w in range(k):
        cu = codes[w][u]
        if cu:
            cv = codes[w][v]
            if cv and cu != cv:
                return True
    return False


def rigid_pair(g: MixedGraph, u: int, v: int) -> bool:
    _check_vertices(g, u, v)
    return _rigid_codes(g.codes, g.vertex_count, u, v)


def _rigidity_bits(codes: Sequence[Sequence[int]], vertices: Sequence[int]) -> dict[int, int]:
    """Rigidity adjacency among ``vertices`` (midpoints also restricted to them).

    Returns vertex -> bitmask of rigid partners.
    """
    bits = {v: 0 for v in vertices}
    vs = list(vertices)
    for i, u in enumerate(vs):
        cu_row = codes[u]
        for v in vs[i + 1 :]:
            rigid = cu_row[v] != 0
            if not rigid:
                for w in vs:
                    a = codes[w][u]
                    if a:
                        b = codes[w][v]
                        if b and a != b:
                            rigid = True
                            break
            if rigid:
                bits[u] |= 1 << v
                bits[v] |= 1 << u
    return bits


def rigidity_graph(g: MixedGraph) -> SimpleGraph:
    k = g.vertex_count
    edges = set()
    for u, v in combinations(range(k), 2):
        if _rigid_codes(g.codes, k, u, v):
            edges.add((u, v))
    return SimpleGraph(k, frozenset(edges))


@dataclass(frozen=True)
class CliqueWitness:
    """Outcome of :func:`is_clique`: either a clique or a failing pair."""

    failing_pair: tuple[int, int] | None = None

    @property
    def is_clique(self) -> bool:
        return self.failing_pair is None

    def __bool__(self):
        return self.is_clique

    def __str__(self):
        if self.failing_pair is None:
            return "clique"
        return "failing-pair {} {}".format(*self.failing_pair)


def is_clique(g: MixedGraph) -> CliqueWitness:
    """First (lexicographic) non-rigid pair, or a clique witness."""
    k = g.vertex_count
    for u, v in combinations(range(k), 2):
        if not _rigid_codes(g.codes, k, u, v):
            return CliqueWitness((u, v))
    return CliqueWitness()


# -- maximum clique ---------------------------------------------------------


def _greedy_color_order(cand: list[int], nbits: dict[int, int]) -> tuple[list[int], list[int]]:
    """Sequential greedy coloring of ``cand``; returns vertices and color bounds
    in nondecreasing color order."""
    order, bounds = [], []
    remaining = list(cand)
    color = 0
    while remaining:
        color += 1
        rest = []
        used = 0
        for v in remaining:
            if used & (1 << v):
                rest.append(v)
            else:
                order.append(v)
                bounds.append(color)
                used |= nbits[v]
        remaining = rest
    return order, bounds


def max_clique(vertices: Sequence[int], nbits: dict[int, int], lower: int = 0) -> list[int]:
    """Exact maximum clique of the graph given as vertex -> neighbour bitmask.

    Branch and bound with greedy-coloring bounds. Vertices are considered in
    increasing index order, so among equal-size maxima the result is
    deterministic for a given input.
    """
    best: list[int] = []
    best_size = lower

    def expand(current: list[int], cand: list[int]):
        nonlocal best, best_size
        if not cand:
            if len(current) > best_size:
                best, best_size = list(current), len(current)
            return
        order, bounds = _greedy_color_order(cand, nbits)
        for idx in range(len(order) - 1, -1, -1):
            if len(current) + bounds[idx] <= best_size:
                return
            v = order[idx]
            current.append(v)
            expand(current, [w for w in order[:idx] if nbits[v] >> w & 1])
            current.pop()

    expand([], sorted(vertices))
    return sorted(best)


def relative_clique_number(g: MixedGraph) -> tuple[int, tuple[int, ...]]:
    """Largest pairwise-rigid vertex set, via exact max clique on the rigidity graph."""
    k = g.vertex_count
    if k == 0:
        return 0, ()
    nbits = _rigidity_bits(g.codes, range(k))
    clique = max_clique(range(k), nbits)
    return len(clique), tuple(clique)


def absolute_clique_number(g: MixedGraph) -> tuple[int, tuple[int, ...]]:
    """Largest vertex set inducing an (m,n)-clique.

    Branches on include/exclude. A state (chosen, candidates) is pruned when
    some chosen pair is not rigid even inside the subgraph induced on
    chosen + candidates: shrinking the vertex set never creates rigidity.
    """
    k = g.vertex_count
    if k == 0:
        return 0, ()
    codes = g.codes
    best: tuple[int, ...] = (0,)
    best_size = 1

    def search(chosen: list[int], cand: list[int]):
        nonlocal best, best_size
        universe = sorted(chosen + cand)
        bits = _rigidity_bits(codes, universe)
        chosen_mask = 0
        for v in chosen:
            chosen_mask |= 1 << v
        for v in chosen:
            if (bits[v] | (1 << v)) & chosen_mask != chosen_mask:
                return
        kept = [v for v in cand if bits[v] & chosen_mask == chosen_mask]
        if len(chosen) + len(kept) <= best_size:
            return
        if len(kept) < len(cand):
            # universe shrank; rigidity must be recomputed
            search(chosen, kept)
            return
        if not cand:
            best, best_size = tuple(sorted(chosen)), len(chosen)
            return
        # coloring bound on the candidates' rigidity graph
        _, bounds = _greedy_color_order(cand, bits)
        if len(chosen) + bounds[-1] <= best_size:
            return
        v = cand[0]
        search(chosen + [v], cand[1:])
        search(chosen, cand[1:])

    search([], list(range(k)))
    return best_size, best
