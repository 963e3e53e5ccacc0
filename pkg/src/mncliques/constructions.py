"""Generators for the extremal clique families and the join families.

Every generator also returns role labels so the output can be traced back to
the construction (hub, group/position, copy index, join vertex).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import GraphBuilder, MixedGraph, MixedGraphError, Signature, SimpleGraph


class UnsupportedSignature(MixedGraphError):
    pass


@dataclass(frozen=True)
class FamilyDescriptor:
    name: str
    signature: Signature | None
    params: dict = field(default_factory=dict)
    roles: tuple[str, ...] = ()


@dataclass(frozen=True)
class Family:
    graph: MixedGraph | SimpleGraph
    descriptor: FamilyDescriptor


def _sig(sig) -> Signature:
    return sig if isinstance(sig, Signature) else Signature(*sig)


def hub_code(sig: Signature, group: int) -> int:
    """Relation code from the hub to group ``group`` (1-based): edge color i for
    the first n groups, then out-arcs of color 1..m, then in-arcs of color 1..m."""
    return group


def _add_outerplanar(b: GraphBuilder, sig: Signature, offset: int, roles: list[str], prefix: str):
    s = sig.kinds
    x = offset
    roles.append(f"{prefix}x")
    for i in range(1, s + 1):
        base = offset + 1 + 3 * (i - 1)
        for j in range(3):
            roles.append(f"{prefix}v{i},{j + 1}")
            b.set_code(x, base + j, hub_code(sig, i))
        if sig.n >= 2:
            b.add_edge(base, base + 1, 1)
            b.add_edge(base + 1, base + 2, 2)
        else:
            b.add_arc(base, base + 1, 1)
            b.add_arc(base + 1, base + 2, 1)


def outerplanar_clique_family(sig) -> Family:
    """Hub x plus 2m+n groups of three; 3(2m+n)+1 vertices."""
    sig = _sig(sig)
    if (sig.m, sig.n) == (0, 1):
        raise UnsupportedSignature("no (0,1) construction: plain graphs have no special 2-paths")
    k = 3 * sig.kinds + 1
    b = GraphBuilder(sig, k)
    roles: list[str] = []
    _add_outerplanar(b, sig, 0, roles, "")
    desc = FamilyDescriptor("outerplanar-clique", sig, {"m": sig.m, "n": sig.n}, tuple(roles))
    return Family(b.build(), desc)


def outerplanar_clique(sig) -> MixedGraph:
    return outerplanar_clique_family(sig).graph


def planar_clique_family(sig) -> Family:
    """New hub joined to every vertex of copy i of the outerplanar clique by
    relation i; 3(2m+n)^2 + (2m+n) + 1 vertices."""
    sig = _sig(sig)
    if (sig.m, sig.n) == (0, 1):
        raise UnsupportedSignature("no (0,1) construction: plain graphs have no special 2-paths")
    s = sig.kinds
    block = 3 * s + 1
    k = s * block + 1
    b = GraphBuilder(sig, k)
    roles = ["x"]
    for i in range(1, s + 1):
        offset = 1 + (i - 1) * block
        _add_outerplanar(b, sig, offset, roles, f"H{i}.")
        for v in range(offset, offset + block):
            b.set_code(0, v, hub_code(sig, i))
    desc = FamilyDescriptor("planar-clique", sig, {"m": sig.m, "n": sig.n}, tuple(roles))
    return Family(b.build(), desc)


def planar_clique(sig) -> MixedGraph:
    return planar_clique_family(sig).graph


def join_family(A: SimpleGraph, B: SimpleGraph) -> Family:
    """Disjoint A and B plus a vertex adjacent to everything; it gets index |A|+|B|."""
    na, nb = A.vertex_count, B.vertex_count
    inf = na + nb
    edges = set(A.edges)
    edges |= {(u + na, v + na) for u, v in B.edges}
    edges |= {(v, inf) for v in range(inf)}
    roles = [f"A{v}" for v in range(na)] + [f"B{v}" for v in range(nb)] + ["inf"]
    desc = FamilyDescriptor("join", None, {"a": na, "b": nb, "infinity": inf}, tuple(roles))
    return Family(SimpleGraph(inf + 1, frozenset(edges)), desc)


def join(A: SimpleGraph, B: SimpleGraph) -> SimpleGraph:
    return join_family(A, B).graph


def iterated_join(H: SimpleGraph, k: int) -> SimpleGraph:
    """H_1 = H, H_k = H + H_{k-1}."""
    if k < 1:
        raise ValueError("iterated_join needs k >= 1")
    G = H
    for _ in range(k - 1):
        G = join(H, G)
    return G


def iterated_join_family(H: SimpleGraph, k: int) -> Family:
    if k < 1:
        raise ValueError("iterated_join needs k >= 1")
    roles = [f"H1.{v}" for v in range(H.vertex_count)]
    G = H
    for level in range(2, k + 1):
        fam = join_family(H, G)
        G = fam.graph
        roles = [f"H{level}.{v}" for v in range(H.vertex_count)] + roles + [f"inf{level}"]
    desc = FamilyDescriptor("iterate", None, {"k": k, "order": H.vertex_count}, tuple(roles))
    return Family(G, desc)


def path(edge_count: int) -> SimpleGraph:
    """Path with ``edge_count`` edges (edge_count + 1 vertices)."""
    if edge_count < 0:
        raise ValueError("path length must be non-negative")
    return SimpleGraph(edge_count + 1, frozenset((i, i + 1) for i in range(edge_count)))


def cycle(length: int) -> SimpleGraph:
    if length < 3:
        raise ValueError("cycle length must be at least 3")
    return SimpleGraph(length, frozenset((i, (i + 1) % length) for i in range(length)))
