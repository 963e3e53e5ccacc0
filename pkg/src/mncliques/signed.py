"""Signed cliques, monotone NAE-3SAT and the reduction between them.

Colors of a 2-edge-coloring are 1 and 2. A 4-cycle is unbalanced when it has
an odd number of color-1 edges. Every search here works on the parity of
cycles, which is invariant under *switching* (flipping all edges at one
vertex), so exhaustive searches fix the edges of a spanning forest to color 1
and branch only on the remaining edges.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .core import BudgetExceeded, MixedGraphError, ParseError, SimpleGraph

Coloring = dict[tuple[int, int], int]


class NotACycle(MixedGraphError):
    pass


class PartialColoring(MixedGraphError):
    pass


class NotNaeSatisfying(MixedGraphError):
    pass


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


# -- unbalanced cycles and signed cliques -----------------------------------


def is_unbalanced_4cycle(coloring: Mapping[tuple[int, int], int], cycle: Sequence[int]) -> bool:
    if len(cycle) != 4 or len(set(cycle)) != 4:
        raise NotACycle(f"{tuple(cycle)} is not four distinct vertices")
    ones = 0
    for i in range(4):
        e = _key(cycle[i], cycle[(i + 1) % 4])
        if e not in coloring:
            raise NotACycle(f"{e} is not a colored edge")
        ones += coloring[e] == 1
    return ones % 2 == 1


def four_cycles_through(adj: Sequence[set[int]], u: int, v: int) -> list[tuple[int, int, int, int]]:
    """All 4-cycles containing u and v, each listed once starting at u."""
    if v in adj[u]:
        out = []
        for x in sorted(adj[v] - {u}):
            for y in sorted((adj[u] & adj[x]) - {v}):
                out.append((u, v, x, y))
        return out
    common = sorted(adj[u] & adj[v])
    return [(u, a, v, b) for a, b in itertools.combinations(common, 2)]


def _check_total(G: SimpleGraph, coloring: Mapping[tuple[int, int], int]):
    missing = G.edges - coloring.keys()
    if missing:
        raise PartialColoring(f"{len(missing)} edges uncolored, e.g. {min(missing)}")
    extra = coloring.keys() - G.edges
    if extra:
        raise PartialColoring(f"coloring mentions non-edges, e.g. {min(extra)}")
    bad = [e for e, c in coloring.items() if c not in (1, 2)]
    if bad:
        raise PartialColoring(f"edge {min(bad)} has color outside {{1,2}}")


@dataclass(frozen=True)
class SignedCliqueCheck:
    failing_pair: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.failing_pair is None

    def __bool__(self):
        return self.ok


def is_signed_clique(
    G: SimpleGraph, coloring: Mapping[tuple[int, int], int], strict: bool = False
) -> SignedCliqueCheck:
    """Every non-adjacent pair (every pair when ``strict``) lies on an
    unbalanced 4-cycle; otherwise report the first pair that does not."""
    _check_total(G, coloring)
    adj = G.adjacency()
    for u, v in itertools.combinations(range(G.vertex_count), 2):
        if not strict and v in adj[u]:
            continue
        if not any(is_unbalanced_4cycle(coloring, c) for c in four_cycles_through(adj, u, v)):
            return SignedCliqueCheck((u, v))
    return SignedCliqueCheck()


def _spanning_forest(G: SimpleGraph) -> set[tuple[int, int]]:
    adj = G.adjacency()
    seen = [False] * G.vertex_count
    forest = set()
    for root in range(G.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u]):
                if not seen[w]:
                    seen[w] = True
                    forest.add(_key(u, w))
                    queue.append(w)
    return forest


def unbalanced_cover_search(
    G: SimpleGraph, targets: Sequence[tuple[int, int]]
) -> Iterator[Coloring]:
    """Yield 2-edge-colorings putting every target pair on an unbalanced 4-cycle.

    One coloring per switching class is produced: spanning-forest edges are
    fixed to color 1, as are edges lying on no relevant cycle. A branch is cut
    as soon as some target has all its 4-cycles colored and balanced.
    """
    adj = G.adjacency()
    edges = G.sorted_edges()
    eidx = {e: i for i, e in enumerate(edges)}
    cyc_lists = []
    for u, v in targets:
        cycles = four_cycles_through(adj, u, v)
        if not cycles:
            return
        cyc_lists.append(
            [tuple(eidx[_key(c[i], c[(i + 1) % 4])] for i in range(4)) for c in cycles]
        )

    fixed = {eidx[e] for e in _spanning_forest(G)}
    bit = [1] * len(edges)  # 1 = color 1
    pos = {e: -1 for e in fixed}
    order: list[int] = []
    for t in sorted(range(len(cyc_lists)), key=lambda t: (len(cyc_lists[t]), t)):
        for cyc in cyc_lists[t]:
            for e in cyc:
                if e not in pos:
                    pos[e] = len(order)
                    order.append(e)

    checks: list[list[int]] = [[] for _ in range(len(order))]
    for t, cycles in enumerate(cyc_lists):
        done = max(pos[e] for cyc in cycles for e in cyc)
        if done < 0:
            if not _target_ok(cycles, bit):
                return
        else:
            checks[done].append(t)

    def to_coloring() -> Coloring:
        return {e: 1 if bit[i] else 2 for i, e in enumerate(edges)}

    if not order:
        yield to_coloring()
        return

    def rec(step: int) -> Iterator[Coloring]:
        e = order[step]
        for b in (1, 0):
            bit[e] = b
            if all(_target_ok(cyc_lists[t], bit) for t in checks[step]):
                if step + 1 == len(order):
                    yield to_coloring()
                else:
                    yield from rec(step + 1)
        bit[e] = 1

    yield from rec(0)


def _target_ok(cycles, bit) -> bool:
    for a, b, c, d in cycles:
        if bit[a] ^ bit[b] ^ bit[c] ^ bit[d]:
            return True
    return False


DEFAULT_SIGNED_EDGE_BUDGET = 24


def signed_clique_colorable(
    G: SimpleGraph, budget: int = DEFAULT_SIGNED_EDGE_BUDGET, strict: bool = False
) -> Coloring | None:
    """A coloring making G a signed clique, or None if there is none."""
    if len(G.edges) > budget:
        raise BudgetExceeded(len(G.edges), budget, "edge count")
    adj = G.adjacency()
    targets = [
        (u, v)
        for u, v in itertools.combinations(range(G.vertex_count), 2)
        if strict or v not in adj[u]
    ]
    return next(unbalanced_cover_search(G, targets), None)


# -- monotone NAE-3SAT -------------------------------------------------------


@dataclass(frozen=True)
class NaeFormula:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("negative variable count")
        norm = []
        for cl in self.clauses:
            cl = tuple(sorted(cl))
            if len(cl) != 3 or len(set(cl)) != 3:
                raise ValueError(f"clause {cl} must have three distinct variables")
            if not all(1 <= x <= self.num_vars for x in cl):
                raise ValueError(f"clause {cl} mentions a variable outside 1..{self.num_vars}")
            norm.append(cl)
        object.__setattr__(self, "clauses", tuple(norm))

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        if len(assignment) != self.num_vars:
            return False
        return all(len({assignment[x - 1] for x in cl}) == 2 for cl in self.clauses)

    def occurrences(self, var: int) -> list[int]:
        """1-based indices of the clauses containing ``var``."""
        return [j for j, cl in enumerate(self.clauses, 1) if var in cl]


def parse_nae(text: str) -> NaeFormula:
    header = None
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(("#", "c ")) or line == "c":
            continue
        tok = line.split()
        if tok[0] == "p":
            if header is not None or len(tok) != 4 or tok[1] != "nae":
                raise ParseError("expected 'p nae <nvars> <nclauses>'", lineno)
            try:
                header = (int(tok[2]), int(tok[3]))
            except ValueError:
                raise ParseError("non-integer header field", lineno) from None
            continue
        if header is None:
            raise ParseError("clause before header", lineno)
        try:
            vals = [int(t) for t in tok]
        except ValueError:
            raise ParseError(f"non-integer clause field in {line!r}", lineno) from None
        if len(vals) != 4 or vals[-1] != 0:
            raise ParseError("clause must be three positive integers followed by 0", lineno)
        if any(x <= 0 for x in vals[:3]):
            raise ParseError("monotone clauses take positive literals only", lineno)
        clauses.append(tuple(vals[:3]))
    if header is None:
        raise ParseError("missing 'p nae' header")
    if len(clauses) != header[1]:
        raise ParseError(f"header announces {header[1]} clauses, found {len(clauses)}")
    try:
        return NaeFormula(header[0], tuple(clauses))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_nae(F: NaeFormula) -> str:
    out = [f"p nae {F.num_vars} {len(F.clauses)}"]
    out += ["{} {} {} 0".format(*cl) for cl in F.clauses]
    return "\n".join(out) + "\n"


DEFAULT_NAE_BUDGET = 2**24


def nae_solve(F: NaeFormula, budget: int = DEFAULT_NAE_BUDGET) -> tuple[bool, ...] | None:
    """First NAE-satisfying assignment in lexicographic order (False < True)."""
    if 2**F.num_vars > budget:
        raise BudgetExceeded(2**F.num_vars, budget, "assignments")
    for assignment in itertools.product((False, True), repeat=F.num_vars):
        if F.satisfied_by(assignment):
            return assignment
    return None


# -- the reduction -----------------------------------------------------------


@dataclass(frozen=True)
class ReductionArtifact:
    """H_F with its representative pairs, and optionally G_F.

    H_F vertices keep the same index in G_F. ``index`` maps role labels to
    vertices of the largest graph built.
    """

    formula: NaeFormula
    hf: SimpleGraph
    hf_roles: tuple[str, ...]
    representative_pairs: tuple[tuple[int, int], ...]
    gf: SimpleGraph | None = None
    gf_roles: tuple[str, ...] | None = None
    doubled_connectors: bool = False

    @property
    def roles(self) -> tuple[str, ...]:
        return self.gf_roles if self.gf_roles is not None else self.hf_roles

    @property
    def index(self) -> dict[str, int]:
        return {r: v for v, r in enumerate(self.roles)}


def build_hf(F: NaeFormula) -> ReductionArtifact:
    roles = ["r1", "r2"]
    for i in range(1, F.num_vars + 1):
        roles += [f"u{i}", f"u'{i}"]
    for i in range(1, F.num_vars + 1):
        roles += [f"v{i},{j}" for j in F.occurrences(i)]
    roles += [f"w{j}" for j in range(1, len(F.clauses) + 1)]
    at = {r: v for v, r in enumerate(roles)}

    edges = set()
    for v, r in enumerate(roles):
        if r[0] in "uv":
            edges.add(_key(at["r1"], v))
            edges.add(_key(at["r2"], v))
    for j, cl in enumerate(F.clauses, 1):
        for i in cl:
            edges.add(_key(at[f"w{j}"], at[f"v{i},{j}"]))

    reps = []
    for i in range(1, F.num_vars + 1):
        reps.append(_key(at[f"u{i}"], at[f"u'{i}"]))
        for j in F.occurrences(i):
            reps.append(_key(at[f"u'{i}"], at[f"v{i},{j}"]))
    for j, (a, b, c) in enumerate(F.clauses, 1):
        for x, y in ((a, b), (a, c), (b, c)):
            reps.append(_key(at[f"v{x},{j}"], at[f"v{y},{j}"]))

    return ReductionArtifact(F, SimpleGraph(len(roles), frozenset(edges)), tuple(roles), tuple(reps))


def build_gf(F: NaeFormula, doubled_connectors: bool = False) -> ReductionArtifact:
    """Extend H_F with pendant pairs a_u, b_u, connector vertices c_{u,v} for
    every non-representative pair, and a clique on all added vertices.

    With ``doubled_connectors`` each non-representative pair gets two
    connectors c and c', so that u c v c' is a 4-cycle through u and v.
    """
    base = build_hf(F)
    h = base.hf.vertex_count
    roles = list(base.hf_roles)
    edges = set(base.hf.edges)
    added: list[int] = []

    def new(label: str) -> int:
        roles.append(label)
        added.append(len(roles) - 1)
        return len(roles) - 1

    for u in range(h):
        for tag in ("a", "b"):
            edges.add((u, new(f"{tag}({roles[u]})")))
    reps = set(base.representative_pairs)
    for u, v in itertools.combinations(range(h), 2):
        if (u, v) in reps:
            continue
        tags = ("c", "c'") if doubled_connectors else ("c",)
        for tag in tags:
            c = new(f"{tag}({roles[u]};{roles[v]})")
            edges.add((u, c))
            edges.add((v, c))
    edges |= set(itertools.combinations(added, 2))
    gf = SimpleGraph(len(roles), frozenset(edges))
    return ReductionArtifact(
        F, base.hf, base.hf_roles, base.representative_pairs, gf, tuple(roles), doubled_connectors
    )


def agree(coloring: Mapping[tuple[int, int], int], r1: int, r2: int, x: int) -> bool:
    """Whether r1 and r2 agree on x (edges r1x and r2x share a color)."""
    return coloring[_key(r1, x)] == coloring[_key(r2, x)]


def _hf_cycles(art: ReductionArtifact) -> dict[tuple[int, int], list[tuple[int, int, int, int]]]:
    adj = art.hf.adjacency()
    return {p: four_cycles_through(adj, *p) for p in art.representative_pairs}


def good_coloring_from_assignment(
    F: NaeFormula,
    assignment: Sequence[bool],
    artifact: ReductionArtifact | None = None,
) -> Coloring:
    """Total coloring of G_F encoding a NAE-satisfying assignment.

    r1 takes color 1 everywhere; r2 agrees with r1 on u_i and on every
    v_{i,j} exactly when x_i is true, and does the opposite on u'_i. The three
    edges at each w_j are the first of the 8 options that unbalances a cycle
    for each in-clause pair. Added edges follow the fixed pattern: u b_u and
    c_{u,v} v get color 1 (v the larger endpoint), everything else color 2.
    """
    assignment = tuple(bool(x) for x in assignment)
    if not F.satisfied_by(assignment):
        raise NotNaeSatisfying(f"{assignment} does not NAE-satisfy the formula")
    art = artifact if artifact is not None else build_gf(F)
    if art.gf is None:
        raise ValueError("artifact has no G_F; build it with build_gf")
    at = art.index
    r1, r2 = at["r1"], at["r2"]
    col: Coloring = {}
    for v, role in enumerate(art.hf_roles):
        if role[0] not in "uv":
            continue
        var = int(role[2:] if role.startswith("u'") else role[1:].split(",")[0])
        agrees = assignment[var - 1] != role.startswith("u'")
        col[_key(r1, v)] = 1
        col[_key(r2, v)] = 1 if agrees else 2

    cycles = _hf_cycles(art)
    for j, cl in enumerate(F.clauses, 1):
        w = at[f"w{j}"]
        vs = [at[f"v{i},{j}"] for i in cl]
        pairs = [_key(a, b) for a, b in itertools.combinations(vs, 2)]
        for option in itertools.product((1, 2), repeat=3):
            for v, c in zip(vs, option):
                col[_key(w, v)] = c
            if all(any(is_unbalanced_4cycle(col, cy) for cy in cycles[p]) for p in pairs):
                break
        else:
            raise AssertionError(f"no coloring at w{j} completes clause {cl}")

    h = art.hf.vertex_count
    gadj = art.gf.adjacency()
    for u, v in art.gf.sorted_edges():
        if v < h or (u, v) in col:
            continue
        role = art.gf_roles[v]
        if u < h and role.startswith("b("):
            col[(u, v)] = 1
        elif u < h and role.startswith("c(") and u == max(x for x in gadj[v] if x < h):
            col[(u, v)] = 1
        else:
            col[(u, v)] = 2
    return col


def _check_hf_budget(art: ReductionArtifact, budget: int):
    free = len(art.hf.edges) - len(_spanning_forest(art.hf))
    if free > budget:
        raise BudgetExceeded(free, budget, "free edges")


DEFAULT_HF_BUDGET = 128


def iter_good_hf_colorings(art: ReductionArtifact, budget: int = DEFAULT_HF_BUDGET) -> Iterator[Coloring]:
    """Good colorings of H_F, one per switching class."""
    _check_hf_budget(art, budget)
    return unbalanced_cover_search(art.hf, art.representative_pairs)


def find_good_hf_coloring(art: ReductionArtifact, budget: int = DEFAULT_HF_BUDGET) -> Coloring | None:
    return next(iter_good_hf_colorings(art, budget), None)


def good_coloring_exists_hf(art: ReductionArtifact, budget: int = DEFAULT_HF_BUDGET) -> bool:
    return find_good_hf_coloring(art, budget) is not None


def is_good_hf_coloring(art: ReductionArtifact, coloring: Mapping[tuple[int, int], int]) -> bool:
    _check_total(art.hf, coloring)
    cycles = _hf_cycles(art)
    return all(any(is_unbalanced_4cycle(coloring, c) for c in cycles[p]) for p in art.representative_pairs)


def decode_assignment(art: ReductionArtifact, coloring: Mapping[tuple[int, int], int]) -> tuple[bool, ...]:
    """x_i is true when r1 and r2 agree on u_i."""
    at = art.index
    return tuple(
        agree(coloring, at["r1"], at["r2"], at[f"u{i}"]) for i in range(1, art.formula.num_vars + 1)
    )


def claim1_holds(art: ReductionArtifact, coloring: Mapping[tuple[int, int], int]) -> bool:
    """r1, r2 agree on u_i iff they agree on every v_{i,j}."""
    at = art.index
    r1, r2 = at["r1"], at["r2"]
    for i in range(1, art.formula.num_vars + 1):
        on_u = agree(coloring, r1, r2, at[f"u{i}"])
        for j in art.formula.occurrences(i):
            if agree(coloring, r1, r2, at[f"v{i},{j}"]) != on_u:
                return False
    return True


def claim2_holds(art: ReductionArtifact, coloring: Mapping[tuple[int, int], int]) -> bool:
    """r1, r2 neither agree nor disagree on all three v_{.,j} of a clause."""
    at = art.index
    r1, r2 = at["r1"], at["r2"]
    for j, cl in enumerate(art.formula.clauses, 1):
        seen = {agree(coloring, r1, r2, at[f"v{i},{j}"]) for i in cl}
        if len(seen) != 2:
            return False
    return True


def representative_cycles_inside_hf(art: ReductionArtifact) -> bool:
    """Every 4-cycle of G_F through a representative pair uses H_F vertices only."""
    if art.gf is None:
        raise ValueError("artifact has no G_F")
    adj = art.gf.adjacency()
    h = art.hf.vertex_count
    for u, v in art.representative_pairs:
        for cyc in four_cycles_through(adj, u, v):
            if max(cyc) >= h:
                return False
    return True


def parse_coloring(text: str) -> Coloring:
    col: Coloring = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] != "c" or len(tok) != 4:
            raise ParseError("expected 'c <u> <v> <1|2>'", lineno)
        try:
            u, v, c = (int(t) for t in tok[1:])
        except ValueError:
            raise ParseError("non-integer field", lineno) from None
        if c not in (1, 2):
            raise ParseError(f"color {c} not in {{1,2}}", lineno)
        e = _key(u, v)
        if e in col:
            raise ParseError(f"edge {e} colored twice", lineno)
        col[e] = c
    return col


def serialize_coloring(coloring: Mapping[tuple[int, int], int]) -> str:
    return "".join(f"c {u} {v} {c}\n" for (u, v), c in sorted(coloring.items()))
