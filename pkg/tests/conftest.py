import itertools
import random

import pytest
from hypothesis import strategies as st

from mncliques.core import Signature, from_codes

SMALL_SIGNATURES = [Signature(1, 0), Signature(0, 2), Signature(1, 1), Signature(0, 3), Signature(2, 0)]


def mixed_from_choices(sig, k, choices):
    pairs = itertools.combinations(range(k), 2)
    return from_codes(sig, k, [(u, v, c) for (u, v), c in zip(pairs, choices) if c])


def all_mixed_graphs(sig, k):
    for choices in itertools.product(range(sig.kinds + 1), repeat=k * (k - 1) // 2):
        yield mixed_from_choices(sig, k, choices)


def random_mixed(sig, k, rnd: random.Random, p_absent=None):
    choices = []
    for _ in range(k * (k - 1) // 2):
        if p_absent is not None and rnd.random() < p_absent:
            choices.append(0)
        else:
            choices.append(rnd.randrange(sig.kinds + 1))
    return mixed_from_choices(sig, k, choices)


@st.composite
def mixed_graphs(draw, max_k=6, sigs=SMALL_SIGNATURES):
    sig = draw(st.sampled_from(sigs))
    k = draw(st.integers(0, max_k))
    choices = draw(
        st.lists(st.integers(0, sig.kinds), min_size=k * (k - 1) // 2, max_size=k * (k - 1) // 2)
    )
    return mixed_from_choices(sig, k, choices)


def set_partitions(k):
    """All partitions of range(k) as restricted growth strings."""
    if k == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for p in range(top + 2):
            yield from rec(prefix + [p], max(top, p))

    yield from rec([0], 0)


def brute_valid(g, parts):
    """Quotient well-defined: no adjacency inside a part, one relation per
    ordered pair of parts (computed from Adjacency values, not codes)."""
    seen = {}
    for u, v in itertools.combinations(range(g.vertex_count), 2):
        a = g.adjacency_type(u, v)
        if a.kind == "absent":
            continue
        pu, pv = parts[u], parts[v]
        if pu == pv:
            return False
        for key, val in (((pu, pv), a), ((pv, pu), a.reversed())):
            if seen.setdefault(key, val) != val:
                return False
    return True


def brute_chromatic(g):
    return min(
        (max(p) + 1 if p else 0) for p in set_partitions(g.vertex_count) if brute_valid(g, p)
    )


def brute_rigid(g, u, v):
    from mncliques.rigidity import is_special_two_path

    if g.adjacency_type(u, v).kind != "absent":
        return True
    return any(is_special_two_path(g, u, w, v) for w in range(g.vertex_count) if w not in (u, v))


def brute_is_clique(g):
    return all(brute_rigid(g, u, v) for u, v in itertools.combinations(range(g.vertex_count), 2))


def brute_absolute(g):
    for size in range(g.vertex_count, 0, -1):
        for S in itertools.combinations(range(g.vertex_count), size):
            if brute_is_clique(g.induced(list(S))):
                return size
    return 0


def brute_relative(g):
    for size in range(g.vertex_count, 0, -1):
        for S in itertools.combinations(range(g.vertex_count), size):
            if all(brute_rigid(g, u, v) for u, v in itertools.combinations(S, 2)):
                return size
    return 0


@pytest.fixture
def directed_p4():
    """0 -> 1 -> 2 -> 3 with one arc color."""
    return from_codes(Signature(1, 0), 4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
