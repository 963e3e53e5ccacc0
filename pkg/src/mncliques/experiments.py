"""Uniform random (m,n)-mixed graphs and exact counting on tiny orders.

Each unordered pair {u,v} (u < v) independently takes a uniform relation code
in 0..2m+n: 0 is absent, 1..n an edge color, n+1..n+m an arc u -> v and
n+m+1..n+2m an arc v -> u.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from math import comb

import numpy as np

from .core import BudgetExceeded, MixedGraph, Signature, from_codes

PRNG_ALGORITHM = "numpy-PCG64-SeedSequence"
DEFAULT_ENUM_BUDGET = 10**8


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for trial ``trial``, keyed on (seed, trial) only."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def random_codes(sig: Signature, k: int, rng: np.random.Generator) -> np.ndarray:
    """Relation codes for the C(k,2) pairs in lexicographic order."""
    return rng.integers(0, sig.kinds + 1, size=comb(k, 2))


def random_graph(sig: Signature, k: int, rng: np.random.Generator) -> MixedGraph:
    if k < 0:
        raise ValueError("vertex count must be non-negative")
    draws = random_codes(sig, k, rng)
    pairs = itertools.combinations(range(k), 2)
    return from_codes(sig, k, ((u, v, int(c)) for (u, v), c in zip(pairs, draws) if c))


def _code_matrix(sig: Signature, k: int, draws) -> np.ndarray:
    mat = np.zeros((k, k), dtype=np.int64)
    if k < 2:
        return mat
    iu, ju = np.triu_indices(k, 1)
    d = np.asarray(draws, dtype=np.int64)
    inv = np.where(d <= sig.n, d, np.where(d <= sig.n + sig.m, d + sig.m, d - sig.m))
    inv[d == 0] = 0
    mat[iu, ju] = d
    mat[ju, iu] = inv
    return mat


def is_clique_matrix(mat: np.ndarray) -> bool:
    """Clique test on a relation-code matrix: every pair is adjacent or seen
    through two different relations by some common neighbour."""
    k = mat.shape[0]
    if k < 2:
        return True
    a = mat[:, :, None]  # [w, u]
    b = mat[:, None, :]  # [w, v]
    special = ((a != 0) & (b != 0) & (a != b)).any(axis=0)
    rigid = special | (mat != 0)
    np.fill_diagonal(rigid, True)
    return bool(rigid.all())


def enumerate_exact(sig: Signature, k: int, budget: int = DEFAULT_ENUM_BUDGET) -> tuple[int, int]:
    """(number of labeled graphs on k vertices, number of them that are cliques)."""
    pairs = comb(k, 2)
    total_expected = (sig.kinds + 1) ** pairs
    if total_expected > budget:
        raise BudgetExceeded(total_expected, budget, "graphs")
    total = cliques = 0
    for draws in itertools.product(range(sig.kinds + 1), repeat=pairs):
        total += 1
        cliques += is_clique_matrix(_code_matrix(sig, k, draws))
    return total, cliques


@dataclass(frozen=True)
class ExperimentReport:
    m: int
    n: int
    k: int
    trials: int
    cliques: int
    fraction: float
    seed: int
    prng: str = PRNG_ALGORITHM

    def to_line(self) -> str:
        return json.dumps(asdict(self))


def _count_cliques(args) -> int:
    m, n, k, seed, start, stop = args
    sig = Signature(m, n)
    hits = 0
    for t in range(start, stop):
        draws = random_codes(sig, k, trial_rng(seed, t))
        hits += is_clique_matrix(_code_matrix(sig, k, draws))
    return hits


def clique_fraction(sig: Signature, k: int, trials: int, seed: int, jobs: int = 1) -> ExperimentReport:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    jobs = max(1, min(jobs, trials))
    step = -(-trials // jobs)
    chunks = [(sig.m, sig.n, k, seed, s, min(s + step, trials)) for s in range(0, trials, step)]
    if len(chunks) == 1:
        hits = _count_cliques(chunks[0])
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            hits = sum(pool.map(_count_cliques, chunks))
    return ExperimentReport(sig.m, sig.n, k, trials, hits, hits / trials, seed)


def non_special_count(sig: Signature) -> int:
    """Relation pairs (w->u, w->v) that neither join u,v by a special 2-path
    through w, counted over the full (2m+n+1)^2 grid."""
    r = range(sig.kinds + 1)
    return sum(1 for a in r for b in r if not (a and b and a != b))


def union_bound(sig: Signature, k: int) -> int:
    """C(k,2) * (6m+3n+1)^(k-2) * (2m+n+1)^C(k-2,2)."""
    if k < 2:
        return 0
    return comb(k, 2) * (6 * sig.m + 3 * sig.n + 1) ** (k - 2) * (sig.kinds + 1) ** comb(k - 2, 2)


@dataclass(frozen=True)
class UnionBoundReport:
    m: int
    n: int
    k: int
    total: int
    exact_noncliques: int
    bound: int

    def to_line(self) -> str:
        return json.dumps(asdict(self))


def union_bound_check(sig: Signature, k: int, budget: int = DEFAULT_ENUM_BUDGET) -> UnionBoundReport:
    total, cliques = enumerate_exact(sig, k, budget)
    report = UnionBoundReport(sig.m, sig.n, k, total, total - cliques, union_bound(sig, k))
    if report.exact_noncliques > report.bound:
        raise AssertionError(f"union bound violated: {report}")
    return report
