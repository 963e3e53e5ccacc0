"""Acceptance checks, one per criterion.

Each check returns ``(passed, detail)`` and the runner prints a single
``PASS``/``FAIL`` line for it. Run with ``pytest tests/test_acceptance.py -s``
to see the lines, or ``python3 tests/test_acceptance.py`` for the lines alone.
All tolerances are exact unless a check states otherwise.
"""

import itertools
import os
import random
import subprocess
import sys
import tempfile

import pytest

from mncliques.constructions import cycle, join, outerplanar_clique, path, planar_clique
from mncliques.core import Signature, serialize, serialize_simple
from mncliques.experiments import (
    clique_fraction,
    enumerate_exact,
    non_special_count,
    union_bound_check,
)
from mncliques.homsearch import chromatic_number, max_chromatic
from mncliques.rigidity import absolute_clique_number, is_clique, relative_clique_number, rigid_pair
from mncliques.signed import (
    NaeFormula,
    build_gf,
    build_hf,
    claim1_holds,
    claim2_holds,
    good_coloring_exists_hf,
    good_coloring_from_assignment,
    is_signed_clique,
    iter_good_hf_colorings,
    nae_solve,
    serialize_nae,
)

from conftest import all_mixed_graphs, brute_valid, random_mixed, set_partitions

S10, S02 = Signature(1, 0), Signature(0, 2)
EXTREMAL_SIGS = [Signature(m, n) for m in range(3) for n in range(5) if 0 < 2 * m + n <= 4 and (m, n) != (0, 1)]

RANDOM_SEED = 20240601
RANDOM_GRAPHS = 200
MC_K, MC_TRIALS, MC_SEED = 12, 10**4, 7


def criterion_1():
    bad = []
    for sig in EXTREMAL_SIGS:
        s = sig.kinds
        op, pl = outerplanar_clique(sig), planar_clique(sig)
        if op.vertex_count != 3 * s + 1 or not is_clique(op):
            bad.append(f"outerplanar({sig.m},{sig.n})")
        if pl.vertex_count != 3 * s * s + s + 1 or not is_clique(pl):
            bad.append(f"planar({sig.m},{sig.n})")
    return not bad, f"{len(EXTREMAL_SIGS)} signatures checked; mismatches: {bad or 'none'}"


CHI_EXPECTED = {("P5", S10): 3, ("P5", S02): 4, ("C5", S10): 5, ("C5", S02): 4}


def criterion_2():
    graphs = {"P5": path(5), "C5": cycle(5)}
    got = {key: max_chromatic(graphs[key[0]], key[1]).value for key in CHI_EXPECTED}
    # moving from (1,0) to (0,2) raises P5 by one and lowers C5 by one
    diffs = (got[("P5", S02)] - got[("P5", S10)], got[("C5", S02)] - got[("C5", S10)])
    ok = got == CHI_EXPECTED and diffs == (1, -1)
    shown = ", ".join(f"{g}({s.m},{s.n})={v}" for (g, s), v in got.items())
    return ok, f"{shown}; (0,2)-(1,0) differences P5 {diffs[0]:+d}, C5 {diffs[1]:+d}"


def criterion_3():
    # P2 and P3 here count vertices
    small = {"P2": path(1), "P3": path(2)}
    bad = []
    for sig in (S10, S02):
        chi = {name: max_chromatic(g, sig).value for name, g in small.items()}
        for a, b in itertools.combinations_with_replacement(small, 2):
            lhs = max_chromatic(join(small[a], small[b]), sig).value
            if lhs != chi[a] + chi[b] + 1:
                bad.append(f"{a}+{b} ({sig.m},{sig.n}): {lhs} != {chi[a]}+{chi[b]}+1")
    return not bad, f"6 joins checked; mismatches: {bad or 'none'}"


def _merge_oracle_mismatches(g):
    k = g.vertex_count
    mergeable = set()
    for p in set_partitions(k):
        if brute_valid(g, p):
            for u, v in itertools.combinations(range(k), 2):
                if p[u] == p[v]:
                    mergeable.add((u, v))
    return sum(
        1 for u, v in itertools.combinations(range(k), 2) if rigid_pair(g, u, v) == ((u, v) in mergeable)
    )


def criterion_4():
    count = mismatches = 0
    for sig in (S10, S02):
        for k in range(1, 5):
            for g in all_mixed_graphs(sig, k):
                count += 1
                mismatches += _merge_oracle_mismatches(g)
    rnd = random.Random(RANDOM_SEED)
    for i in range(RANDOM_GRAPHS):
        count += 1
        mismatches += _merge_oracle_mismatches(random_mixed((S10, S02)[i % 2], 6, rnd))
    return mismatches == 0, f"{count} graphs, {mismatches} pair mismatches"


def small_formulas():
    for v in range(0, 5):
        triples = list(itertools.combinations(range(1, v + 1), 3))
        for size in range(0, 3):
            for clauses in itertools.combinations(triples, size):
                yield NaeFormula(v, clauses)


def criterion_5():
    formulas = list(small_formulas())
    equiv_bad, claim_bad, gf_bad, doubled_bad, sat = [], [], [], [], 0
    for F in formulas:
        a = nae_solve(F)
        hf = build_hf(F)
        if (a is not None) != good_coloring_exists_hf(hf):
            equiv_bad.append(F)
        for col in iter_good_hf_colorings(hf):
            if not (claim1_holds(hf, col) and claim2_holds(hf, col)):
                claim_bad.append(F)
                break
        if a is None:
            continue
        sat += 1
        art = build_gf(F)
        if not is_signed_clique(art.gf, good_coloring_from_assignment(F, a, art)):
            gf_bad.append(F)
        art2 = build_gf(F, doubled_connectors=True)
        if not is_signed_clique(art2.gf, good_coloring_from_assignment(F, a, art2)):
            doubled_bad.append(F)
    ok = not (equiv_bad or claim_bad or gf_bad)
    detail = (
        f"{len(formulas)} formulas ({sat} satisfiable); equivalence failures {len(equiv_bad)}, "
        f"claim failures {len(claim_bad)}, G_F not a signed clique {len(gf_bad)}/{sat}; "
        f"with doubled connectors {len(doubled_bad)}/{sat}"
    )
    return ok, detail


def criterion_6():
    problems = []
    for sig, ks in ((S10, (2, 3, 4)), (S02, (2, 3))):
        for k in ks:
            total, _ = enumerate_exact(sig, k)
            if total != (sig.kinds + 1) ** (k * (k - 1) // 2):
                problems.append(f"total({sig.m},{sig.n}),k={k}")
            rep = union_bound_check(sig, k)
            if rep.exact_noncliques > rep.bound:
                problems.append(f"bound({sig.m},{sig.n}),k={k}")
    grid = [Signature(m, n) for m in range(3) for n in range(5) if 0 < 2 * m + n <= 4]
    problems += [f"nonspecial({s.m},{s.n})" for s in grid if non_special_count(s) != 6 * s.m + 3 * s.n + 1]
    total4, cliques4 = enumerate_exact(S10, 4)
    exact4 = cliques4 / total4
    mc = clique_fraction(S10, MC_K, MC_TRIALS, MC_SEED).fraction
    trend = mc > exact4
    if not trend:
        problems.append("trend")
    detail = (
        f"counting/bound problems: {[p for p in problems if p != 'trend'] or 'none'}; "
        f"trend: MC k={MC_K} fraction {mc:.4f} vs exact k=4 fraction {exact4:.4f}"
    )
    return not problems, detail


def consistency_corpus():
    for sig in (S10, S02):
        for k in range(0, 5):
            yield from all_mixed_graphs(sig, k)
    for sig in EXTREMAL_SIGS:
        yield outerplanar_clique(sig)
    for sig in (S10, S02):
        yield planar_clique(sig)
        for G in (path(5), cycle(5)):
            yield max_chromatic(G, sig).graph
    rnd = random.Random(RANDOM_SEED + 1)
    for i in range(100):
        yield random_mixed((S10, S02, Signature(1, 1))[i % 3], 6 + i % 2, rnd)


def criterion_7():
    count = bad = 0
    for g in consistency_corpus():
        count += 1
        a, _ = absolute_clique_number(g)
        r, _ = relative_clique_number(g)
        chi, _ = chromatic_number(g)
        chain = a <= r <= chi <= g.vertex_count
        if not chain or (chi == g.vertex_count) != bool(is_clique(g)):
            bad += 1
    return bad == 0, f"{count} graphs, {bad} violations"


def _cli(args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "mncliques.cli", *args], input=stdin, capture_output=True
    )
    return proc.returncode, proc.stdout


def criterion_8():
    with tempfile.TemporaryDirectory() as tmp:
        def put(name, text):
            p = os.path.join(tmp, name)
            with open(p, "w") as fh:
                fh.write(text)
            return p

        p5 = put("p5.txt", serialize_simple(path(5)))
        c4 = put("c4.txt", serialize_simple(cycle(4)))
        op = put("op.txt", serialize(outerplanar_clique(S10)))
        p4 = put("p4.txt", "mixed 1 0 4\na 0 1 1\na 1 2 1\na 2 3 1\n")
        nae = put("f.nae", serialize_nae(NaeFormula(3, ((1, 2, 3),))))
        sig = ["--m", "0", "--n", "2"]
        commands = [
            ["check-clique", op], ["check-clique", p4], ["relative-clique", p4], ["absolute-clique", p4],
            ["chromatic", p4], ["hom", p4, op],
            ["construct", "outerplanar-clique", *sig], ["construct", "planar-clique", *sig],
            ["construct", "join", p5, c4], ["construct", "iterate", c4, "--k", "3"],
            ["construct", "path", "4"], ["construct", "cycle", "6"],
            ["reduce-nae", nae, "--out", "-"], ["nae-solve", nae], ["signed-colorable", c4],
            ["experiment", "enumerate", "--m", "1", "--n", "0", "--k", "3"],
            ["experiment", "union-bound", "--m", "1", "--n", "0", "--k", "3"],
        ]
        with_jobs = [
            ["max-chromatic", p5, *sig],
            ["experiment", "random", "--m", "1", "--n", "0", "--k", "8", "--trials", "500", "--seed", "3"],
        ]
        unstable = []
        for cmd in commands:
            if _cli(cmd) != _cli(cmd):
                unstable.append(cmd[0])
        for cmd in with_jobs:
            runs = {_cli(cmd + ["--jobs", j]) for j in ("1", "2", "3")}
            if len(runs) != 1 or _cli(cmd) not in runs:
                unstable.append(cmd[0])
        col = put("c4.col", _cli(["signed-colorable", c4])[1].decode())
        if _cli(["verify-signed", c4, col]) != _cli(["verify-signed", c4, col]):
            unstable.append("verify-signed")
    total = len(commands) + len(with_jobs) + 1
    return not unstable, f"{total} invocations; unstable: {unstable or 'none'}"


CRITERIA = [
    (1, "extremal orders", criterion_1),
    (2, "chi of P5 and C5", criterion_2),
    (3, "join identity", criterion_3),
    (4, "rigidity vs merge oracle", criterion_4),
    (5, "reduction equivalence", criterion_5),
    (6, "counting and trend", criterion_6),
    (7, "consistency chain", criterion_7),
    (8, "CLI determinism", criterion_8),
]


def report(number, name, check):
    ok, detail = check()
    print(f"{'PASS' if ok else 'FAIL'} criterion {number} ({name}): {detail}", flush=True)
    return ok


@pytest.mark.parametrize("number, name, check", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(number, name, check):
    assert report(number, name, check)


if __name__ == "__main__":
    results = [report(*c) for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
