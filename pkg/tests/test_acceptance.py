"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with `pytest -v -s tests/test_acceptance.py` to see the lines live.
"""

import math
import random
import time

from pebblegames.buildk3 import build
from pebblegames.games import (PebbleGameSolver, existential_duplicator_wins,
                               order_game_duplicator_wins)
from pebblegames.general import GeneralFamily
from pebblegames.logic import clique_sentence, evaluate, sample_agreement
from pebblegames.params import (FULL_K3, GENERAL, REDUCED_K3, Params, bit)
from pebblegames.strategy import validate_strategy
from pebblegames.structures import clique_graph, layered_graph

from lemma_suite import run_all


def _report(n, ok, detail):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


def test_criterion_1_parameter_tables():
    t0 = time.perf_counter()
    p = Params(3, 3, FULL_K3)
    got = p.gamma_star
    closed = math.factorial(p.m) * 4 ** p.m
    ms = (time.perf_counter() - t0) * 1000
    ok = got == (12, 96, 384) and got[-1] == closed
    _report(1, ok, f"gamma* = {got}, m!*4^m = {closed}, {ms:.3f} ms")


def test_criterion_2_construction_sanity(reduced3, reduced_pair):
    t0 = time.perf_counter()
    a, b = reduced_pair
    mid = reduced3.mid
    checks = {
        "96 vertices": len(a) == len(b) == 96,
        "one extra edge": len(a.edges) == len(b.edges) + 1,
        "B triangle-free": b.count_triangles() == 0,
        "mid triangle": ((mid, 0), (mid, 1), (mid, 2)) in a.triangles(),
        "girths": a.girth() == 3 and b.girth() == 4,
    }
    s = time.perf_counter() - t0
    bad = [k for k, v in checks.items() if not v]
    _report(2, not bad, f"mid = {mid}, failed: {bad or 'none'}, {s:.2f} s")


def test_criterion_3_triangle_census(reduced_pair):
    a, _ = reduced_pair
    n1, n2 = a.count_triangles(), a.count_triangles()
    _report(3, n1 == n2 == 8, f"A-side reduced m=3 triangles: {n1}, oracle 8")


def test_criterion_4_game_results(shifted_pair):
    a, b = shifted_pair
    t0 = time.perf_counter()
    s2 = PebbleGameSolver(a, b, 2)
    dup = s2.duplicator_wins(3)
    ta = time.perf_counter() - t0
    s3 = PebbleGameSolver(a, b, 3)
    spo = not s3.duplicator_wins(3)
    ef = all(order_game_duplicator_wins(2 ** m - 1 + d1, 2 ** m - 1 + d2, m)
             for m in (1, 2, 3, 4) for d1 in (0, 1, 5) for d2 in (0, 1, 5))
    ef = ef and all(not order_game_duplicator_wins(2 ** m - 2, 2 ** m - 1, m)
                    for m in (1, 2, 3, 4))
    ok = dup and spo and ef
    _report(4, ok, f"(a) duplicator 2-pebble: {dup} in {ta:.1f} s "
            f"({s2.nodes} nodes); (b) spoiler 3-pebble: {spo}; "
            f"(c) EF thresholds m<=4: {ef}")


def test_criterion_5_existential():
    results = {}
    for k in (3, 4):
        a, b = clique_graph(k), layered_graph(k)
        results[k] = (existential_duplicator_wins(a, b, k - 1),
                      not existential_duplicator_wins(a, b, k))
    ok = all(all(v) for v in results.values())
    _report(5, ok, f"duplicator with k-1 / spoiler with k: {results}")


def test_criterion_6_strategy_validation(reduced3, shifted_pair):
    a, b = shifted_pair
    t0 = time.perf_counter()
    rep = validate_strategy(reduced3, a, b)
    s = time.perf_counter() - t0
    ok = rep["violationCount"] == 0
    _report(6, ok, f"{rep['statesExplored']} states, "
            f"{rep['distinctReplies']} replies, "
            f"{rep['violationCount']} violations, {s:.1f} s")


def test_criterion_7_lemma_suite():
    t0 = time.perf_counter()
    failures = run_all(10_000)
    s = time.perf_counter() - t0
    bad = {k: v for k, v in failures.items() if v}
    _report(7, not bad, f"{len(failures)} lemmas x 10^4 cases, "
            f"failures: {bad or 'none'}, {s:.1f} s")


def test_criterion_8_general_predicates():
    t0 = time.perf_counter()
    # (i) the k-clique at real k=4, m=5 parameters, point queries only
    f = GeneralFamily(Params(4, 5, GENERAL))
    clique = f.clique_vertices()
    digits = len(str(f.p.width))
    flat = all(f.edge_star((u.x, u.y), (v.x, v.y), side="a")
               for i, u in enumerate(clique) for v in clique[i + 1:])
    full = all(f.edge_full(u, v, side="a")
               for i, u in enumerate(clique) for v in clique[i + 1:])

    # (ii) the k=7 slot-word example
    p7 = Params(7, 3, GENERAL, toy=True)
    sw_ok = p7.q_hat(2, 4) == 5 and bit(0b1011100011, 5) == 1

    # (iii) universal simulator, exhaustive at toy k=4, m=3: every
    # (cc, range-number, decodable S) combination appears as a congruence
    # label inside one U*_2-tuple
    ft = GeneralFamily(Params(4, 3, GENERAL, toy=True))
    pt = ft.p
    guard = pt.gamma_star[0]
    svals = {frozenset()}
    for j in range(guard, pt.cl_star[3] - guard):
        svals.add(frozenset(ft.cl(u, v) for u, v in ft.band_tuple(2, j)))
    seen = set()
    for x in pt.tuple_members(pt.mid, 2):
        if pt.idx(x) == 2:
            c = ft.cl(x, 1)
            seen.add((c[0], c[3], c[4]))
    need = {(cc, rn, w) for cc in range(pt.k - 1) for rn in (-1, 0, 1)
            for w in svals}
    sim_ok = need <= seen

    # (iv) SW flexibility, exhaustive at toy k=4 (one slot-word bit)
    rng = random.Random(0)
    flex_ok = True
    trials = 0
    while trials < 500:
        rel = rng.randrange(pt.gamma_star[1])
        u = rel * pt.col(2) + pt.half_sum(2)
        if pt.idx(u) != 2:
            continue
        trials += 1
        v = rng.choice((1, 2))
        for w in (0, 1):
            if ft.sw_witness(2, [(u, v)], 3 - v, [w]) is None:
                flex_ok = False

    # (v) sampled B-side clique search
    rep = ft.sampled_clique_check(side="b", samples=10_000, seed=0)
    none_found = rep["cliques"] == []
    s = time.perf_counter() - t0
    ok = flat and full and sw_ok and sim_ok and flex_ok and none_found
    _report(8, ok, f"clique at {digits}-digit width: flat {flat} full {full}; "
            f"q_hat example {sw_ok}; simulator {len(need)} combos {sim_ok}; "
            f"flexibility {flex_ok}; B cliques in 10^4 samples: "
            f"{len(rep['cliques'])}; {s:.0f} s")


def test_criterion_9_logic_cross_check(reduced_pair):
    a, b = reduced_pair
    t0 = time.perf_counter()
    s3 = clique_sentence(3)
    sides_ok = evaluate(a, s3) and not evaluate(b, s3)
    agreed = sample_agreement(a, b, 500, seed=0)  # raises on disagreement
    s = time.perf_counter() - t0
    _report(9, sides_ok, f"clique sentence A/B: {sides_ok}; 500 sampled "
            f"2-variable qr<=3 sentences agree ({agreed} true on both), "
            f"{s:.1f} s")
