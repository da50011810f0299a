"""Book numbers, witnesses, certificates, and the proof diagnostics."""

import random
from itertools import combinations
from math import comb

import pytest

import c4book as cb
from c4book import ramsey
from c4book.errors import DomainError, NotC4Free
from c4book.graphcore import Graph

from oracles import (
    complete_graph,
    cycle_graph,
    naive_complement_book_number,
    random_c4_free,
    random_graph,
    star_graph,
)


# -- complement book number --


def test_book_number_examples():
    count, witness = cb.complement_book_number(Graph.empty(5), 2)
    assert count == 3 and witness.spine == (0, 1)
    count, witness = cb.complement_book_number(cycle_graph(6), 1)
    assert count == 3
    count, witness = cb.complement_book_number(complete_graph(4), 2)
    assert count == 0 and witness.spine == ()


def test_book_number_against_oracle():
    rng = random.Random(21)
    for _ in range(500):
        n = rng.randint(1, 12)
        g = random_graph(rng, n, rng.choice([0.15, 0.3, 0.5, 0.8]))
        for k in range(1, min(3, n) + 1):
            mine, _ = cb.complement_book_number(g, k)
            assert mine == naive_complement_book_number(g, k), (g.rows, k)


def test_book_witness_is_valid_and_lex_minimal():
    rng = random.Random(22)
    for _ in range(200):
        n = rng.randint(2, 10)
        g = random_graph(rng, n, rng.random())
        k = rng.randint(1, min(3, n))
        count, witness = cb.complement_book_number(g, k)
        if not witness.spine:
            continue
        # spine independent, pages complete to the spine in the complement
        for u, v in combinations(witness.spine, 2):
            assert not g.has_edge(u, v)
        for w in witness.pages:
            assert w not in witness.spine
            assert all(not g.has_edge(w, u) for u in witness.spine)
        assert witness.page_count == count == len(witness.pages)
        # lexicographically smallest maximizing spine
        best = None
        for spine in combinations(range(n), k):
            if any(g.has_edge(u, v) for u, v in combinations(spine, 2)):
                continue
            pages = sum(
                1
                for w in range(n)
                if w not in spine and all(not g.has_edge(w, u) for u in spine)
            )
            if pages == count:
                best = spine
                break
        assert witness.spine == best


def test_book_number_domain():
    with pytest.raises(DomainError):
        cb.complement_book_number(Graph.empty(3), 0)
    with pytest.raises(DomainError):
        cb.complement_book_number(Graph.empty(3), 4)


def test_book_number_stop_at_short_circuit():
    count, _ = cb.complement_book_number(Graph.empty(9), 2, stop_at=3)
    assert count >= 3


# -- witnesses --


def test_witness_examples():
    c6 = cycle_graph(6)
    assert cb.is_ramsey_witness(c6, 1, 4)
    assert not cb.is_ramsey_witness(cycle_graph(4), 1, 100)
    assert cb.is_ramsey_witness(cb.er_graph(3), 1, 10)


# -- certificates --


def test_certificate_er3():
    cert = cb.certify_lower_bound(cb.er_graph(3), 1)
    assert cert.order == 13 and cert.min_degree == 3
    assert cert.guaranteed_book_free_n == 10
    assert cert.implied_bound == "r(C4, B_10^(1)) >= 14"


def test_certificate_er2():
    cert = cb.certify_lower_bound(cb.er_graph(2), 1)
    assert cert.guaranteed_book_free_n == 5
    assert cert.implied_bound == "r(C4, B_5^(1)) >= 8"


def test_certificate_formula_and_crossvalidation():
    # certify_lower_bound itself cross-validates against the exhaustive book
    # number for every graph here (all have order <= 80); the explicit
    # re-check below is limited to the smaller ones to keep the test fast.
    rng = random.Random(23)
    graphs = [cb.er_graph(q) for q in (2, 3, 4, 5, 7, 8)]
    for _ in range(60):
        graphs.append(random_c4_free(rng, rng.randint(2, 40), 0.3))
    for g in graphs:
        delta = min(g.degrees())
        for k in (1, 2, 3):
            if k > g.n:
                continue
            cert = cb.certify_lower_bound(g, k)
            assert cert.guaranteed_book_free_n == g.n - k * (delta + 1) + comb(k, 2) + 1
            if g.n <= 30:
                nmax, _ = cb.complement_book_number(g, k)
                assert cert.guaranteed_book_free_n - 1 >= nmax


def test_certificate_refuses_c4():
    with pytest.raises(NotC4Free):
        cb.certify_lower_bound(cycle_graph(4), 1)


def test_certificate_hash_is_isomorphism_invariant():
    g = cb.er_graph(3)
    perm = list(range(g.n))
    random.Random(1).shuffle(perm)
    h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    assert cb.certify_lower_bound(g, 2).graph_hash == cb.certify_lower_bound(h, 2).graph_hash


# -- admissible sets --


def test_admissible_star_center_empty():
    star = star_graph(5)
    assert cb.find_admissible_sets(star, 0, 2, deg_cap=5) == []


def test_admissible_singletons():
    g = cb.er_graph(3)
    sets = cb.find_admissible_sets(g, 0, 1, deg_cap=4, limit=50)
    assert sets
    nbhd = set(g.neighbors(0)) | {0}
    for (x,) in sets:
        assert x not in nbhd
        assert any(g.has_edge(x, u) for u in g.neighbors(0))
        assert g.degree(x) <= 4


def test_admissible_pairs_er5():
    g = cb.er_graph(5)
    absolutes = set(cb.absolute_points(cb.field_new(5, 1)))
    v = next(u for u in range(g.n) if u not in absolutes)
    sets = cb.find_admissible_sets(g, v, 2, deg_cap=5, limit=200)
    for pair in sets:
        assert ramsey.verify_admissible(g, v, pair, 5)
        x, y = pair
        assert not g.has_edge(x, y)
        assert g.degree(x) <= 5 and g.degree(y) <= 5


def test_admissible_properties_reverified_on_random_inputs():
    rng = random.Random(24)
    hits = 0
    for _ in range(40):
        g = random_c4_free(rng, rng.randint(6, 18), 0.35)
        v = rng.randrange(g.n)
        k = rng.randint(1, 3)
        cap = max(g.degrees(), default=0)
        for k_set in cb.find_admissible_sets(g, v, k, deg_cap=cap, limit=20):
            assert ramsey.verify_admissible(g, v, k_set, cap)
            hits += 1
    assert hits > 0


def test_claim3_dichotomy_on_polarity_graphs():
    """Either an admissible set has a disjoint-neighborhood pair, or it pins a
    book of at least N - k - kq + C(k,2) pages in the complement (exactly,
    when every pair shares a neighbor)."""
    for q in (4, 5, 7, 8):
        g = cb.er_graph(q)
        n_v = g.n
        for v in range(0, n_v, max(1, n_v // 6)):
            for k in (2, 3):
                if g.degree(v) < k:
                    continue
                for k_set in cb.find_admissible_sets(g, v, k, deg_cap=q, limit=30):
                    disjoint = any(
                        not (g.rows[x] & g.rows[y]) for x, y in combinations(k_set, 2)
                    )
                    if disjoint:
                        continue
                    spine_mask = 0
                    union = 0
                    for x in k_set:
                        spine_mask |= 1 << x
                        union |= g.rows[x]
                    pages = n_v - k - (union & ~spine_mask).bit_count()
                    assert pages >= n_v - k - k * q + comb(k, 2)


# -- good pairs --


def test_good_pairs_examples():
    two_k2 = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert cb.good_pairs(two_k2, 1).count == 6
    # C5 is triangle-free: its five edges are exactly the disjoint-
    # neighborhood pairs, matching non_two_path_pairs at full degree cap
    assert cb.good_pairs(cycle_graph(5), 2).count == 5
    gp = cb.good_pairs(star_graph(3), 3)
    assert gp.count == 3
    assert set(gp.sample) == {(0, 1), (0, 2), (0, 3)}


def test_good_pairs_match_two_path_count_at_full_cap():
    rng = random.Random(25)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 12), rng.random())
        cap = max(g.degrees(), default=0)
        assert cb.good_pairs(g, cap).count == cb.non_two_path_pairs(g)
        assert cb.good_pairs(g, cap - 1).count <= cb.non_two_path_pairs(g)
