import json
import random
from fractions import Fraction

import pytest

from homextremal.canon import certificate
from homextremal.enumeration import EnumSpec
from homextremal.graphs import (
    TargetGraph,
    balanced_biclique,
    complete_bipartite,
    complete_graph,
    complete_looped,
    complete_simple,
    copies,
    turan,
)
from homextremal.harness import (
    check_closed_forms,
    check_conjecture,
    check_lemma42,
    check_path_lemma,
    check_prop41,
    check_tprime_factor,
    count_all,
    minimal_violating_copies,
    path_bound,
    path_lemma_eligible,
    power_le,
    scan_extremal,
)
from homextremal.hom import CopiesTarget, HomCache, hom_brute_force

from conftest import naive_hom


def cert(g):
    return certificate(g).decode()


def test_power_le_exact():
    assert power_le(8, 4, Fraction(3, 2))
    assert not power_le(9, 4, Fraction(3, 2))
    # 2^(1/2) is irrational; 1 < sqrt 2 < 2
    assert power_le(1, 2, Fraction(1, 2)) and not power_le(2, 2, Fraction(1, 2))
    for scale in (1, 2, 7):
        assert power_le(8, 4, Fraction(3, 2), scale)


def test_conjecture_self_check_and_scale():
    for n, d in ((5, 2), (6, 3), (7, 2)):
        g = complete_bipartite(d, n - d)
        for h in (complete_simple(3), complete_looped(2)):
            a = check_conjecture(g, d, h)
            assert a.verdict == "boundHolds"
            for scale in (2, 3):
                b = check_conjecture(g, d, h, scale=scale)
                assert b.verdict == a.verdict
                assert [t["lhs_le_term"] for t in a.terms] == [t["lhs_le_term"] for t in b.terms]


def test_conjecture_two_k4():
    r = check_conjecture(copies(2, complete_graph(4)), 3, complete_simple(4))
    assert r.lhs == 576 and r.verdict == "boundHolds"
    assert r.terms[0]["base"] == "24" and r.terms[0]["lhs_le_term"]


def test_minimal_violating_copies_boundary():
    g = copies(2, turan(3, 6))
    k = minimal_violating_copies(g, 4, complete_simple(3))
    assert k == 563
    assert check_conjecture(g, 4, CopiesTarget(k, complete_simple(3))).verdict == "violated"
    assert check_conjecture(g, 4, CopiesTarget(k - 1, complete_simple(3))).verdict == "boundHolds"
    # hand analysis of the dominant term agrees with the search
    assert (6 * 563) ** 4 > 729000 * 563**3 and not (6 * 562) ** 4 > 729000 * 562**3


def test_path_lemma_small():
    r = check_path_lemma(3, 8)
    assert r.passed and r.details["targets_eligible"] > 0
    assert not check_path_lemma(1, 6, [complete_looped(2)]).passed
    assert not check_path_lemma(1, 6, [balanced_biclique(2)]).passed
    assert not path_lemma_eligible(complete_looped(2))
    assert path_lemma_eligible(complete_simple(3))
    assert path_bound(2, 4) == 3


def test_biclique_bound_examples():
    r = check_lemma42(1, complete_simple(2), range(1, 9))
    assert r.passed
    for k in (1, 2, 3):
        r = check_lemma42(2, complete_looped(k), range(2, 8))
        rows = r.details["rows"]
        # k^n against s * k^(n+1-2) = k^(n+1)
        assert all(int(row["hom"]) * k == int(row["bound"]) for row in rows)
    r = check_lemma42(2, complete_simple(3), range(2, 21))
    assert r.details["failing_n"] == [2]
    assert r.details["first_holding_n"] == 3
    assert all(row.get("oracle_agrees", True) for row in r.details["rows"])


def test_tprime_and_closed_forms():
    r = check_tprime_factor()
    assert r.passed
    assert r.details["hom_turan_k4"] == "24" and r.details["hom_tprime_k4"] == "48"
    assert check_closed_forms(5, seed=3).passed


def test_disjoint_cycle_sweep_small():
    r = check_prop41(max_n=7)
    assert r.passed and r.details["scanned"]["delta=3,d=1,n=7"] == 150


def test_scan_examples():
    r = scan_extremal(EnumSpec(4, 3, True), complete_simple(3))
    assert r.scanned == 1 and r.max_count == 0
    r = scan_extremal(EnumSpec(6, 3), complete_looped(2))
    assert r.max_count == 64 and len(r.maximizers) == r.scanned
    r = scan_extremal(EnumSpec(7, 3, True), complete_simple(3), recount_every=1)
    assert r.recounted == r.scanned == 150 and r.max_count == 66
    assert r.maximizers == [cert(complete_bipartite(3, 4))] and r.k_delta_unique


def test_count_all_order_invariant():
    rng = random.Random(5)
    from homextremal.enumeration import enumerate_graphs

    graphs = enumerate_graphs(EnumSpec(6, 2))
    h = TargetGraph.from_parts(3, [0], [(0, 1), (1, 2)])
    base = dict(zip(map(cert, graphs), count_all(graphs, h)))
    rng.shuffle(graphs)
    for workers in (1, 3):
        again = dict(zip(map(cert, graphs), count_all(graphs, h, workers, HomCache())))
        assert again == base
    for g in graphs[:10]:
        assert base[cert(g)] == naive_hom(g, h)


def test_reports_serialise():
    r = check_lemma42(2, complete_simple(3), range(3, 6))
    obj = json.loads(r.to_json())
    assert obj["pass"] is True and obj["details"]["s_value"] == "3"
    assert r.to_csv().startswith("lemma,pass")
    s = scan_extremal(EnumSpec(5, 2), complete_simple(3))
    assert json.loads(s.to_json())["scanned"] == s.scanned
    assert s.to_csv().count("\n") == 1 + len(s.maximizers)
