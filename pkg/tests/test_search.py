from itertools import combinations

import pytest

from filledgroups.elementset import ElementSet
from filledgroups.errors import InvalidArgument
from filledgroups.group import make_cyclic, make_dihedral, make_elementary_abelian_2
from filledgroups.pfs import fills, is_locally_maximal_pf, is_product_free
from filledgroups.search import (
    FILLED,
    NOT_FILLED,
    UNKNOWN,
    SearchBudget,
    decide_filled,
    find_nonfilling_lmpf_of_size,
    oracle_decide_filled,
)

from .conftest import CATALOG, catalog_upto


def assert_counterexample(g, s):
    assert is_product_free(g, s)
    assert is_locally_maximal_pf(g, s)
    assert not fills(g, s)


# -- the reference enumeration -----------------------------------------------


def test_oracle_c5_has_no_counterexample():
    c5 = make_cyclic(5)
    assert all(find_nonfilling_lmpf_of_size(c5, k) is None for k in range(1, 5))


def test_oracle_c4_singleton():
    c4 = make_cyclic(4)
    # {x} is not locally maximal ({x, x^3} is product-free); {x^2} is, and
    # misses x and x^3
    assert not is_locally_maximal_pf(c4, ElementSet.of(4, [1]))
    assert find_nonfilling_lmpf_of_size(c4, 1) == ElementSet.of(4, [2])


def test_oracle_d44_first_hit():
    d44 = make_dihedral(44)
    hit = find_nonfilling_lmpf_of_size(d44, 7)
    assert hit == ElementSet.of(44, [1, 4, 14, 17, 20, 22, 33])
    assert_counterexample(d44, hit)


def test_oracle_rejects_bad_k():
    with pytest.raises(InvalidArgument):
        find_nonfilling_lmpf_of_size(make_cyclic(4), 4)
    with pytest.raises(InvalidArgument):
        find_nonfilling_lmpf_of_size(make_cyclic(4), 0)


@pytest.mark.parametrize("name", [n for n in catalog_upto(12) if CATALOG[n].order >= 2])
def test_oracle_hits_are_lexicographically_first(name):
    g = CATALOG[name]
    for k in range(1, min(g.order, 5)):
        hit = find_nonfilling_lmpf_of_size(g, k)
        brute = None
        for combo in combinations(g.nonidentity, k):
            s = ElementSet.of(g.order, combo)
            if is_product_free(g, s) and is_locally_maximal_pf(g, s) and not fills(g, s):
                brute = s
                break
        assert hit == brute


# -- depth-first search ------------------------------------------------------


def test_examples():
    assert decide_filled(make_dihedral(22)).verdict == FILLED
    out = decide_filled(make_dihedral(16))
    assert out.verdict == NOT_FILLED
    assert_counterexample(make_dihedral(16), out.witness)
    assert decide_filled(make_elementary_abelian_2(3)).verdict == FILLED


def test_rejects_trivial_group():
    with pytest.raises(InvalidArgument):
        decide_filled(make_cyclic(1))


@pytest.mark.parametrize("name", [n for n in catalog_upto(14) if CATALOG[n].order >= 2])
def test_agrees_with_oracle(name):
    g = CATALOG[name]
    out = decide_filled(g)
    ref = oracle_decide_filled(g)
    assert out.verdict == ref.verdict
    if out.verdict == NOT_FILLED:
        assert_counterexample(g, out.witness)
        assert_counterexample(g, ref.witness)


@pytest.mark.parametrize("name", [n for n in catalog_upto(24) if CATALOG[n].order >= 2])
def test_witnesses_verify(name):
    g = CATALOG[name]
    out = decide_filled(g)
    assert out.verdict in (FILLED, NOT_FILLED)
    if out.verdict == NOT_FILLED:
        assert_counterexample(g, out.witness)


def product_free_supersets(g, s):
    rest = [x for x in g.nonidentity if x not in s]
    for size in range(0, len(rest) + 1):
        for extra in combinations(rest, size):
            t = s | ElementSet.of(g.order, extra)
            if is_product_free(g, t):
                yield t


@pytest.mark.parametrize("name", [n for n in catalog_upto(10) if CATALOG[n].order >= 2])
def test_pruning_loses_nothing(name):
    g = CATALOG[name]
    pruned = []
    decide_filled(g, on_prune=pruned.append)
    for bits in pruned:
        s = ElementSet(g.order, bits)
        assert fills(g, s)
        for t in product_free_supersets(g, s):
            assert fills(g, t)


def test_pruning_happens():
    pruned = []
    decide_filled(make_dihedral(10), on_prune=pruned.append)
    assert pruned


@pytest.mark.parametrize("name", ["D16", "fx:A4", "Q12", "C2xD6"])
def test_deterministic_repeats(name):
    g = CATALOG[name]
    runs = [decide_filled(g, SearchBudget(deterministic=True)) for _ in range(3)]
    assert len({(r.verdict, r.witness, r.nodes_visited) for r in runs}) == 1


def test_node_budget_gives_unknown():
    out = decide_filled(CATALOG["fx:D8*Q8"], SearchBudget(max_nodes=1000))
    assert out.verdict == UNKNOWN
    assert out.nodes_visited == 1001
    assert "budget" in out.reason


def test_unlimited_budget():
    assert decide_filled(make_dihedral(10), SearchBudget(max_nodes=0)).verdict == FILLED


def test_max_set_size():
    # D22 is filled, so capping the set size leaves the answer open
    out = decide_filled(make_dihedral(22), SearchBudget(max_set_size=2))
    assert out.verdict == UNKNOWN
    with pytest.raises(InvalidArgument):
        decide_filled(make_dihedral(6), SearchBudget(max_set_size=7))


@pytest.mark.parametrize("name", ["D16", "D14", "fx:D8xC2", "fx:Q8xC2"])
def test_parallel_verdict_matches(name):
    g = CATALOG[name]
    seq = decide_filled(g)
    par = decide_filled(g, SearchBudget(deterministic=False), threads=2)
    assert par.verdict == seq.verdict
    if par.verdict == NOT_FILLED:
        assert_counterexample(g, par.witness)


def test_parallel_budget():
    out = decide_filled(CATALOG["fx:D8*Q8"], SearchBudget(max_nodes=500, deterministic=False), threads=2)
    assert out.verdict == UNKNOWN
