import math
from itertools import product

import pytest
from hypothesis import given, strategies as st

from filledgroups.errors import CapacityError, InvalidArgument, InvalidParameter
from filledgroups.group import (
    FamilyTag,
    center,
    conjugacy_classes,
    direct_product,
    element_order,
    is_abelian,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    make_elementary_abelian_2,
    make_from_permutations,
    make_semidirect_cp_c4,
    order4_multiplier,
)

from .conftest import CATALOG


def assert_group_invariants(g):
    """Plain-loop re-check of every table invariant (independent of the
    numpy validation inside ``from_table``)."""
    n, t, e = g.order, g.rows, g.identity
    assert all(0 <= v < n for row in t for v in row)
    assert t[e] == list(range(n))
    assert [t[j][e] for j in range(n)] == list(range(n))
    for i in range(n):
        assert sorted(t[i]) == list(range(n))
        assert sorted(t[j][i] for j in range(n)) == list(range(n))
    for i, j, k in product(range(n), repeat=3):
        assert t[t[i][j]][k] == t[i][t[j][k]]
    for i in range(n):
        assert [j for j in range(n) if t[i][j] == e] == [g.inverses[i]]
        m, x = 1, i
        while x != e:
            x, m = t[x][i], m + 1
        assert g.elem_orders[i] == m
    assert g.elem_orders[e] == 1


@pytest.mark.parametrize("name", [k for k, g in CATALOG.items() if g.order <= 16])
def test_catalog_invariants(name):
    assert_group_invariants(CATALOG[name])


# -- cyclic ------------------------------------------------------------------


def test_cyclic_examples():
    assert make_cyclic(1).order == 1
    assert make_cyclic(3).elem_orders == (1, 3, 3)
    assert make_cyclic(5).inverses == (0, 4, 3, 2, 1)
    assert make_cyclic(7).family_tag == FamilyTag("Cyclic", 7)


def test_cyclic_rejects_zero():
    with pytest.raises(InvalidParameter):
        make_cyclic(0)


# -- dihedral ----------------------------------------------------------------


def test_dihedral_examples():
    d6 = make_dihedral(6)
    assert [d6.elem_orders[i] for i in (3, 4, 5)] == [2, 2, 2]
    d44 = make_dihedral(44)
    assert d44.elem_names[27] == "x^5*y"
    assert d44.mul(27, 27) == 0
    assert make_dihedral(10).mul(2, 4) == 1


def test_dihedral_names():
    d10 = make_dihedral(10)
    assert d10.elem_names == ("1", "x", "x^2", "x^3", "x^4", "y", "x*y", "x^2*y", "x^3*y", "x^4*y")


@pytest.mark.parametrize("bad", [4, 7, 2, 0, -6])
def test_dihedral_rejects(bad):
    with pytest.raises(InvalidParameter):
        make_dihedral(bad)


@pytest.mark.parametrize("n", range(3, 12))
def test_dihedral_structure(n):
    g = make_dihedral(2 * n)
    rotations = set(range(n))
    assert {g.mul(a, b) for a in rotations for b in rotations} == rotations
    for r in range(n, 2 * n):
        assert g.mul(r, r) == g.identity
        for a in range(n):
            # conjugating a rotation by a reflection inverts it
            assert g.mul(g.mul(r, a), g.inv(r)) == g.inv(a)
    assert_group_invariants(g)


def test_dihedral_matches_reflection_formula():
    # x^a y * x^b = x^(a-b) y, checked against an independent formula
    n = 9
    g = make_dihedral(2 * n)
    for (a, r), (b, s) in product(product(range(n), range(2)), repeat=2):
        e = (a + (-1) ** r * b) % n
        assert g.mul(a + n * r, b + n * s) == e + n * ((r + s) % 2)


# -- dicyclic ----------------------------------------------------------------


def test_q8():
    q8 = make_dicyclic(8)
    assert sum(1 for o in q8.elem_orders if o == 2) == 1
    x, y = 1, 4
    assert q8.power(y, 4) == q8.identity
    assert q8.power(y, 2) == q8.power(x, 2)


def test_q12_x_has_order_6():
    assert element_order(make_dicyclic(12), 1) == 6


@pytest.mark.parametrize("n", range(2, 9))
def test_dicyclic_relations(n):
    g = make_dicyclic(4 * n)
    x, y = 1, 2 * n
    assert g.power(y, 2) == g.power(x, n)
    assert g.mul(g.mul(y, x), g.inv(y)) == g.inv(x)
    assert g.elem_orders[x] == 2 * n
    # generalized quaternion: a unique involution
    assert [i for i, o in enumerate(g.elem_orders) if o == 2] == [n]


@pytest.mark.parametrize("bad", [4, 6, 10, 0])
def test_dicyclic_rejects(bad):
    with pytest.raises(InvalidParameter):
        make_dicyclic(bad)


# -- elementary abelian ------------------------------------------------------


def test_elementary_abelian_examples():
    assert make_elementary_abelian_2(0).order == 1
    assert make_elementary_abelian_2(2).elem_orders == (1, 2, 2, 2)
    assert make_elementary_abelian_2(3).mul(5, 3) == 6


def test_elementary_abelian_bound():
    assert make_elementary_abelian_2(6).order == 64
    with pytest.raises(InvalidParameter):
        make_elementary_abelian_2(13)
    with pytest.raises(InvalidParameter):
        make_elementary_abelian_2(-1)


# -- C_p x| C_4 --------------------------------------------------------------


def test_semidirect_p5():
    g = make_semidirect_cp_c4(5)
    assert g.order == 20
    a, b = 1, 5
    assert g.mul(g.mul(b, a), g.inv(b)) == g.power(a, 2)
    assert not is_abelian(g)
    # 2^2 = 4 = -1 and 2^4 = 1 mod 5: the twist has order 4
    assert pow(2, 2, 5) == 4 and pow(2, 4, 5) == 1


def test_semidirect_p13_uses_order4_twist():
    # (13-1)/2 = 6 does not have order 4 mod 13, so it cannot be the twist
    assert pow(6, 4, 13) != 1
    g = make_semidirect_cp_c4(13)
    assert g.order == 52
    r = order4_multiplier(13)
    assert r * r % 13 == 12
    a, b = 1, 13
    assert g.mul(g.mul(b, a), g.inv(b)) == g.power(a, r)
    assert_group_invariants(g)


@pytest.mark.parametrize("bad", [3, 7, 9, 15, 2, 1])
def test_semidirect_rejects(bad):
    with pytest.raises(InvalidParameter):
        make_semidirect_cp_c4(bad)


# -- direct products ---------------------------------------------------------


def test_trivial_times_g_is_a_copy():
    d8 = make_dihedral(8)
    p = direct_product(make_cyclic(1), d8)
    assert p.same_table(d8)


def test_c2_times_c2():
    p = direct_product(make_cyclic(2), make_cyclic(2))
    assert p.elem_orders == (1, 2, 2, 2)
    assert p.family_tag.kind == FamilyTag.PRODUCT


def test_d8_times_c2_center_by_brute_force():
    p = direct_product(make_dihedral(8), make_cyclic(2))
    assert p.order == 16
    brute = [a for a in range(16) if all(p.mul(a, b) == p.mul(b, a) for b in range(16))]
    assert len(brute) == 4
    assert center(p).to_list() == brute


def test_product_capacity():
    big = make_elementary_abelian_2(7)
    with pytest.raises(CapacityError):
        direct_product(big, make_elementary_abelian_2(6))


_SMALL = [CATALOG[k] for k in ("C4", "D6", "Q8", "C3", "E4", "D10")]


@given(st.sampled_from(_SMALL), st.sampled_from(_SMALL), st.data())
def test_product_orders_are_lcms(g, h, data):
    p = direct_product(g, h)
    assert p.order == g.order * h.order
    i = data.draw(st.integers(0, g.order - 1))
    j = data.draw(st.integers(0, h.order - 1))
    assert p.elem_orders[i * h.order + j] == math.lcm(g.elem_orders[i], h.elem_orders[j])


# -- permutation groups ------------------------------------------------------


def _closure_oracle(gens, degree):
    """Breadth-first closure with composition written the other way round."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def test_from_permutations_c3():
    g = make_from_permutations([(1, 2, 0)])
    assert g.order == 3 and is_abelian(g)
    assert g.elem_names == ("()", "(1 2 3)", "(1 3 2)")


def test_from_permutations_d10():
    gens = [(1, 2, 3, 4, 0), (0, 4, 3, 2, 1)]
    g = make_from_permutations(gens)
    assert g.order == len(_closure_oracle(gens, 5)) == 10
    assert not is_abelian(g)
    assert sorted(g.elem_orders) == [1] + [2] * 5 + [5] * 4


def test_from_permutations_empty():
    assert make_from_permutations([]).order == 1


def test_from_permutations_bfs_order():
    g = make_from_permutations([(1, 2, 3, 0), (2, 1, 0, 3)])
    # identity, then the generators in the order given
    assert g.elem_names[:3] == ("()", "(1 2 3 4)", "(1 3)")


def test_from_permutations_rejects_non_bijection():
    with pytest.raises(InvalidParameter):
        make_from_permutations([(0, 0, 1)])


# -- queries -----------------------------------------------------------------


def test_queries():
    assert element_order(make_cyclic(5), 2) == 5
    assert not is_abelian(make_dihedral(12))
    assert is_abelian(make_cyclic(12))
    with pytest.raises(InvalidArgument):
        element_order(make_cyclic(5), 5)


def test_conjugacy_classes_d6_brute_force():
    g = make_dihedral(6)
    brute = {frozenset(g.mul(g.mul(h, a), g.inv(h)) for h in range(6)) for a in range(6)}
    classes = conjugacy_classes(g)
    assert classes == [[0], [1, 2], [3, 4, 5]]
    assert {frozenset(c) for c in classes} == brute


@pytest.mark.parametrize("name", ["D8", "Q8", "fx:A4", "fx:D8*Q8", "C2xD6"])
def test_conjugacy_classes_partition(name):
    g = CATALOG[name]
    classes = conjugacy_classes(g)
    assert sorted(x for c in classes for x in c) == list(range(g.order))
    assert [c[0] for c in classes] == sorted(c[0] for c in classes)
    assert sum(1 for c in classes if len(c) == 1) == len(center(g))
