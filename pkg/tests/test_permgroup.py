import math

import pytest

from qmw.permgroup import (GroupTooLarge, PermGroup, compose, cycle_string, cycles, from_cycles,
                           generate, inverse, perm_order)


def test_basic_operations():
    p = from_cycles(5, [(0, 1, 2)])
    q = from_cycles(5, [(3, 4)])
    assert compose(p, inverse(p)) == tuple(range(5))
    assert cycle_string(compose(p, q)) == "(0 1 2)(3 4)"
    assert perm_order(compose(p, q)) == 6
    assert cycles(q) == [(0,), (1,), (2,), (3, 4)]


def test_compose_order():
    p, q = (1, 0, 2), (0, 2, 1)
    # apply q first
    assert compose(p, q) == (1, 2, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_symmetric_group_order(n):
    if n == 1:
        G = PermGroup(1, [])
    else:
        G = generate([from_cycles(n, [(0, 1)]), from_cycles(n, [tuple(range(n))])])
    assert G.order() == math.factorial(n)


def test_orbits_and_transversal():
    G = generate([from_cycles(6, [(0, 2, 4)]), from_cycles(6, [(1, 3)])])
    assert G.orbits() == [[0, 2, 4], [1, 3], [5]]
    tr = G.transversal(0)
    assert set(tr) == {0, 2, 4}
    for x, g in tr.items():
        assert g[0] == x and g in G


def test_orbit_stabilizer():
    G = generate([from_cycles(5, [(0, 1, 2, 3, 4)]), from_cycles(5, [(1, 4), (2, 3)])])
    assert G.order() == 10
    assert G.order() == len(G.orbit(0)) * G.stabilizer(0).order()


def test_abelian_flag():
    assert generate([from_cycles(4, [(0, 1)]), from_cycles(4, [(2, 3)])]).is_abelian()
    assert not generate([from_cycles(3, [(0, 1)]), from_cycles(3, [(1, 2)])]).is_abelian()


def test_cap():
    G = generate([from_cycles(8, [(0, 1)]), from_cycles(8, [tuple(range(8))])], cap=1000)
    with pytest.raises(GroupTooLarge):
        G.order()


def test_rejects_non_permutation():
    with pytest.raises(ValueError):
        PermGroup(3, [(0, 0, 1)])
