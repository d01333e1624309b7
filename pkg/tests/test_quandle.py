import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmw.abelian import Homomorphism, canonicalize
from qmw.quandle import (NotMedialError, Quandle, QuandleParseError, affine, brute_force_enumerate,
                         brute_force_iso, cyclic_affine, dis, is_connected, is_isomorphism, is_latin,
                         is_m_reductive, is_medial, is_medial_dis, is_medial_identity, is_n_symmetric,
                         is_quandle, lmlt, orbit_group, orbits, projection, reductivity_degree,
                         subquandle, symmetry_order, validate)


def test_text_round_trip(small_quandle):
    text = small_quandle.to_text()
    assert text.splitlines()[0] == "3"
    assert Quandle.from_text(text) == small_quandle


@pytest.mark.parametrize("text,line,column", [
    ("", 1, 1),
    ("x\n", 1, 1),
    ("2\n0 1\n", 3, 1),
    ("2\n0 1\n0 7\n", 3, 3),
    ("2\n0 1\n0 1 1\n", 3, 5),
])
def test_parse_errors_locate_the_problem(text, line, column):
    with pytest.raises(QuandleParseError) as info:
        Quandle.from_text(text)
    assert info.value.line == line
    assert info.value.column == column


def test_validate_reports_witnesses():
    rep = validate(Quandle([[1, 1], [0, 1]]))
    assert not rep.idempotent and rep.idempotent_witness == 0
    assert not rep.left_quasigroup
    rep = validate(Quandle([[0, 0, 0], [1, 1, 1], [2, 2, 2]]))
    assert not rep.is_quandle and rep.failures()


def test_small_quandle(small_quandle):
    assert is_quandle(small_quandle)
    assert is_medial(small_quandle)
    assert orbits(small_quandle) == [[0, 1], [2]]
    assert reductivity_degree(small_quandle) == 2
    assert not is_connected(small_quandle)


def test_projection():
    P = projection(4)
    assert is_quandle(P) and is_medial(P)
    assert reductivity_degree(P) == 1
    assert orbits(P) == [[0], [1], [2], [3]]
    assert dis(P).order() == 1


def test_dihedral_six():
    Q = cyclic_affine(6, 5)
    assert is_quandle(Q) and is_medial(Q)
    assert dis(Q).order() == 3
    assert lmlt(Q).order() == 6
    assert orbits(Q) == [[0, 2, 4], [1, 3, 5]]
    assert symmetry_order(Q) == 2
    assert reductivity_degree(Q) is None
    chart = orbit_group(Q, 0)
    assert chart.group == canonicalize([3])


def test_orbit_group_action_on_trivial_orbit(small_quandle):
    chart = orbit_group(small_quandle, 0)
    assert chart.group == canonicalize([2])


def test_non_medial_orbit_group_rejected():
    (Q,) = [Q for Q in brute_force_enumerate(4) if not is_medial(Q)]
    assert not dis(Q).is_abelian()
    with pytest.raises(NotMedialError):
        for e in range(4):
            orbit_group(Q, e)


def test_latin_and_symmetry():
    Q = cyclic_affine(5, 2)
    assert is_latin(Q) and is_connected(Q)
    assert symmetry_order(Q) == 4
    assert is_n_symmetric(Q, 8) and not is_n_symmetric(Q, 2)
    assert reductivity_degree(cyclic_affine(4, 3)) == 2
    assert is_m_reductive(cyclic_affine(4, 3), 3)


def test_affine_over_noncyclic():
    V = canonicalize([2, 2])
    f = Homomorphism(V, V, ((0, 1), (1, 1)))
    Q = affine(V, f)
    assert is_latin(Q)
    assert symmetry_order(Q) == 3


def test_subquandle():
    Q = cyclic_affine(6, 5)
    S = subquandle(Q, [0, 2, 4])
    assert brute_force_iso(S, cyclic_affine(3, 2)) is not None
    with pytest.raises(ValueError):
        subquandle(Q, [0, 1])


def test_brute_force_iso(small_quandle):
    perm = [2, 0, 1]
    other = small_quandle.relabel(perm)
    f = brute_force_iso(small_quandle, other)
    assert f is not None and is_isomorphism(small_quandle, other, f)
    assert brute_force_iso(small_quandle, projection(3)) is None


def test_all_quandles_small():
    # all quandles, medial or not, of order 1..4
    assert [len(brute_force_enumerate(n)) for n in range(1, 5)] == [1, 1, 3, 7]


def test_non_medial_quandle_of_order_four_exists():
    reps = brute_force_enumerate(4)
    assert sum(1 for Q in reps if not is_medial(Q)) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.data())
def test_cyclic_affine_quandles_are_medial(n, data):
    f = data.draw(st.sampled_from([a for a in range(1, n) if math.gcd(a, n) == 1]))
    Q = cyclic_affine(n, f)
    assert is_quandle(Q)
    assert is_medial_identity(Q) and is_medial_dis(Q)


def test_medial_criteria_agree_on_all_small_quandles():
    for n in range(1, 5):
        for Q in brute_force_enumerate(n):
            assert is_medial_identity(Q) == is_medial_dis(Q)
