import json

import pytest

from qmw.abelian import canonicalize
from qmw.classify import (ClassificationReport, SizeCapError, classify,
                          congruence_lattice, direct_product, is_irreducible, is_simple,
                          is_subdirectly_irreducible, join, latin_decomposition, monolith,
                          principal_congruence, si_2reductive, si_2reductive_mesh, si_involutory,
                          si_involutory_mesh, simple_affine)
from qmw.mesh import is_indecomposable, is_involutory, is_valid, make_mesh, sum_quandle
from qmw.quandle import (Quandle, brute_force_iso, cyclic_affine, is_medial, is_quandle,
                         projection)

from conftest import SMALL_TABLE

BELL = [1, 1, 2, 5, 15, 52]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_projection_lattice_is_all_partitions(n):
    assert len(congruence_lattice(projection(n))) == BELL[n]


def test_dihedral_six_congruences():
    blocks = [t.blocks for t in congruence_lattice(cyclic_affine(6, 5))]
    assert [[0, 2, 4], [1, 3, 5]] in blocks
    assert len(blocks) == 4


def test_congruences_are_compatible():
    Q = sum_quandle(make_mesh([4, 2], [[2, 2], [2, 0]], [[0, 1], [1, 0]]))
    for t in congruence_lattice(Q):
        lab = t.labels
        for a in range(Q.n):
            for b in range(Q.n):
                if lab[a] == lab[b]:
                    for c in range(Q.n):
                        assert lab[Q.mul(a, c)] == lab[Q.mul(b, c)]
                        assert lab[Q.mul(c, a)] == lab[Q.mul(c, b)]


def test_principal_and_join():
    Q = projection(4)
    t1 = principal_congruence(Q, 0, 1)
    t2 = principal_congruence(Q, 2, 3)
    assert t1.blocks == [[0, 1], [2], [3]]
    j = join(Q, t1, t2)
    assert j.blocks == [[0, 1], [2, 3]]
    assert t1 <= j and not j <= t1
    assert t1.meet(t2).is_identity


def test_congruence_cap():
    with pytest.raises(SizeCapError):
        congruence_lattice(projection(13))
    with pytest.raises(SizeCapError):
        congruence_lattice(projection(9), max_size=100)


def test_simple_examples():
    Q = simple_affine(2, 2, [1, 1, 1])
    assert Q.n == 4 and is_medial(Q)
    assert len(congruence_lattice(Q)) == 2 and is_simple(Q)
    assert is_simple(projection(2))
    assert not is_simple(cyclic_affine(6, 5))
    assert not is_simple(Quandle([[0]]))


def test_simple_affine_more():
    for p, k, poly in [(3, 1, [1, 1]), (5, 1, [2, 1]), (3, 2, [1, 0, 1]), (2, 3, [1, 1, 0, 1])]:
        Q = simple_affine(p, k, poly)
        assert is_simple(Q)


def test_simple_affine_rejects_bad_input():
    with pytest.raises(ValueError):
        simple_affine(2, 2, [1, 0, 1])  # (x+1)^2
    with pytest.raises(ValueError):
        simple_affine(4, 1, [1, 1])
    with pytest.raises(ValueError):
        simple_affine(3, 1, [0, 1])  # x
    with pytest.raises(ValueError):
        simple_affine(3, 1, [2, 1])  # x - 1


def test_irreducibility():
    assert is_irreducible(2, [1, 1, 1])
    assert not is_irreducible(2, [1, 0, 1])
    assert is_irreducible(3, [2, 2, 0, 1]) == (not any((x**3 + 2 * x + 2) % 3 == 0 for x in range(3)))


def test_si_examples():
    assert is_subdirectly_irreducible(projection(2))
    assert not is_subdirectly_irreducible(projection(3))
    assert not is_subdirectly_irreducible(Quandle([[0]]))
    assert is_subdirectly_irreducible(si_involutory("cyclic", 1, p=3))
    assert brute_force_iso(si_involutory("cyclic", 1, p=3), cyclic_affine(3, 2)) is not None


def test_monolith_of_small_quandle():
    Q = Quandle(SMALL_TABLE)
    assert monolith(Q).blocks == [[0, 1], [2]]


def test_si_2reductive_small_case_is_small_quandle():
    Q = si_2reductive(2, [1])
    assert Q == Quandle(SMALL_TABLE)
    assert is_subdirectly_irreducible(Q)


def test_family_meshes_are_valid():
    for k in (1, 2, 3):
        for fam in ("pair", "triple"):
            M = si_involutory_mesh(fam, k)
            assert is_valid(M) and is_indecomposable(M) and is_involutory(M)
    M = si_2reductive_mesh(8, [1, 3, 6])
    assert is_valid(M) and is_indecomposable(M)


def test_family_errors():
    with pytest.raises(ValueError):
        si_2reductive(4, [2])
    with pytest.raises(ValueError):
        si_2reductive(4, [1, 1])
    with pytest.raises(ValueError):
        si_2reductive(6, [1])
    with pytest.raises(ValueError):
        si_involutory("cyclic", 1, p=2)
    with pytest.raises(ValueError):
        si_involutory("nope", 1)


def test_non_distinct_constants_are_not_si():
    # drop the distinctness requirement by building the mesh directly
    M = make_mesh([3, 1, 1], 0, [[0, 0, 0], [1, 0, 0], [1, 0, 0]])
    assert not is_subdirectly_irreducible(sum_quandle(M))


def test_direct_product():
    P = direct_product(cyclic_affine(3, 2), projection(2))
    assert is_quandle(P) and is_medial(P)
    assert brute_force_iso(P, cyclic_affine(6, 5)) is not None


def test_classify_dihedral_six():
    r = classify(cyclic_affine(6, 5))
    assert r.medial and r.orbit_sizes == [3, 3]
    assert r.involutory and r.symmetry_order == 2
    assert r.reductivity_degree is None and not r.two_reductive
    assert not r.latin and not r.connected
    d = r.decomposition
    assert d.group == canonicalize([3]) and d.projection_size == 2
    assert d.automorphism.images == ((2,),)
    assert r.simple is False and r.subdirectly_irreducible is False


def test_classify_small_quandle():
    r = classify(Quandle(SMALL_TABLE))
    assert r.two_reductive and r.orbit_sizes == [2, 1]
    assert r.decomposition is None
    assert r.subdirectly_irreducible


def test_classify_connected_four():
    V = canonicalize([2, 2])
    from qmw.abelian import Homomorphism
    from qmw.quandle import affine
    Q = affine(V, Homomorphism(V, V, ((0, 1), (1, 1))))
    r = classify(Q)
    assert r.connected and r.latin and r.simple
    assert r.decomposition.projection_size == 1


def test_report_round_trip():
    r = classify(cyclic_affine(6, 5))
    data = json.loads(r.to_json())
    back = ClassificationReport.from_dict(data)
    assert back.to_dict() == r.to_dict()


def test_classify_rejects_non_medial():
    from qmw.quandle import NotMedialError, brute_force_enumerate
    (Q,) = [Q for Q in brute_force_enumerate(4) if not is_medial(Q)]
    with pytest.raises(NotMedialError):
        classify(Q)
    with pytest.raises(ValueError):
        classify(Quandle([[1, 1], [0, 1]]))


def test_latin_decomposition_absent_without_latin_orbits():
    assert latin_decomposition(Quandle(SMALL_TABLE)) is None
