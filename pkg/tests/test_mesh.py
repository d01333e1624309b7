import itertools

import pytest

from qmw.abelian import Homomorphism, canonicalize
from qmw.mesh import (AffineMesh, HomologyWitness, MeshShapeError, all_orbits_latin,
                      canonical_mesh, from_json, gcd_check, homologous, is_2reductive,
                      is_indecomposable, is_involutory, is_valid, latin_normalize, make_mesh,
                      mesh_reductivity_degree, mesh_sum, random_homology, sum_quandle,
                      symmetry_check, to_json, validate_mesh, zero_column_check)
from qmw.quandle import Quandle, brute_force_iso, cyclic_affine, is_medial, is_quandle, orbits

from conftest import SMALL_TABLE


def test_sum_of_small_mesh():
    M = make_mesh([2, 1], 0, [[0, 0], [1, 0]])
    assert is_valid(M) and is_indecomposable(M)
    Q, index_map = mesh_sum(M)
    assert Q == Quandle(SMALL_TABLE)
    assert index_map == [(0, (0,)), (0, (1,)), (1, ())]


def test_two_fibre_dihedral_mesh():
    M = make_mesh([3, 3], 2, [[0, 2], [1, 0]])
    assert is_valid(M) and is_indecomposable(M)
    assert brute_force_iso(sum_quandle(M), cyclic_affine(6, 5)) is not None


def test_canonical_mesh_of_dihedral_six():
    C = canonical_mesh(cyclic_affine(6, 5))[0]
    assert C == make_mesh([3, 3], 2, [[0, 2], [1, 0]])


@pytest.mark.parametrize("mesh,axiom", [
    (make_mesh([2], 1, 0), "M1"),
    (make_mesh([3], 0, [[1]]), "M2"),
    (make_mesh([3, 3], [[2, 1], [2, 2]], 0), "M3"),
    (make_mesh([3, 3], 2, [[0, 1], [1, 0]]), "M4"),
])
def test_axiom_violations_are_named(mesh, axiom):
    rep = validate_mesh(mesh)
    assert not rep.valid and rep.axiom == axiom
    assert axiom in str(rep)


def test_shape_errors():
    A = canonicalize([2])
    with pytest.raises(MeshShapeError):
        AffineMesh((A,), ((Homomorphism.zero_map(A, A),),), (((5,),),))
    with pytest.raises(MeshShapeError):
        make_mesh([2, 2], 0, [[0, 0]])
    with pytest.raises(MeshShapeError):
        make_mesh([[2, 2]], 0, [[1]])


def test_decomposable_mesh():
    M = make_mesh([3, 1], 0, 0)
    assert is_valid(M) and not is_indecomposable(M)
    assert len(orbits(sum_quandle(M))) == 4


def test_json_round_trip():
    M = make_mesh([[2, 2], 2], 0, [[(0, 0), (1,)], [(0, 1), (0,)]])
    assert from_json(to_json(M)) == M
    with pytest.raises(MeshShapeError) as info:
        from_json('{"groups": [[2]], ')
    assert "line 1" in str(info.value)
    with pytest.raises(MeshShapeError):
        from_json('{"groups": [[2]]}')


def test_conjugate_matrices_give_homologous_meshes():
    a = make_mesh([[2, 2]], [[[(1, 1), (1, 0)]]], 0)
    b = make_mesh([[2, 2]], [[[(0, 1), (1, 1)]]], 0)
    w = homologous(a, b)
    assert w is not None and w.check(a, b)


def test_negation_relates_constant_choices():
    a = make_mesh([3, 1], 0, [[0, 0], [1, 0]])
    b = make_mesh([3, 1], 0, [[0, 0], [2, 0]])
    w = homologous(a, b)
    assert w.pi == (0, 1)
    assert w.psi[0] == Homomorphism.scalar(canonicalize([3]), canonicalize([3]), -1)


def test_permutation_relates_trivial_fibres():
    a = make_mesh([2, 1, 1], 0, [[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    b = make_mesh([2, 1, 1], 0, [[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    w = homologous(a, b)
    assert w.pi == (0, 2, 1)


def test_translations_are_needed():
    a = make_mesh([3, 3], [[2, 1], [1, 2]], 0)
    b = make_mesh([3, 3], [[2, 1], [1, 2]], [[0, 1], [1, 0]])
    w = homologous(a, b)
    assert w is not None and w.check(a, b)
    assert any(x != (0,) for x in w.d)
    f = w.bijection(a, b)
    assert brute_force_iso(sum_quandle(a), sum_quandle(b)) is not None
    Qa, Qb = sum_quandle(a), sum_quandle(b)
    assert all(f[Qa.mul(x, y)] == Qb.mul(f[x], f[y]) for x in range(6) for y in range(6))


def test_non_homologous():
    a = make_mesh([3, 1], 0, [[0, 0], [1, 0]])
    b = make_mesh([2, 1, 1], 0, [[0, 0, 0], [1, 0, 0], [1, 0, 0]])
    assert homologous(a, b) is None
    with pytest.raises(ValueError):
        homologous(make_mesh([3, 1], 0, 0), a)


def test_random_homology_round_trip(rng):
    M = make_mesh([4, 2], [[2, 2], [2, 0]], [[0, 1], [1, 0]])
    assert is_valid(M)
    for _ in range(20):
        N, (pi, psi, d) = random_homology(M, rng)
        assert HomologyWitness(pi, psi, d).check(M, N)
        assert is_valid(N) and is_indecomposable(N)
        assert homologous(M, N) is not None


def test_canonical_meshes_over_other_transversals_are_homologous():
    Q = sum_quandle(make_mesh([4, 2], [[2, 2], [2, 0]], [[0, 1], [1, 0]]))
    orbs = orbits(Q)
    base = canonical_mesh(Q)[0]
    for transversal in itertools.product(*orbs):
        M, charts, embedding = canonical_mesh(Q, transversal)
        assert is_valid(M)
        assert homologous(base, M) is not None
        # the embedding is an isomorphism onto the sum
        S = sum_quandle(M)
        assert all(embedding[Q.mul(x, y)] == S.mul(embedding[x], embedding[y])
                   for x in range(Q.n) for y in range(Q.n))


def test_criteria_on_examples():
    red = make_mesh([4, 2], [[2, 2], [2, 0]], [[0, 1], [1, 0]])
    assert gcd_check(red) and zero_column_check(red)
    assert mesh_reductivity_degree(red) == 3
    assert not is_2reductive(red) and not all_orbits_latin(red)
    dihedral = make_mesh([3, 3], 2, [[0, 2], [1, 0]])
    assert is_involutory(dihedral) and symmetry_check(dihedral, 2)
    assert mesh_reductivity_degree(dihedral) is None
    assert all_orbits_latin(dihedral)
    L = latin_normalize(dihedral)
    assert L.c == ((( 0,), (0,)), ((0,), (0,)))
    assert is_2reductive(make_mesh([2, 1], 0, [[0, 0], [1, 0]]))


def test_sum_is_medial_quandle_with_fibres_as_orbits(rng):
    M = make_mesh([3, 3], [[2, 1], [1, 2]], [[0, 1], [1, 0]])
    Q = sum_quandle(M)
    assert is_quandle(Q) and is_medial(Q)
    assert orbits(Q) == [[0, 1, 2], [3, 4, 5]]
