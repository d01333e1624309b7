import itertools

import pytest

from qmw.abelian import canonicalize
from qmw.enumeration import (COLUMNS, CountRow, SizeCapError, assemble_tables, count_2reductive,
                             count_all_orbits_latin, count_latin, direct_orbit_count,
                             enumerate_2reductive, enumerate_non2reductive, fibre_profiles,
                             is_reductive_mesh, latin_classes, matrix_count_check, medial_meshes,
                             profile_non2reductive, raw_mesh_sample, worker_count)
from qmw.mesh import (gcd_check, homologous, is_2reductive, is_indecomposable, is_involutory,
                      is_valid, zero_column_check)
from qmw.quandle import brute_force_enumerate, brute_force_iso, is_medial


def test_profiles():
    profiles = fibre_profiles(4)
    as_orders = sorted(tuple(A.order for A in P.groups) for P in profiles)
    # partitions of 4, with the part 4 appearing for both groups of order 4
    assert len(profiles) == 6
    assert as_orders.count((4,)) == 2
    P = fibre_profiles(3)[0]
    assert P.blocks == [(canonicalize([]), 3)]


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (3, 2), (4, 5), (5, 15)])
def test_2reductive_small(n, expected):
    assert count_2reductive(n) == expected


def test_burnside_agrees_with_direct_listing_small():
    for n in range(1, 7):
        for inv in (False, True):
            assert count_2reductive(n, inv) == direct_orbit_count(n, inv)


def test_direct_count_cap():
    with pytest.raises(SizeCapError):
        direct_orbit_count(8)


def test_2reductive_listing_matches_count():
    for n in range(1, 7):
        meshes = enumerate_2reductive(n)
        assert len(meshes) == count_2reductive(n)
        assert all(is_2reductive(M) and is_indecomposable(M) and is_valid(M) for M in meshes)


@pytest.mark.parametrize("n,expected", [(3, 1), (4, 1), (5, 3), (6, 3), (7, 5), (8, 12)])
def test_non2reductive_counts(n, expected):
    assert len(enumerate_non2reductive(n)) == expected


def test_non2reductive_involutory():
    assert [len(enumerate_non2reductive(n, involutory=True)) for n in range(1, 11)] == \
        [0, 0, 1, 0, 1, 2, 1, 3, 4, 11]


def test_involutory_search_matches_filter():
    for n in range(1, 10):
        full = enumerate_non2reductive(n)
        inv = enumerate_non2reductive(n, involutory=True)
        assert len(inv) == sum(1 for M in full if is_involutory(M))


def test_emitted_meshes_are_valid_and_distinct():
    for n in range(1, 9):
        reps = enumerate_non2reductive(n)
        for M in reps:
            assert is_valid(M) and is_indecomposable(M) and not is_2reductive(M)
            assert gcd_check(M) and zero_column_check(M)
        for a, b in itertools.combinations(reps, 2):
            assert homologous(a, b) is None


def test_latin_shortcut_matches_full_search():
    for n in range(1, 10):
        a = enumerate_non2reductive(n)
        b = enumerate_non2reductive(n, latin_shortcut=False)
        assert len(a) == len(b)
        for M in a:
            assert sum(1 for N in b if homologous(M, N) is not None) == 1


def test_profile_with_mixed_latin_orbit():
    # Z3 (latin orbit) next to Z6 (not latin)
    reps = profile_non2reductive((canonicalize([3]), canonicalize([6])))
    assert len(reps) == 1
    assert not is_reductive_mesh(reps[0])


def test_raw_sample_is_valid():
    raw = list(raw_mesh_sample(6))
    assert raw
    assert all(is_valid(M) and is_indecomposable(M) for M in raw)


def test_determinism_with_workers():
    a = enumerate_non2reductive(8, workers=1)
    b = enumerate_non2reductive(8, workers=2)
    assert a == b


def test_worker_env(monkeypatch):
    monkeypatch.setenv("QMW_WORKERS", "3")
    assert worker_count() == 3
    assert worker_count(2) == 2
    monkeypatch.delenv("QMW_WORKERS")
    assert worker_count() == 1


@pytest.mark.parametrize("n,expected", [(5, 3), (6, 0), (9, 8), (1, 1), (2, 0), (13, 11)])
def test_latin_counts(n, expected):
    assert count_latin(n) == expected


def test_latin_classes_of_z3_squared():
    # f with f and 1 - f invertible, up to conjugacy, on the plane over F_3
    assert len(latin_classes(canonicalize([3, 3]))) + len(latin_classes(canonicalize([9]))) == 8


def test_all_orbits_latin_counts():
    assert [count_all_orbits_latin(n) for n in range(1, 14)] == [0, 0, 1, 1, 3, 1, 5, 3, 9, 3, 9, 3, 11]


@pytest.mark.parametrize("p,m,expected", [(2, 2, 1), (2, 3, 27), (3, 2, 4)])
def test_matrix_count(p, m, expected):
    assert matrix_count_check(p, m) == expected


def test_count_row_identities():
    table = assemble_tables(7)
    assert table.row(7).csv() == "7,251,246,121,120,5,0,5,5,5"
    for row in table.rows:
        row.check()
    assert table.csv().splitlines()[0] == ",".join(COLUMNS)


def test_rows_without_search_leave_blanks():
    table = assemble_tables(9, search_max=8, n_min=9)
    assert table.row(9).csv() == "9,,10301,,4013,,,,9,8"


def test_broken_row_fails_check():
    row = CountRow(3, 4, 2, 3, 2, 1, 0, 1, 1, 1)
    with pytest.raises(AssertionError):
        row.check()


def test_small_medial_quandles_match_brute_force():
    for n in range(1, 5):
        brute = brute_force_enumerate(n, is_medial)
        meshes = medial_meshes(n)
        assert len(brute) == len(meshes)
        from qmw.mesh import sum_quandle
        sums = [sum_quandle(M) for M in meshes]
        for Q in brute:
            assert sum(1 for S in sums if brute_force_iso(Q, S) is not None) == 1


def test_size_cap():
    with pytest.raises(SizeCapError):
        enumerate_non2reductive(14)


def test_homology_and_brute_force_agree_at_eight(rng):
    from qmw.mesh import random_homology, sum_quandle
    reps = medial_meshes(8)
    sample = rng.sample(reps, 60)
    for M in sample:
        N, _ = random_homology(M, rng)
        assert homologous(M, N) is not None
        assert brute_force_iso(sum_quandle(M), sum_quandle(N)) is not None
    for a, b in zip(sample, sample[1:]):
        h = homologous(a, b) is not None
        f = brute_force_iso(sum_quandle(a), sum_quandle(b)) is not None
        assert h == f == False  # noqa: E712
