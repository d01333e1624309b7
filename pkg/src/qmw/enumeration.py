"""Counting medial quandles up to isomorphism.

Two engines cover the two halves of the count:

* 2-reductive quandles are sums of meshes with zero homomorphism matrix, so
  they are counted by Burnside's lemma over the fibre-permuting group
  ``prod Aut(A_b) wr S_{n_b}`` acting on constant matrices with generating
  columns.  ``direct_orbit_count`` is a brute-force oracle for it.
* the remaining quandles are listed explicitly: every homomorphism matrix
  and compatible constant matrix is generated, and the raw meshes are split
  into homology classes by walking orbits under generators of the homology
  group.

Meshes inside the search are kept as flat tuples of element indices
(``phi`` tables row-major over fibre pairs, then constants).
"""

from __future__ import annotations

import itertools
import logging
import math
import os
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .abelian import (AbelianGroup, Homomorphism, all_homs, aut_group, closure_indices,
                      compose_tables, conjugacy_classes, groups_of_order, invert_table,
                      mobius_to_top)
from .mesh import AffineMesh, mesh_reductivity_degree

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 13


class SizeCapError(ValueError):
    pass


def worker_count(workers: Optional[int] = None) -> int:
    if workers is None:
        workers = int(os.environ.get("QMW_WORKERS", "1") or 1)
    return max(1, workers)


# ---------------------------------------------------------------- profiles

def _group_key(A: AbelianGroup):
    return (A.order, A.factors)


@lru_cache(maxsize=None)
def _groups_up_to(n: int) -> tuple[AbelianGroup, ...]:
    out = []
    for m in range(1, n + 1):
        out.extend(groups_of_order(m))
    return tuple(sorted(out, key=_group_key))


@dataclass(frozen=True)
class FibreProfile:
    """A multiset of fibre groups, isomorphic fibres adjacent."""
    groups: tuple[AbelianGroup, ...]

    @property
    def n(self) -> int:
        return sum(A.order for A in self.groups)

    @property
    def blocks(self) -> list[tuple[AbelianGroup, int]]:
        out: list[tuple[AbelianGroup, int]] = []
        for A in self.groups:
            if out and out[-1][0] == A:
                out[-1] = (A, out[-1][1] + 1)
            else:
                out.append((A, 1))
        return out

    def __str__(self):
        return "(" + ", ".join(map(str, self.groups)) + ")"


def fibre_profiles(n: int, allow: Optional[Callable[[AbelianGroup], bool]] = None) -> list[FibreProfile]:
    """All multisets of abelian groups with orders summing to n."""
    pool = [A for A in _groups_up_to(n) if allow is None or allow(A)]
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(FibreProfile(tuple(acc)))
            return
        for t in range(start, len(pool)):
            A = pool[t]
            if A.order > remaining:
                break
            acc.append(A)
            rec(t, remaining - A.order, acc)
            acc.pop()

    rec(0, n, [])
    return out


def _exponent_at_most_two(A: AbelianGroup) -> bool:
    return A.exponent <= 2


# ---------------------------------------------------------------- 2-reductive: Burnside

@lru_cache(maxsize=None)
def _aut_class_data(A: AbelianGroup):
    """Per conjugacy class of Aut(A): (size, per-element cycle period, per-element orbit mask)."""
    auts = aut_group(A)
    data = []
    for rep, size in conjugacy_classes(auts):
        t = rep.table
        periods, masks = [], []
        for x in range(A.order):
            mask, y, p = 1 << x, t[x], 1
            while y != x:
                mask |= 1 << y
                y = t[y]
                p += 1
            periods.append(p)
            masks.append(mask)
        data.append((size, tuple(periods), tuple(masks)))
    return len(auts), tuple(data)


@lru_cache(maxsize=None)
def _mobius_masks(A: AbelianGroup) -> tuple[tuple[int, int], ...]:
    return tuple((sum(1 << x for x in H), mu) for H, mu in mobius_to_top(A))


def _stable_count(periods, masks, H: int, T: int) -> int:
    """#{x : h^T x = x and the h-orbit of x lies in H}."""
    return sum(1 for p, m in zip(periods, masks) if T % p == 0 and m & ~H == 0)


@lru_cache(maxsize=None)
def _column_average(A: AbelianGroup, L: int, lengths: tuple[int, ...]) -> Fraction:
    """Average over h in Aut(A) of the number of generating columns fixed along
    a column cycle of length L whose composite automorphism is h.

    ``lengths`` lists the lengths of all cycles of the fibre permutation,
    the column's own cycle included.
    """
    rows = Counter(lengths)
    rows[L] -= 1
    # (exponent, period) pairs: entries in rows of cycle d fall into gcd(L, M)
    # chains along which h^(lcm/L) must fix the starting value
    terms = [(L - 1, 1)] + [(cnt * math.gcd(L, M), M // math.gcd(L, M)) for M, cnt in rows.items() if cnt]
    aut_order, classes = _aut_class_data(A)
    total = 0
    for size, periods, masks in classes:
        fixed = 0
        for H, mu in _mobius_masks(A):
            prod = 1
            for e, T in terms:
                if e:
                    prod *= _stable_count(periods, masks, H, T) ** e
                    if not prod:
                        break
            fixed += mu * prod
        total += size * fixed
    return Fraction(total, aut_order)


@lru_cache(maxsize=None)
def _cycle_types(m: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """Partitions of m with 1/z_lambda (the share of S_m of that cycle type)."""
    out = []

    def rec(remaining, largest, acc):
        if remaining == 0:
            z = 1
            for part, cnt in Counter(acc).items():
                z *= part**cnt * math.factorial(cnt)
            out.append((tuple(acc), Fraction(1, z)))
            return
        for p in range(min(remaining, largest), 0, -1):
            acc.append(p)
            rec(remaining - p, p, acc)
            acc.pop()

    rec(m, m, [])
    return tuple(out)


def profile_2reductive_count(profile: FibreProfile) -> int:
    blocks = profile.blocks
    total = Fraction(0)
    for choice in itertools.product(*(_cycle_types(cnt) for _, cnt in blocks)):
        weight = Fraction(1)
        lengths = tuple(sorted(L for lam, _ in choice for L in lam))
        for (A, _), (lam, share) in zip(blocks, choice):
            weight *= share
            if A.order > 1:
                for L in lam:
                    weight *= _column_average(A, L, lengths)
                    if not weight:
                        break
            if not weight:
                break
        total += weight
    if total.denominator != 1:
        raise AssertionError(f"non-integral orbit count {total} for {profile}")
    return int(total)


def count_2reductive(n: int, involutory: bool = False) -> int:
    """Number of 2-reductive medial quandles of order n up to isomorphism."""
    if n < 1:
        raise ValueError("n must be positive")
    allow = _exponent_at_most_two if involutory else None
    return sum(profile_2reductive_count(P) for P in fibre_profiles(n, allow))


# ---------------------------------------------------------------- 2-reductive: oracle

@lru_cache(maxsize=None)
def aut_generators(A: AbelianGroup) -> tuple[tuple[int, ...], ...]:
    """A small generating set of Aut(A), as tables."""
    auts = [h.table for h in aut_group(A)]
    gens: list[tuple[int, ...]] = []
    reached = {tuple(range(A.order))}
    for t in auts:
        if t in reached:
            continue
        gens.append(t)
        frontier = list(reached)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = compose_tables(g, x)
                    if y not in reached:
                        reached.add(y)
                        nxt.append(y)
            frontier = nxt
    return tuple(gens)


def _count_orbits(points: set, moves: Callable[[tuple], Iterable[tuple]]) -> list[tuple]:
    """Split ``points`` into orbits; return the minimum of each orbit.

    Every image of a point must again lie in ``points``.
    """
    remaining = set(points)
    reps = []
    while remaining:
        start = remaining.pop()
        best = start
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in moves(x):
                if y in remaining:
                    remaining.remove(y)
                    queue.append(y)
                    if y < best:
                        best = y
                elif y not in points:
                    raise AssertionError("orbit left the enumerated set")
        reps.append(best)
    return sorted(reps)


def _profile_direct_reps(profile: FibreProfile) -> list[tuple]:
    """Orbit minima of generating constant matrices, each a tuple of columns."""
    G = profile.groups
    k = len(G)
    columns = []
    for j, A in enumerate(G):
        opts = []
        for vals in itertools.product(range(A.order), repeat=k - 1):
            if len(closure_indices(A, vals)) == A.order:
                col = list(vals)
                col.insert(j, 0)
                opts.append(tuple(col))
        columns.append(opts)
    points = set(itertools.product(*columns))
    swaps = [i for i in range(k - 1) if G[i] == G[i + 1]]
    gens = [aut_generators(A) for A in G]

    def moves(x):
        for a in swaps:
            perm = list(range(k))
            perm[a], perm[a + 1] = a + 1, a
            cols = list(x)
            cols[a], cols[a + 1] = cols[a + 1], cols[a]
            yield tuple(tuple(col[perm[i]] for i in range(k)) for col in cols)
        for j in range(k):
            for h in gens[j]:
                cols = list(x)
                cols[j] = tuple(h[v] for v in x[j])
                yield tuple(cols)

    return _count_orbits(points, moves)


def _check_direct_cap(n: int, max_n: int) -> None:
    if n > max_n:
        raise SizeCapError(f"direct listing is limited to n <= {max_n}")


def direct_orbit_count(n: int, involutory: bool = False, max_n: int = 7) -> int:
    """Brute-force count of 2-reductive classes by listing constant matrices."""
    _check_direct_cap(n, max_n)
    allow = _exponent_at_most_two if involutory else None
    return sum(len(_profile_direct_reps(P)) for P in fibre_profiles(n, allow))


def enumerate_2reductive(n: int, involutory: bool = False, max_n: int = 8) -> list[AffineMesh]:
    """Representatives of the 2-reductive medial quandles of order n."""
    _check_direct_cap(n, max_n)
    allow = _exponent_at_most_two if involutory else None
    out = []
    for P in fibre_profiles(n, allow):
        G = P.groups
        k = len(G)
        zero = tuple(tuple(Homomorphism.zero_map(G[i], G[j]) for j in range(k)) for i in range(k))
        for cols in _profile_direct_reps(P):
            c = tuple(tuple(G[j].element(cols[j][i]) for j in range(k)) for i in range(k))
            out.append(AffineMesh(G, zero, c))
    return sorted(out, key=AffineMesh.sort_key)


def medial_meshes(n: int, involutory: bool = False) -> list[AffineMesh]:
    """One indecomposable mesh per medial quandle of order n (n <= 8)."""
    return enumerate_2reductive(n, involutory) + enumerate_non2reductive(n, involutory)


# ---------------------------------------------------------------- latin counts

@lru_cache(maxsize=None)
def latin_classes(A: AbelianGroup) -> tuple[Homomorphism, ...]:
    """Conjugacy class representatives f in Aut(A) with 1 - f bijective."""
    sub = A.sub_table
    out = []
    for rep, _ in conjugacy_classes(aut_group(A)):
        t = rep.table
        if len({sub[x][t[x]] for x in range(A.order)}) == A.order:
            out.append(rep)
    return tuple(out)


def count_latin(n: int) -> int:
    """Latin medial quandles of order n up to isomorphism."""
    return sum(len(latin_classes(A)) for A in groups_of_order(n))


def count_all_orbits_latin(n: int) -> int:
    """Medial quandles of order n whose orbits are all latin and non-trivial."""
    return sum(count_latin(d) for d in range(2, n + 1) if n % d == 0)


def _latin_product_meshes(profile: FibreProfile, involutory: bool) -> list[AffineMesh]:
    G = profile.groups
    A = G[0]
    if A.order == 1 or any(B != A for B in G):
        return []
    k = len(G)
    out = []
    for f in latin_classes(A):
        if involutory and f.table != Homomorphism.scalar(A, A, 2).table:
            continue
        out.append(AffineMesh(G, tuple((f,) * k for _ in range(k)), tuple((A.zero,) * k for _ in range(k))))
    return out


# ---------------------------------------------------------------- non-2-reductive search

class _Profile:
    """Per-profile tables for the mesh search."""

    def __init__(self, groups: Sequence[AbelianGroup]):
        self.G = tuple(groups)
        self.k = len(groups)
        k = self.k
        self.homs = [[[h.table for h in all_homs(self.G[i], self.G[j])] for j in range(k)] for i in range(k)]
        self.zero = [tuple([0] * A.order) for A in self.G]
        self.gcd = math.gcd(*(A.order for A in self.G))

    def bijective_one_minus(self, j: int, t: Sequence[int]) -> bool:
        sub = self.G[j].sub_table
        return len({sub[x][t[x]] for x in range(len(t))}) == len(t)

    def diagonal_options(self, j: int, involutory: bool, allow_bijective: bool) -> list[tuple[int, ...]]:
        """Nonzero phi[j][j] candidates for a nonzero column j."""
        A = self.G[j]
        if involutory:
            cands = [Homomorphism.scalar(A, A, 2).table]
        else:
            cands = self.homs[j][j]
        out = []
        for t in cands:
            if not any(t) or not self.bijective_one_minus(j, t):
                continue
            bij = len(set(t)) == len(t)
            if bij and not allow_bijective:
                continue
            sq = compose_tables(t, t)
            if self.gcd % len(set(sq)):
                continue
            out.append(t)
        return out


def _phi_matrices(P: _Profile, involutory: bool, allow_bijective: bool) -> Iterator[list[list[tuple]]]:
    """Homomorphism matrices of indecomposable non-2-reductive meshes (necessary conditions)."""
    k, G = P.k, P.G
    two = [Homomorphism.scalar(A, A, 2).table for A in G]
    diag = [P.diagonal_options(j, involutory, allow_bijective) for j in range(k)]
    candidate = [bool(diag[j]) and all(any(any(t) for t in P.homs[i][j]) for i in range(k) if i != j)
                 for j in range(k)]
    for active in itertools.product([False, True], repeat=k):
        if not any(active) or any(a and not c for a, c in zip(active, candidate)):
            continue
        # a zero column has phi[j][j] = 0, which must be 2 in the involutory case
        if involutory and any(not a and any(two[j]) for j, a in enumerate(active)):
            continue
        phi = [[P.zero[i] if not active[j] else None for j in range(k)] for i in range(k)]
        order = [j for j in range(k) if active[j]]
        done = [j for j in range(k) if not active[j]]

        def m3_ok(cols):
            for i in range(k):
                for kk in cols:
                    first = None
                    for j in cols:
                        v = compose_tables(phi[j][kk], phi[i][j])
                        if first is None:
                            first = v
                        elif v != first:
                            return False
            return True

        def rec(pos):
            if pos == len(order):
                yield [row[:] for row in phi]
                return
            j = order[pos]
            # phi[j][j]^2 = phi[i][j] phi[j][i], so a bijective diagonal needs
            # every column nonzero
            dj = diag[j] if all(active) else [t for t in diag[j] if len(set(t)) < len(t)]
            opts = [dj if i == j else [t for t in P.homs[i][j] if any(t)] for i in range(k)]
            cols = done + order[:pos + 1]
            for choice in itertools.product(*opts):
                for i in range(k):
                    phi[i][j] = choice[i]
                if m3_ok(cols):
                    yield from rec(pos + 1)
            for i in range(k):
                phi[i][j] = None

        yield from rec(0)


def _constant_matrices(P: _Profile, phi) -> Iterator[list[list[int]]]:
    """Constant matrices satisfying M2, M4 and indecomposability for a fixed phi."""
    k, G = P.k, P.G
    active = [any(any(phi[i][j]) for i in range(k)) for j in range(k)]
    order = [j for j in range(k) if active[j]] + [j for j in range(k) if not active[j]]
    c = [[None] * k for _ in range(k)]
    for j in range(k):
        c[j][j] = 0
    images = [set(x for i in range(k) for x in phi[i][j]) for j in range(k)]

    def column_options(j):
        A = G[j]
        rows = [i for i in range(k) if i != j]
        per_row = []
        for i in rows:
            vals = []
            for v in range(A.order):
                c[i][j] = v
                if all(m4(i, j, kk) for kk in assigned if active[kk]):
                    vals.append(v)
            c[i][j] = None
            per_row.append(vals)
        for vals in itertools.product(*per_row):
            if len(closure_indices(A, images[j] | set(vals))) == A.order:
                yield rows, vals

    def m4(i, j, kk):
        sub = G[kk].sub_table
        return phi[j][kk][c[i][j]] == phi[kk][kk][sub[c[i][kk]][c[j][kk]]]

    assigned: list[int] = []

    def rec(pos):
        if pos == len(order):
            yield [row[:] for row in c]
            return
        j = order[pos]
        assigned.append(j)
        for rows, vals in list(column_options(j)):
            for i, v in zip(rows, vals):
                c[i][j] = v
            # remaining conditions with j as the target column, and between
            # j and earlier columns in the other direction
            if not active[j] or all(m4(i, jj, j) for i in range(k) for jj in assigned):
                yield from rec(pos + 1)
        for i in range(k):
            if i != j:
                c[i][j] = None
        assigned.pop()

    yield from rec(0)


def _flatten(phi, c) -> tuple:
    return (tuple(t for row in phi for t in row), tuple(v for row in c for v in row))


def _raw_meshes(groups: Sequence[AbelianGroup], involutory: bool, allow_bijective: bool) -> set:
    P = _Profile(groups)
    raw = set()
    for phi in _phi_matrices(P, involutory, allow_bijective):
        for c in _constant_matrices(P, phi):
            raw.add(_flatten(phi, c))
    return raw


def _homology_moves(groups: Sequence[AbelianGroup]):
    G = tuple(groups)
    k = len(G)
    swaps = [a for a in range(k - 1) if G[a] == G[a + 1]]
    auts = [[(h, invert_table(h)) for h in aut_generators(A)] for A in G]
    gens = [[A.index(g) for g in A.generators()] for A in G]

    def moves(key):
        phi_flat, c_flat = key
        for a in swaps:
            perm = list(range(k))
            perm[a], perm[a + 1] = a + 1, a
            yield (tuple(phi_flat[perm[i] * k + perm[j]] for i in range(k) for j in range(k)),
                   tuple(c_flat[perm[i] * k + perm[j]] for i in range(k) for j in range(k)))
        for a in range(k):
            for h, hinv in auts[a]:
                phi2 = list(phi_flat)
                c2 = list(c_flat)
                for j in range(k):
                    if j != a:
                        phi2[a * k + j] = compose_tables(phi_flat[a * k + j], hinv)
                        phi2[j * k + a] = compose_tables(h, phi_flat[j * k + a])
                        c2[j * k + a] = h[c_flat[j * k + a]]
                phi2[a * k + a] = compose_tables(h, compose_tables(phi_flat[a * k + a], hinv))
                yield tuple(phi2), tuple(c2)
            for x in gens[a]:
                c2 = list(c_flat)
                for j in range(k):
                    if j != a:
                        B = G[j]
                        c2[a * k + j] = B.sub_table[c2[a * k + j]][phi_flat[a * k + j][x]]
                        c2[j * k + a] = G[a].add_table[c2[j * k + a]][phi_flat[a * k + a][x]]
                yield phi_flat, tuple(c2)

    return moves


def _to_mesh(groups: Sequence[AbelianGroup], key) -> AffineMesh:
    G = tuple(groups)
    k = len(G)
    phi_flat, c_flat = key
    phi = tuple(tuple(Homomorphism.from_table(G[i], G[j], phi_flat[i * k + j]) for j in range(k))
                for i in range(k))
    c = tuple(tuple(G[j].element(c_flat[i * k + j]) for j in range(k)) for i in range(k))
    return AffineMesh(G, phi, c)


def _candidate_profile(P: FibreProfile) -> bool:
    """Non-2-reductive meshes need a fibre that every fibre maps to nontrivially."""
    G = P.groups
    if any(A.order == 1 for A in G):
        return False
    return any(all(math.gcd(B.exponent, A.exponent) > 1 for B in G) for A in G)


def profile_non2reductive(groups: Sequence[AbelianGroup], involutory: bool = False,
                          latin_shortcut: bool = True) -> list[AffineMesh]:
    """Homology class representatives for one fibre profile."""
    groups = tuple(groups)
    out = []
    # with equal orbit sizes one latin orbit makes every orbit latin, and
    # those quandles are products handled in closed form
    equal = len({A.order for A in groups}) == 1
    raw = _raw_meshes(groups, involutory, allow_bijective=not (latin_shortcut and equal))
    if raw:
        reps = _count_orbits(raw, _homology_moves(groups))
        out.extend(_to_mesh(groups, r) for r in reps)
    if latin_shortcut:
        out.extend(_latin_product_meshes(FibreProfile(groups), involutory))
    log.debug("profile %s: %d raw meshes, %d classes", groups, len(raw), len(out))
    return sorted(out, key=AffineMesh.sort_key)


def _profile_task(args):
    groups, involutory, latin_shortcut = args
    return profile_non2reductive(groups, involutory, latin_shortcut)


def enumerate_non2reductive(n: int, involutory: bool = False, latin_shortcut: bool = True,
                            workers: Optional[int] = None, max_n: int = DEFAULT_MAX_N) -> list[AffineMesh]:
    """Representatives of all non-2-reductive medial quandles of order n."""
    if n > max_n:
        raise SizeCapError(f"n = {n} exceeds the cap {max_n}")
    tasks = [(P.groups, involutory, latin_shortcut) for P in fibre_profiles(n) if _candidate_profile(P)]
    workers = worker_count(workers)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_profile_task, tasks))
    else:
        results = [_profile_task(t) for t in tasks]
    return sorted((M for r in results for M in r), key=AffineMesh.sort_key)


def is_reductive_mesh(M: AffineMesh) -> bool:
    return mesh_reductivity_degree(M) is not None


# ---------------------------------------------------------------- tables

COLUMNS = ("n", "medial", "2reductive", "involutory", "2red_involutory", "non2red",
           "red_not_2red", "nonred", "all_latin", "latin")


@dataclass
class CountRow:
    n: int
    medial: Optional[int]
    two_reductive: int
    involutory: Optional[int]
    two_reductive_involutory: int
    non2red: Optional[int]
    red_not_2red: Optional[int]
    nonred: Optional[int]
    all_latin: int
    latin: int

    def check(self) -> None:
        if self.medial is not None:
            assert self.medial == self.two_reductive + self.non2red
            assert self.non2red == self.red_not_2red + self.nonred
            assert self.nonred >= self.all_latin

    def values(self) -> tuple:
        return (self.n, self.medial, self.two_reductive, self.involutory, self.two_reductive_involutory,
                self.non2red, self.red_not_2red, self.nonred, self.all_latin, self.latin)

    def csv(self) -> str:
        return ",".join("" if v is None else str(v) for v in self.values())


@dataclass
class CountTable:
    rows: list[CountRow] = field(default_factory=list)
    meshes: dict[int, list[AffineMesh]] = field(default_factory=dict)

    def csv(self, header: bool = True) -> str:
        lines = [",".join(COLUMNS)] if header else []
        lines.extend(r.csv() for r in self.rows)
        return "\n".join(lines) + "\n"

    def row(self, n: int) -> CountRow:
        return next(r for r in self.rows if r.n == n)


def count_row(n: int, search: bool = True, workers: Optional[int] = None) -> tuple[CountRow, list[AffineMesh]]:
    two = count_2reductive(n)
    two_inv = count_2reductive(n, involutory=True)
    latin = count_latin(n)
    all_latin = count_all_orbits_latin(n)
    if not search:
        return CountRow(n, None, two, None, two_inv, None, None, None, all_latin, latin), []
    reps = enumerate_non2reductive(n, workers=workers)
    reps_inv = enumerate_non2reductive(n, involutory=True, workers=workers)
    reductive = sum(1 for M in reps if is_reductive_mesh(M))
    row = CountRow(n, two + len(reps), two, two_inv + len(reps_inv), two_inv, len(reps),
                   reductive, len(reps) - reductive, all_latin, latin)
    row.check()
    return row, reps


def assemble_tables(n_max: int, search_max: Optional[int] = None, workers: Optional[int] = None,
                    n_min: int = 1) -> CountTable:
    """Count rows for n_min..n_max; the explicit search runs up to ``search_max``."""
    if search_max is None:
        search_max = n_max
    table = CountTable()
    for n in range(n_min, n_max + 1):
        row, reps = count_row(n, search=n <= search_max, workers=workers)
        table.rows.append(row)
        table.meshes[n] = reps
    return table


# ---------------------------------------------------------------- misc

def matrix_count_check(p: int, m: int) -> int:
    """Zero-diagonal m x m matrices over Z_p with no zero column: (p^(m-1) - 1)^m."""
    formula = (p ** (m - 1) - 1) ** m
    if p * m <= 12:
        column = sum(1 for v in itertools.product(range(p), repeat=m - 1) if any(v))
        brute = sum(1 for cols in itertools.product(range(column), repeat=m))
        assert brute == column**m
        # count matrices directly rather than trusting the column product
        direct = 0
        for entries in itertools.product(range(p), repeat=m * (m - 1)):
            cols = [entries[j * (m - 1):(j + 1) * (m - 1)] for j in range(m)]
            if all(any(col) for col in cols):
                direct += 1
        if direct != formula:
            raise AssertionError(f"brute force gives {direct}, formula gives {formula}")
    return formula


def raw_mesh_sample(n: int, involutory: bool = False) -> Iterator[AffineMesh]:
    """All raw (un-deduplicated) indecomposable non-2-reductive meshes of order n."""
    for P in fibre_profiles(n):
        if _candidate_profile(P):
            for key in sorted(_raw_meshes(P.groups, involutory, allow_bijective=True)):
                yield _to_mesh(P.groups, key)
