"""Affine meshes: the heterogeneous affine structure behind medial quandles.

A mesh has fibres ``groups[i]``, homomorphisms ``phi[i][j]: A_i -> A_j`` and
constants ``c[i][j]`` in ``A_j``.  Its sum is the quandle on the disjoint
union of the fibres with

    a * b = c[i][j] + phi[i][j](a) + (1 - phi[j][j])(b)    (a in A_i, b in A_j).

Elements of the sum are numbered fibre by fibre, each fibre in its own
element order.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .abelian import (AbelianGroup, Homomorphism, aut_group, canonicalize, closure_indices,
                      compose_tables)
from .quandle import Quandle, orbit_group, orbits


class MeshShapeError(ValueError):
    """Malformed mesh data (wrong sizes, domains or element membership)."""


@dataclass(frozen=True)
class AffineMesh:
    groups: tuple[AbelianGroup, ...]
    phi: tuple[tuple[Homomorphism, ...], ...]
    c: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "phi", tuple(tuple(row) for row in self.phi))
        object.__setattr__(self, "c", tuple(tuple(tuple(x) for x in row) for row in self.c))
        check_shape(self)

    @property
    def k(self) -> int:
        return len(self.groups)

    @property
    def size(self) -> int:
        return sum(A.order for A in self.groups)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, s = [], 0
        for A in self.groups:
            out.append(s)
            s += A.order
        return tuple(out)

    def sort_key(self):
        return (tuple(A.factors for A in self.groups),
                tuple(tuple(h.images for h in row) for row in self.phi),
                self.c)

    def __repr__(self):
        return f"AffineMesh({to_json(self)})"


def check_shape(M: AffineMesh) -> None:
    k = len(M.groups)
    if k == 0:
        raise MeshShapeError("a mesh needs at least one fibre")
    if len(M.phi) != k or any(len(row) != k for row in M.phi):
        raise MeshShapeError("phi must be a k x k matrix")
    if len(M.c) != k or any(len(row) != k for row in M.c):
        raise MeshShapeError("c must be a k x k matrix")
    for i, j in itertools.product(range(k), repeat=2):
        h = M.phi[i][j]
        if h.domain != M.groups[i] or h.codomain != M.groups[j]:
            raise MeshShapeError(f"phi[{i}][{j}] must map {M.groups[i]} -> {M.groups[j]}")
        if not h.is_well_defined():
            raise MeshShapeError(f"phi[{i}][{j}] is not a well-defined homomorphism")
        if not M.groups[j].contains(M.c[i][j]):
            raise MeshShapeError(f"c[{i}][{j}] = {M.c[i][j]} is not an element of {M.groups[j]}")


def _as_group(g) -> AbelianGroup:
    if isinstance(g, AbelianGroup):
        return g
    if isinstance(g, int):
        return canonicalize([g])
    return canonicalize(list(g))


def _as_hom(x, A: AbelianGroup, B: AbelianGroup) -> Homomorphism:
    if isinstance(x, Homomorphism):
        return x
    if isinstance(x, int):
        return Homomorphism.scalar(A, B, x)
    return Homomorphism(A, B, tuple(tuple(y) for y in x))


def _as_element(x, A: AbelianGroup) -> tuple[int, ...]:
    if isinstance(x, int):
        if A.rank == 0 or x == 0:
            return A.zero
        if A.rank != 1:
            raise MeshShapeError(f"integer constant {x} is ambiguous in {A}")
        return (x % A.factors[0],)
    return tuple(x)


def make_mesh(groups, phi, c) -> AffineMesh:
    """Build a mesh from shorthand.

    Groups may be orders or factor lists; a homomorphism may be an integer m
    (generator to m times generator) or a list of generator images; constants
    in cyclic fibres may be plain integers.  ``phi=0`` or ``c=0`` means the
    zero matrix.
    """
    groups = tuple(_as_group(g) for g in groups)
    k = len(groups)
    if isinstance(phi, int):
        phi = [[phi] * k for _ in range(k)]
    if isinstance(c, int):
        c = [[c] * k for _ in range(k)]
    try:
        phi = tuple(tuple(_as_hom(phi[i][j], groups[i], groups[j]) for j in range(k)) for i in range(k))
        c = tuple(tuple(_as_element(c[i][j], groups[j]) for j in range(k)) for i in range(k))
    except (IndexError, TypeError, ValueError) as exc:
        raise MeshShapeError(f"malformed mesh shorthand: {exc}") from exc
    return AffineMesh(groups, phi, c)


@dataclass
class MeshReport:
    valid: bool
    axiom: Optional[str] = None
    indices: Optional[tuple[int, ...]] = None

    def __str__(self):
        if self.valid:
            return "valid affine mesh"
        return f"{self.axiom} fails at indices {self.indices}"


def _tables(M: AffineMesh):
    return [[M.phi[i][j].table for j in range(M.k)] for i in range(M.k)]


def one_minus_table(A: AbelianGroup, f: Sequence[int]) -> tuple[int, ...]:
    sub = A.sub_table
    return tuple(sub[x][f[x]] for x in range(A.order))


def validate_mesh(M: AffineMesh) -> MeshReport:
    check_shape(M)
    k, G = M.k, M.groups
    T = _tables(M)
    cidx = [[G[j].index(M.c[i][j]) for j in range(k)] for i in range(k)]
    for i in range(k):
        if len(set(one_minus_table(G[i], T[i][i]))) != G[i].order:
            return MeshReport(False, "M1", (i,))
    for i in range(k):
        if cidx[i][i] != 0:
            return MeshReport(False, "M2", (i,))
    for i, kk in itertools.product(range(k), repeat=2):
        first = compose_tables(T[0][kk], T[i][0])
        for j in range(1, k):
            if compose_tables(T[j][kk], T[i][j]) != first:
                return MeshReport(False, "M3", (i, 0, j, kk))
    for i, j, kk in itertools.product(range(k), repeat=3):
        sub = G[kk].sub_table
        if T[j][kk][cidx[i][j]] != T[kk][kk][sub[cidx[i][kk]][cidx[j][kk]]]:
            return MeshReport(False, "M4", (i, j, kk))
    return MeshReport(True)


def is_valid(M: AffineMesh) -> bool:
    return validate_mesh(M).valid


def column_span(M: AffineMesh, j: int) -> frozenset[int]:
    A = M.groups[j]
    gens = set()
    for i in range(M.k):
        gens.add(A.index(M.c[i][j]))
        gens.update(M.phi[i][j].table)
    return closure_indices(A, gens)


def is_indecomposable(M: AffineMesh) -> bool:
    return all(len(column_span(M, j)) == M.groups[j].order for j in range(M.k))


def mesh_sum(M: AffineMesh) -> tuple[Quandle, list[tuple[int, tuple[int, ...]]]]:
    """The sum quandle and, per element, its (fibre, coordinates)."""
    G, k = M.groups, M.k
    off = M.offsets
    T = _tables(M)
    om = [one_minus_table(G[j], T[j][j]) for j in range(k)]
    cidx = [[G[j].index(M.c[i][j]) for j in range(k)] for i in range(k)]
    index_map = [(i, x) for i in range(k) for x in G[i].elements]
    rows = []
    for i in range(k):
        for a in range(G[i].order):
            row = []
            for j in range(k):
                add = G[j].add_table
                base = add[cidx[i][j]][T[i][j][a]]
                row.extend(off[j] + add[base][om[j][b]] for b in range(G[j].order))
            rows.append(row)
    return Quandle(rows), index_map


def sum_quandle(M: AffineMesh) -> Quandle:
    return mesh_sum(M)[0]


def canonical_mesh(Q: Quandle, transversal: Optional[Sequence[int]] = None):
    """Canonical mesh of a medial quandle over a transversal of its orbits.

    Fibres follow the orbits ordered by least element.  Returns the mesh, the
    orbit charts, and ``embedding`` with embedding[x] the index of x in the
    sum of the mesh (an isomorphism Q -> sum).
    """
    orbs = orbits(Q)
    if transversal is None:
        reps = [b[0] for b in orbs]
    else:
        reps = []
        for b in orbs:
            hits = [e for e in transversal if e in b]
            if len(hits) != 1:
                raise ValueError("transversal must meet every orbit exactly once")
            reps.append(hits[0])
    charts = [orbit_group(Q, e) for e in reps]
    T = Q.table
    groups = tuple(ch.group for ch in charts)
    phi = []
    c = []
    for i, (e, che) in enumerate(zip(reps, charts)):
        prow, crow = [], []
        for j, (f, chf) in enumerate(zip(reps, charts)):
            B = chf.group
            ef = chf.to_group[T[e][f]]
            images = []
            for g in che.group.generators():
                x = che.from_group[g]
                images.append(B.sub(chf.to_group[T[x][f]], ef))
            prow.append(Homomorphism(che.group, B, tuple(images)))
            crow.append(ef)
        phi.append(tuple(prow))
        c.append(tuple(crow))
    M = AffineMesh(groups, tuple(phi), tuple(c))
    embedding = [0] * Q.n
    for i, ch in enumerate(charts):
        for x in ch.orbit:
            embedding[x] = M.offsets[i] + ch.group.index(ch.to_group[x])
    return M, charts, embedding


@dataclass(frozen=True)
class HomologyWitness:
    pi: tuple[int, ...]
    psi: tuple[Homomorphism, ...]
    d: tuple[tuple[int, ...], ...]

    def check(self, M: AffineMesh, M2: AffineMesh) -> bool:
        """Verify both homology conditions directly."""
        pi, psi, d = self.pi, self.psi, self.d
        k = M.k
        for i in range(k):
            if psi[i].domain != M.groups[i] or psi[i].codomain != M2.groups[pi[i]] or not psi[i].is_bijective():
                return False
        for i, j in itertools.product(range(k), repeat=2):
            p2 = M2.phi[pi[i]][pi[j]]
            if psi[j].compose(M.phi[i][j]) != p2.compose(psi[i]):
                return False
            B = M2.groups[pi[j]]
            rhs = B.sub(B.add(M2.c[pi[i]][pi[j]], p2(d[i])), M2.phi[pi[j]][pi[j]](d[j]))
            if psi[j](M.c[i][j]) != rhs:
                return False
        return True

    def bijection(self, M: AffineMesh, M2: AffineMesh) -> list[int]:
        """Element map between the sums: a in A_i goes to psi_i(a) + d_i."""
        out = []
        for i, A in enumerate(M.groups):
            B = M2.groups[self.pi[i]]
            for x in A.elements:
                y = B.add(self.psi[i](x), self.d[i])
                out.append(M2.offsets[self.pi[i]] + B.index(y))
        return out


def apply_homology(M: AffineMesh, pi: Sequence[int], psi: Sequence[Homomorphism],
                   d: Sequence[Sequence[int]]) -> AffineMesh:
    """The mesh M' for which (pi, psi, d) witnesses that M and M' are homologous."""
    k = M.k
    groups = [None] * k
    for i in range(k):
        groups[pi[i]] = psi[i].codomain
    phi = [[None] * k for _ in range(k)]
    for i, j in itertools.product(range(k), repeat=2):
        phi[pi[i]][pi[j]] = psi[j].compose(M.phi[i][j]).compose(psi[i].inverse())
    c = [[None] * k for _ in range(k)]
    for i, j in itertools.product(range(k), repeat=2):
        B = groups[pi[j]]
        val = B.sub(psi[j](M.c[i][j]), phi[pi[i]][pi[j]](d[i]))
        c[pi[i]][pi[j]] = B.add(val, phi[pi[j]][pi[j]](d[j]))
    return AffineMesh(tuple(groups), tuple(map(tuple, phi)), tuple(map(tuple, c)))


def random_homology(M: AffineMesh, rng) -> tuple[AffineMesh, tuple]:
    """Apply a random (pi, psi, d) to M; returns the new mesh and the triple.

    ``rng`` is a ``random.Random``; pi only permutes fibres with equal groups.
    """
    k = M.k
    pi = list(range(k))
    for A in sorted(set(M.groups), key=lambda g: g.factors):
        idx = [i for i in range(k) if M.groups[i] == A]
        shuffled = idx[:]
        rng.shuffle(shuffled)
        for a, b in zip(idx, shuffled):
            pi[a] = b
    psi = [rng.choice(aut_group(A)) for A in M.groups]
    d = [rng.choice(A.elements) for A in M.groups]
    return apply_homology(M, pi, psi, d), (tuple(pi), tuple(psi), tuple(d))


def homologous(M: AffineMesh, M2: AffineMesh, require_indecomposable: bool = True) -> Optional[HomologyWitness]:
    """Search for a homology M ~ M2; None when the meshes are not homologous.

    The permutation and the fibre isomorphisms are chosen together, pruning on
    the d-free condition; the translations d are searched afterwards.  When
    both meshes have zero homomorphism matrices the d's play no role and the
    constants are compared directly.
    """
    if require_indecomposable and not (is_indecomposable(M) and is_indecomposable(M2)):
        raise ValueError("homology decides isomorphism only for indecomposable meshes")
    k = M.k
    if M2.k != k or sorted(A.factors for A in M.groups) != sorted(A.factors for A in M2.groups):
        return None
    G1, G2 = M.groups, M2.groups
    T1, T2 = _tables(M), _tables(M2)
    c1 = [[G1[j].index(M.c[i][j]) for j in range(k)] for i in range(k)]
    c2 = [[G2[j].index(M2.c[i][j]) for j in range(k)] for i in range(k)]
    zero_phi = all(not any(t) for row in T1 for t in row) and all(not any(t) for row in T2 for t in row)
    auts = {A: [h.table for h in aut_group(A)] for A in set(G1)}

    pi = [None] * k
    psi = [None] * k
    used = [False] * k

    def consistent(i: int) -> bool:
        for a in range(i + 1):
            for (x, y) in {(a, i), (i, a)}:
                if compose_tables(psi[y], T1[x][y]) != compose_tables(T2[pi[x]][pi[y]], psi[x]):
                    return False
                if zero_phi and psi[y][c1[x][y]] != c2[pi[x]][pi[y]]:
                    return False
        return True

    def search_d():
        d = [None] * k

        def ok(i):
            for a in range(i + 1):
                for (x, y) in ((a, i), (i, a)):
                    B = G2[pi[y]]
                    p = T2[pi[x]][pi[y]][d[x]]
                    q = T2[pi[y]][pi[y]][d[y]]
                    if psi[y][c1[x][y]] != B.sub_table[B.add_table[c2[pi[x]][pi[y]]][p]][q]:
                        return False
            return True

        def rec(i):
            if i == k:
                return list(d)
            for v in range(G2[pi[i]].order):
                d[i] = v
                if ok(i):
                    res = rec(i + 1)
                    if res is not None:
                        return res
            d[i] = None
            return None

        return rec(0)

    def rec(i):
        if i == k:
            if zero_phi:
                return [0] * k
            return search_d()
        for t in range(k):
            if used[t] or G2[t] != G1[i]:
                continue
            pi[i] = t
            used[t] = True
            for h in auts[G1[i]]:
                psi[i] = h
                if consistent(i):
                    res = rec(i + 1)
                    if res is not None:
                        return res
            used[t] = False
            pi[i] = None
            psi[i] = None
        return None

    d = rec(0)
    if d is None:
        return None
    return HomologyWitness(
        tuple(pi),
        tuple(Homomorphism.from_table(G1[i], G2[pi[i]], psi[i]) for i in range(k)),
        tuple(G2[pi[i]].element(d[i]) for i in range(k)),
    )


# ---------------------------------------------------------------- criteria

def gcd_check(M: AffineMesh) -> bool:
    g = math.gcd(*(A.order for A in M.groups))
    for i in range(M.k):
        t = M.phi[i][i].table
        if g % len(set(t[x] for x in t)):
            return False
    return True


def _power_table(t: Sequence[int], m: int) -> tuple[int, ...]:
    out = tuple(range(len(t)))
    for _ in range(m):
        out = compose_tables(t, out)
    return out


def mesh_reductivity_degree(M: AffineMesh) -> Optional[int]:
    """1 + least m with every diagonal phi[i][i]^m = 0 (indecomposable meshes); None if never."""
    bound = max(A.order for A in M.groups)
    diag = [M.phi[i][i].table for i in range(M.k)]
    for m in range(bound + 1):
        if all(not any(_power_table(t, m)) for t in diag):
            return m + 1
    return None


def symmetry_check(M: AffineMesh, n: int) -> bool:
    """Whether sum_{r<n} (1 - phi[i][i])^r vanishes on every fibre."""
    for i, A in enumerate(M.groups):
        f = one_minus_table(A, M.phi[i][i].table)
        add = A.add_table
        acc = [0] * A.order
        power = tuple(range(A.order))
        for _ in range(n):
            acc = [add[a][p] for a, p in zip(acc, power)]
            power = compose_tables(f, power)
        if any(acc):
            return False
    return True


def is_2reductive(M: AffineMesh) -> bool:
    return all(h.is_zero() for row in M.phi for h in row)


def is_involutory(M: AffineMesh) -> bool:
    """Every diagonal homomorphism is multiplication by 2."""
    for i, A in enumerate(M.groups):
        if M.phi[i][i].table != tuple(A.index(A.scale(2, x)) for x in A.elements):
            return False
    return True


def zero_column_check(M: AffineMesh) -> bool:
    """A zero entry in a column of phi forces the whole column to vanish."""
    for kk in range(M.k):
        col = [M.phi[i][kk].is_zero() for i in range(M.k)]
        if any(col) and not all(col):
            return False
    return True


def all_orbits_latin(M: AffineMesh) -> bool:
    return all(M.phi[i][i].is_bijective() for i in range(M.k))


def latin_normalize(M: AffineMesh) -> AffineMesh:
    """Product-form mesh ((A,...,A); phi[0][0] everywhere; 0) homologous to M."""
    A = M.groups[0]
    if any(B != A for B in M.groups) or not all_orbits_latin(M):
        raise ValueError("latin normal form needs equal fibres with bijective diagonal homomorphisms")
    k = M.k
    f = M.phi[0][0]
    out = AffineMesh((A,) * k, tuple((f,) * k for _ in range(k)), tuple((A.zero,) * k for _ in range(k)))
    if homologous(M, out) is None:
        raise AssertionError("latin normal form is not homologous to the input")
    return out


# ---------------------------------------------------------------- file format

def to_dict(M: AffineMesh) -> dict:
    return {
        "groups": [list(A.factors) for A in M.groups],
        "phi": [[[list(y) for y in h.images] for h in row] for row in M.phi],
        "c": [[list(x) for x in row] for row in M.c],
    }


def from_dict(data: dict) -> AffineMesh:
    try:
        groups = tuple(AbelianGroup(tuple(g)) for g in data["groups"])
        k = len(groups)
        phi = tuple(tuple(Homomorphism(groups[i], groups[j], tuple(tuple(y) for y in data["phi"][i][j]))
                          for j in range(k)) for i in range(k))
        c = tuple(tuple(tuple(data["c"][i][j]) for j in range(k)) for i in range(k))
    except (KeyError, IndexError, TypeError) as exc:
        raise MeshShapeError(f"malformed mesh data: {exc}") from exc
    except ValueError as exc:
        raise MeshShapeError(str(exc)) from exc
    return AffineMesh(groups, phi, c)


def to_json(M: AffineMesh) -> str:
    return json.dumps(to_dict(M), separators=(",", ":"))


def from_json(text: str) -> AffineMesh:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MeshShapeError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_dict(data)
