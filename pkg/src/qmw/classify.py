"""Whole-quandle classification, congruences and the simple / SI families."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .abelian import AbelianGroup, Homomorphism, canonicalize
from .mesh import (AffineMesh, all_orbits_latin, canonical_mesh, from_dict, is_indecomposable,
                   is_valid, make_mesh, sum_quandle, to_dict)
from .quandle import (NotMedialError, Quandle, affine, brute_force_iso, is_connected, is_latin,
                      is_medial, is_quandle, orbits, projection, reductivity_degree,
                      symmetry_order)

CONGRUENCE_CAP = 12
LATTICE_SIZE_CAP = 200_000


class SizeCapError(ValueError):
    pass


# ---------------------------------------------------------------- congruences

@dataclass(frozen=True)
class Congruence:
    """A partition of {0..n-1}, stored as block labels numbered by first occurrence."""
    labels: tuple[int, ...]

    @classmethod
    def from_parent(cls, parent: Sequence[int]) -> "Congruence":
        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        seen: dict[int, int] = {}
        return cls(tuple(seen.setdefault(find(x), len(seen)) for x in range(len(parent))))

    @property
    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(max(self.labels, default=-1) + 1)]
        for x, b in enumerate(self.labels):
            out[b].append(x)
        return out

    @property
    def is_identity(self) -> bool:
        return len(set(self.labels)) == len(self.labels)

    @property
    def is_total(self) -> bool:
        return len(set(self.labels)) <= 1

    def __le__(self, other: "Congruence") -> bool:
        """Refinement: every block of self lies inside a block of other."""
        seen: dict[int, int] = {}
        return all(seen.setdefault(a, b) == b for a, b in zip(self.labels, other.labels))

    def meet(self, other: "Congruence") -> "Congruence":
        seen: dict[tuple[int, int], int] = {}
        return Congruence(tuple(seen.setdefault(p, len(seen)) for p in zip(self.labels, other.labels)))

    def __str__(self):
        return "|".join(",".join(map(str, b)) for b in self.blocks)


def _closure(Q: Quandle, parent: list[int], pending: list[tuple[int, int]]) -> Congruence:
    """Merge the pending pairs and close under left and right translations."""
    T, n = Q.table, Q.n

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    while pending:
        x, y = pending.pop()
        a, b = find(x), find(y)
        if a == b:
            continue
        parent[max(a, b)] = min(a, b)
        # images of a generating pair under every translation
        for z in range(n):
            pending.append((T[z][x], T[z][y]))
            pending.append((T[x][z], T[y][z]))
    return Congruence.from_parent(parent)


def _check_cap(Q: Quandle, cap: int) -> None:
    if Q.n > cap:
        raise SizeCapError(f"|Q| = {Q.n} exceeds the congruence cap {cap}")


def principal_congruence(Q: Quandle, a: int, b: int) -> Congruence:
    """Cg(a, b): the least congruence identifying a and b."""
    return _closure(Q, list(range(Q.n)), [(a, b)])


def join(Q: Quandle, t1: Congruence, t2: Congruence) -> Congruence:
    parent = list(range(Q.n))
    pending = []
    for t in (t1, t2):
        for blk in t.blocks:
            pending.extend((blk[0], x) for x in blk[1:])
    return _closure(Q, parent, pending)


def _principals(Q: Quandle) -> list[Congruence]:
    out = []
    for a, b in itertools.combinations(range(Q.n), 2):
        t = principal_congruence(Q, a, b)
        if t not in out:
            out.append(t)
    return out


def congruence_lattice(Q: Quandle, cap: int = CONGRUENCE_CAP,
                       max_size: int = LATTICE_SIZE_CAP) -> list[Congruence]:
    """All congruences, as joins of principal congruences, sorted by block count (descending)."""
    _check_cap(Q, cap)
    identity = Congruence(tuple(range(Q.n)))
    principals = _principals(Q)
    found = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for t in frontier:
            for p in principals:
                u = join(Q, t, p)
                if u not in found:
                    found.add(u)
                    nxt.append(u)
                    if len(found) > max_size:
                        raise SizeCapError(f"more than {max_size} congruences")
        frontier = nxt
    return sorted(found, key=lambda t: (-len(set(t.labels)), t.labels))


def is_simple(Q: Quandle, cap: int = CONGRUENCE_CAP) -> bool:
    """Exactly two congruences: every Cg(a, b) with a != b is the total one."""
    _check_cap(Q, cap)
    return Q.n >= 2 and all(t.is_total for t in _principals(Q))


def monolith(Q: Quandle, cap: int = CONGRUENCE_CAP) -> Congruence:
    """Meet of all non-identity congruences (each contains some Cg(a, b))."""
    _check_cap(Q, cap)
    ps = _principals(Q)
    if not ps:
        raise ValueError("a one-element quandle has no non-identity congruence")
    out = ps[0]
    for t in ps[1:]:
        out = out.meet(t)
    return out


def is_subdirectly_irreducible(Q: Quandle, cap: int = CONGRUENCE_CAP) -> bool:
    if Q.n < 2:
        return False
    return not monolith(Q, cap).is_identity


# ---------------------------------------------------------------- families

def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by monic b over F_p, coefficients low to high."""
    a = [x % p for x in a]
    while len(a) >= len(b):
        lead = a[-1]
        if lead:
            shift = len(a) - len(b)
            for i, coef in enumerate(b):
                a[shift + i] = (a[shift + i] - lead * coef) % p
        a.pop()
    return a


def is_irreducible(p: int, poly: Sequence[int]) -> bool:
    """Monic poly over F_p (low to high) has no monic factor of degree 1..deg/2."""
    deg = len(poly) - 1
    if deg < 1 or poly[-1] % p != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(list(poly), list(low) + [1], p)):
                return False
    return True


def companion(p: int, poly: Sequence[int]) -> Homomorphism:
    """Companion matrix of a monic polynomial, acting on (Z_p)^k."""
    k = len(poly) - 1
    A = AbelianGroup((p,) * k)
    images = []
    for i in range(k):
        if i < k - 1:
            images.append(tuple(1 if r == i + 1 else 0 for r in range(k)))
        else:
            images.append(tuple((-poly[r]) % p for r in range(k)))
    return Homomorphism(A, A, tuple(images))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def simple_affine(p: int, k: int, poly: Sequence[int]) -> Quandle:
    """Aff((Z_p)^k, M) for M the companion matrix of ``poly`` (coefficients low to high)."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if len(poly) != k + 1:
        raise ValueError(f"polynomial must have degree {k}")
    if not is_irreducible(p, poly):
        raise ValueError(f"{list(poly)} is not irreducible and monic over F_{p}")
    if poly[0] % p == 0:
        raise ValueError("x is not invertible")
    if k == 1 and (poly[0] + 1) % p == 0 and p != 2:
        raise ValueError("x - 1 gives a projection quandle, simple only for p = 2")
    return affine(AbelianGroup((p,) * k), companion(p, poly))


SI_INVOLUTORY_FAMILIES = ("cyclic", "pair", "triple")


def si_involutory_mesh(family: str, k: int, p: int = 3) -> AffineMesh:
    """Meshes of the subdirectly irreducible involutory families.

    ``cyclic`` is ((Z_{p^k}); 2; 0) for an odd prime p; ``pair`` and
    ``triple`` have fibres Z_{2^k} followed by one or two copies of Z_{2^(k-1)}.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if family == "cyclic":
        if p % 2 == 0 or not _is_prime(p):
            raise ValueError("the cyclic family needs an odd prime")
        return make_mesh([p**k], 2, 0)
    if family == "pair":
        return make_mesh([2**k, 2 ** (k - 1)], 2, [[0, -1], [1, 0]])
    if family == "triple":
        return make_mesh([2**k, 2 ** (k - 1), 2 ** (k - 1)], 2, [[0, -1, 0], [1, 0, 1], [0, -1, 0]])
    raise ValueError(f"unknown family {family!r}; choose from {SI_INVOLUTORY_FAMILIES}")


def si_involutory(family: str, k: int, p: int = 3) -> Quandle:
    return sum_quandle(si_involutory_mesh(family, k, p))


def si_2reductive_mesh(pk: int, constants: Sequence[int]) -> AffineMesh:
    """((Z_{p^k}, Z_1, ..., Z_1); 0; c) with c[i][0] = constants[i-1]."""
    A = canonicalize([pk])
    if A.rank > 1 or (pk > 1 and len(set(_prime_factors(pk))) != 1):
        raise ValueError(f"{pk} is not a prime power")
    if not constants:
        raise ValueError("at least one constant is needed")
    vals = [x % pk for x in constants]
    if len(set(vals)) != len(vals):
        raise ValueError("constants must be pairwise different")
    m = len(vals) + 1
    col = [0] + vals
    M = make_mesh([pk] + [1] * (m - 1), 0, [[col[i]] + [0] * (m - 1) for i in range(m)])
    if not is_indecomposable(M):
        raise ValueError(f"constants {list(constants)} do not generate Z{pk}")
    return M


def si_2reductive(pk: int, constants: Sequence[int]) -> Quandle:
    return sum_quandle(si_2reductive_mesh(pk, constants))


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        while n % q == 0:
            out.append(q)
            n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------- products

def direct_product(Q1: Quandle, Q2: Quandle) -> Quandle:
    """Q1 x Q2 on pairs (a, b) numbered a * |Q2| + b."""
    n2 = Q2.n
    return Quandle([[Q1.mul(a1, b1) * n2 + Q2.mul(a2, b2)
                     for b1 in range(Q1.n) for b2 in range(n2)]
                    for a1 in range(Q1.n) for a2 in range(n2)])


@dataclass
class LatinDecomposition:
    group: AbelianGroup
    automorphism: Homomorphism
    projection_size: int
    isomorphism: list[int]

    def to_dict(self) -> dict:
        return {"group": list(self.group.factors),
                "automorphism": [list(y) for y in self.automorphism.images],
                "projection_size": self.projection_size,
                "isomorphism": self.isomorphism}


def latin_decomposition(Q: Quandle, M: Optional[AffineMesh] = None) -> Optional[LatinDecomposition]:
    """Q = Aff(A, f) x (projection quandle) when every orbit is latin."""
    if M is None:
        M = canonical_mesh(Q)[0]
    if not all_orbits_latin(M):
        return None
    A = M.groups[0]
    f = Homomorphism.identity(A) - M.phi[0][0]
    P = direct_product(affine(A, f), projection(M.k))
    iso = brute_force_iso(Q, P)
    if iso is None:
        raise AssertionError("latin orbits but no product decomposition")
    return LatinDecomposition(A, f, M.k, iso)


# ---------------------------------------------------------------- report

@dataclass
class ClassificationReport:
    size: int
    medial: bool
    orbit_sizes: list[int]
    canonical_mesh: Optional[AffineMesh]
    latin: bool
    connected: bool
    reductivity_degree: Optional[int]
    symmetry_order: int
    two_reductive: bool
    involutory: bool
    decomposition: Optional[LatinDecomposition] = None
    simple: Optional[bool] = None
    subdirectly_irreducible: Optional[bool] = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "medial": self.medial,
            "orbit_sizes": self.orbit_sizes,
            "canonical_mesh": to_dict(self.canonical_mesh) if self.canonical_mesh else None,
            "latin": self.latin,
            "connected": self.connected,
            "reductivity_degree": self.reductivity_degree,
            "symmetry_order": self.symmetry_order,
            "two_reductive": self.two_reductive,
            "involutory": self.involutory,
            "decomposition": self.decomposition.to_dict() if self.decomposition else None,
            "simple": self.simple,
            "subdirectly_irreducible": self.subdirectly_irreducible,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> "ClassificationReport":
        dec = data.get("decomposition")
        if dec:
            A = AbelianGroup(tuple(dec["group"]))
            dec = LatinDecomposition(A, Homomorphism(A, A, tuple(tuple(y) for y in dec["automorphism"])),
                                     dec["projection_size"], list(dec["isomorphism"]))
        mesh = data.get("canonical_mesh")
        return cls(data["size"], data["medial"], list(data["orbit_sizes"]),
                   from_dict(mesh) if mesh else None, data["latin"], data["connected"],
                   data["reductivity_degree"], data["symmetry_order"], data["two_reductive"],
                   data["involutory"], dec, data.get("simple"), data.get("subdirectly_irreducible"))


def classify(Q: Quandle, congruence_cap: int = CONGRUENCE_CAP) -> ClassificationReport:
    if not is_quandle(Q):
        raise ValueError("not a quandle")
    if not is_medial(Q):
        raise NotMedialError("not a medial quandle")
    M = canonical_mesh(Q)[0]
    assert is_valid(M)
    red = reductivity_degree(Q)
    sym = symmetry_order(Q)
    report = ClassificationReport(
        size=Q.n,
        medial=True,
        orbit_sizes=sorted((len(o) for o in orbits(Q)), reverse=True),
        canonical_mesh=M,
        latin=is_latin(Q),
        connected=is_connected(Q),
        reductivity_degree=red,
        symmetry_order=sym,
        two_reductive=red is not None and red <= 2,
        involutory=sym <= 2,
        decomposition=latin_decomposition(Q, M),
    )
    if Q.n <= congruence_cap:
        report.simple = is_simple(Q, congruence_cap)
        report.subdirectly_irreducible = is_subdirectly_irreducible(Q, congruence_cap)
    return report
