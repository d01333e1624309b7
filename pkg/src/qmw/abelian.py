"""Finite abelian groups in invariant-factor form.

Elements are tuples of residues (one per invariant factor) and are ordered
lexicographically; the position of an element in that order is its *index*.
Homomorphisms are stored as the images of the canonical generators.  Every
heavier routine in the package works on index tables derived from these
objects, which are cached on the instances.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

BRUTE_FORCE_TUPLE_LIMIT = 10**7


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{d_1} x ... x Z_{d_k} with d_1 | d_2 | ... | d_k and all d_i > 1."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        for d in self.factors:
            if d < 2:
                raise ValueError(f"invariant factors must be > 1, got {self.factors}")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"factors {self.factors} do not form a divisibility chain")

    def __str__(self):
        if not self.factors:
            return "Z1"
        return "x".join(f"Z{d}" for d in self.factors)

    def __repr__(self):
        return f"AbelianGroup({self.to_text()})"

    def to_text(self) -> str:
        return ",".join(map(str, self.factors)) if self.factors else "1"

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = []
        s = 1
        for d in reversed(self.factors):
            strides.append(s)
            s *= d
        return tuple(reversed(strides))

    @cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(*(range(d) for d in self.factors)))

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.factors)

    def generators(self) -> list[tuple[int, ...]]:
        k = len(self.factors)
        return [tuple(int(s == t) for s in range(k)) for t in range(k)]

    def index(self, x: Sequence[int]) -> int:
        return sum(c * s for c, s in zip(x, self._strides))

    def element(self, i: int) -> tuple[int, ...]:
        return self.elements[i]

    def contains(self, x: Sequence[int]) -> bool:
        return len(x) == len(self.factors) and all(0 <= c < d for c, d in zip(x, self.factors))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.factors))

    def sub(self, x, y):
        return tuple((a - b) % d for a, b, d in zip(x, y, self.factors))

    def scale(self, m: int, x):
        return tuple((m * a) % d for a, d in zip(x, self.factors))

    def element_order(self, x) -> int:
        o = 1
        for a, d in zip(x, self.factors):
            o = math.lcm(o, d // math.gcd(a, d))
        return o

    # index tables, used by the search engines
    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        els = self.elements
        return tuple(tuple(self.index(self.add(x, y)) for y in els) for x in els)

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.index(self.neg(x)) for x in self.elements)

    @cached_property
    def sub_table(self) -> tuple[tuple[int, ...], ...]:
        add, neg = self.add_table, self.neg_table
        return tuple(tuple(add[x][neg[y]] for y in range(self.order)) for x in range(self.order))


def canonicalize(cyclic_orders: Iterable[int]) -> AbelianGroup:
    """Invariant-factor form of Z_{n_1} x ... x Z_{n_r}."""
    by_prime: dict[int, list[int]] = defaultdict(list)
    for n in cyclic_orders:
        if n < 1:
            raise ValueError("cyclic orders must be >= 1")
        for p, e in factorize(n).items():
            by_prime[p].append(p**e)
    if not by_prime:
        return AbelianGroup(())
    length = max(len(v) for v in by_prime.values())
    factors = [1] * length
    for powers in by_prime.values():
        powers.sort(reverse=True)
        for t, q in enumerate(powers):
            factors[length - 1 - t] *= q
    return AbelianGroup(tuple(factors))


def parse_group(text: str) -> AbelianGroup:
    text = text.strip()
    if not text:
        raise ValueError("empty group description")
    return canonicalize(int(t) for t in text.split(","))


def _partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def groups_of_order(n: int) -> tuple[AbelianGroup, ...]:
    """One representative per isomorphism class, sorted by factor list."""
    if n < 1:
        raise ValueError("order must be >= 1")
    per_prime = []
    for p, e in factorize(n).items():
        per_prime.append([[p**k for k in part] for part in _partitions(e)])
    groups = {canonicalize(itertools.chain.from_iterable(choice))
              for choice in itertools.product(*per_prime)}
    return tuple(sorted(groups, key=lambda g: g.factors))


@dataclass(frozen=True)
class Homomorphism:
    """A homomorphism given by the images of the canonical generators."""

    domain: AbelianGroup
    codomain: AbelianGroup
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(tuple(int(c) for c in y) for y in self.images))
        if len(self.images) != self.domain.rank:
            raise ValueError("need one image per generator of the domain")
        for y in self.images:
            if not self.codomain.contains(y):
                raise ValueError(f"image {y} is not an element of {self.codomain}")

    def __repr__(self):
        return f"Hom({self.domain}->{self.codomain}: {list(self.images)})"

    def is_well_defined(self) -> bool:
        return all(not any(self.codomain.scale(d, y)) for d, y in zip(self.domain.factors, self.images))

    def __call__(self, x):
        B = self.codomain
        out = B.zero
        for c, y in zip(x, self.images):
            out = B.add(out, B.scale(c, y))
        return out

    @cached_property
    def table(self) -> tuple[int, ...]:
        B = self.codomain
        return tuple(B.index(self(x)) for x in self.domain.elements)

    @classmethod
    def from_table(cls, domain: AbelianGroup, codomain: AbelianGroup, table: Sequence[int]) -> "Homomorphism":
        images = tuple(codomain.element(table[domain.index(g)]) for g in domain.generators())
        return cls(domain, codomain, images)

    @classmethod
    def zero_map(cls, A: AbelianGroup, B: AbelianGroup) -> "Homomorphism":
        return cls(A, B, (B.zero,) * A.rank)

    @classmethod
    def identity(cls, A: AbelianGroup) -> "Homomorphism":
        return cls(A, A, tuple(A.generators()))

    @classmethod
    def scalar(cls, A: AbelianGroup, B: AbelianGroup, m: int) -> "Homomorphism":
        """Generator t of A goes to m times generator t of B (ranks must agree).

        A trivial domain or codomain gives the zero map.
        """
        if A.rank == 0 or B.rank == 0 or m == 0:
            return cls.zero_map(A, B)
        if A.rank != B.rank:
            raise ValueError("scalar maps need groups of equal rank")
        h = cls(A, B, tuple(B.scale(m, g) for g in B.generators()))
        if not h.is_well_defined():
            raise ValueError(f"multiplication by {m} is not a homomorphism {A} -> {B}")
        return h

    def compose(self, inner: "Homomorphism") -> "Homomorphism":
        """self o inner."""
        if inner.codomain != self.domain:
            raise ValueError("composition of incompatible homomorphisms")
        return Homomorphism(inner.domain, self.codomain, tuple(self(y) for y in inner.images))

    def __add__(self, other: "Homomorphism") -> "Homomorphism":
        B = self.codomain
        return Homomorphism(self.domain, B, tuple(B.add(a, b) for a, b in zip(self.images, other.images)))

    def __neg__(self) -> "Homomorphism":
        B = self.codomain
        return Homomorphism(self.domain, B, tuple(B.neg(a) for a in self.images))

    def __sub__(self, other: "Homomorphism") -> "Homomorphism":
        return self + (-other)

    def power(self, m: int) -> "Homomorphism":
        out = Homomorphism.identity(self.domain)
        for _ in range(m):
            out = self.compose(out)
        return out

    def is_zero(self) -> bool:
        return not any(any(y) for y in self.images)

    def is_bijective(self) -> bool:
        return self.domain.order == self.codomain.order and len(set(self.table)) == self.codomain.order

    def image_size(self) -> int:
        return len(set(self.table))

    def inverse(self) -> "Homomorphism":
        if not self.is_bijective():
            raise ValueError("not invertible")
        inv = [0] * len(self.table)
        for i, j in enumerate(self.table):
            inv[j] = i
        return Homomorphism.from_table(self.codomain, self.domain, inv)

    def sort_key(self):
        return self.images


@lru_cache(maxsize=None)
def _image_candidates(d: int, B: AbelianGroup) -> tuple[tuple[int, ...], ...]:
    return tuple(y for y in B.elements if not any(B.scale(d, y)))


def all_homs(A: AbelianGroup, B: AbelianGroup) -> list[Homomorphism]:
    """Every homomorphism A -> B, in lexicographic order of image lists."""
    choices = [_image_candidates(d, B) for d in A.factors]
    return [Homomorphism(A, B, imgs) for imgs in itertools.product(*choices)]


def hom_count(A: AbelianGroup, B: AbelianGroup) -> int:
    return math.prod(math.gcd(d, e) for d in A.factors for e in B.factors)


def all_isos(A: AbelianGroup, B: AbelianGroup) -> list[Homomorphism]:
    if A != B:
        return []
    return [h for h in all_homs(A, B) if h.is_bijective()]


@lru_cache(maxsize=None)
def aut_group(A: AbelianGroup) -> tuple[Homomorphism, ...]:
    return tuple(all_isos(A, A))


def compose_tables(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """Table of f o g."""
    return tuple(f[x] for x in g)


def invert_table(f: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(f)
    for i, j in enumerate(f):
        inv[j] = i
    return tuple(inv)


def conjugacy_classes(auts: Sequence[Homomorphism]) -> list[tuple[Homomorphism, int]]:
    """Partition a group of automorphisms into conjugacy classes.

    Returns ``(representative, class_size)`` pairs, the representative being
    the minimum of its class under the image-list order; pairs are sorted by
    representative.
    """
    if not auts:
        return []
    A = auts[0].domain
    tables = [h.table for h in auts]
    inverses = [invert_table(t) for t in tables]
    by_table = {h.table: h for h in auts}
    seen: set = set()
    out = []
    for h in sorted(auts, key=Homomorphism.sort_key):
        if h.table in seen:
            continue
        cls = {compose_tables(g, compose_tables(h.table, gi)) for g, gi in zip(tables, inverses)}
        seen |= cls
        rep = min((by_table[t] for t in cls), key=Homomorphism.sort_key)
        out.append((rep, len(cls)))
    assert sum(s for _, s in out) == len(auts), f"class sizes do not cover Aut({A})"
    return sorted(out, key=lambda p: p[0].sort_key())


def closure_indices(A: AbelianGroup, gens: Iterable[int]) -> frozenset[int]:
    """Subgroup generated by element indices (finite, so closure under + suffices)."""
    add = A.add_table
    sub = {0}
    frontier = [0]
    gens = {g for g in gens if g != 0}
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = add[x][g]
            if y not in sub:
                sub.add(y)
                frontier.append(y)
    return frozenset(sub)


def subgroup_generated(A: AbelianGroup, gens: Iterable[Sequence[int]]) -> frozenset[tuple[int, ...]]:
    sub = closure_indices(A, (A.index(g) for g in gens))
    return frozenset(A.element(i) for i in sub)


def generates(A: AbelianGroup, gens: Iterable[int]) -> bool:
    return len(closure_indices(A, gens)) == A.order


def fixed_point_count(h: Homomorphism) -> int:
    if h.domain != h.codomain:
        raise ValueError("fixed points need an endomorphism")
    return sum(1 for i, j in enumerate(h.table) if i == j)


@lru_cache(maxsize=None)
def subgroups(A: AbelianGroup) -> tuple[frozenset[int], ...]:
    """All subgroups as frozensets of element indices, smallest first."""
    found = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        H = frontier.pop()
        for x in range(A.order):
            if x not in H:
                K = closure_indices(A, set(H) | {x})
                if K not in found:
                    found.add(K)
                    frontier.append(K)
    return tuple(sorted(found, key=lambda H: (len(H), sorted(H))))


@lru_cache(maxsize=None)
def mobius_to_top(A: AbelianGroup) -> tuple[tuple[frozenset[int], int], ...]:
    """Pairs (H, mu(H, A)) over the subgroup lattice, omitting zero values."""
    subs = subgroups(A)
    mu: dict[frozenset[int], int] = {}
    for H in reversed(subs):
        if len(H) == A.order:
            mu[H] = 1
        else:
            mu[H] = -sum(m for K, m in mu.items() if H < K)
    return tuple((H, m) for H, m in mu.items() if m)


def generating_tuple_count(A: AbelianGroup, length: int) -> int:
    """Tuples in A^length that generate A, by Moebius inversion on subgroups."""
    return sum(m * len(H) ** length for H, m in mobius_to_top(A))


def non_generating_tuple_count(A: AbelianGroup, length: int) -> int:
    if length < 0:
        raise ValueError("length must be >= 0")
    total = A.order**length
    if total > BRUTE_FORCE_TUPLE_LIMIT:
        return total - generating_tuple_count(A, length)
    if A.order == 1:
        return 0
    # a tuple fails to generate iff some maximal subgroup holds every entry
    maximal = [H for H in subgroups(A) if len(H) < A.order
               and not any(H < K < frozenset(range(A.order)) for K in subgroups(A))]
    masks = [sum(1 << b for b, H in enumerate(maximal) if x in H) for x in range(A.order)]
    full = (1 << len(maximal)) - 1
    count = 0
    for t in itertools.product(masks, repeat=length):
        m = full
        for x in t:
            m &= x
        if m:
            count += 1
    return count
