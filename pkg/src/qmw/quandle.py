"""Quandles given by multiplication tables.

``table[a][b]`` is the product ``a . b``; rows are the left translations.
Besides the axioms and the classification predicates this module holds the
brute-force oracles (isomorphism search and exhaustive enumeration) that the
mesh-based machinery is checked against.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

from . import permgroup
from .abelian import AbelianGroup, Homomorphism, groups_of_order
from .permgroup import PermGroup

BRUTE_FORCE_ENUMERATION_CAP = 6


class QuandleParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotMedialError(ValueError):
    pass


class Quandle:
    """A finite binary algebra on {0, ..., n-1}; use ``validate`` to check the axioms."""

    def __init__(self, table: Iterable[Sequence[int]]):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.n = len(self.table)
        for row in self.table:
            if len(row) != self.n:
                raise ValueError("multiplication table must be square")
            for v in row:
                if not 0 <= v < self.n:
                    raise ValueError(f"entry {v} out of range for size {self.n}")

    def __eq__(self, other):
        return isinstance(other, Quandle) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"Quandle(n={self.n})"

    def __len__(self):
        return self.n

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def left(self, a: int) -> tuple[int, ...]:
        return self.table[a]

    def right(self, b: int) -> tuple[int, ...]:
        return tuple(self.table[a][b] for a in range(self.n))

    def relabel(self, perm: Sequence[int]) -> "Quandle":
        """Isomorphic copy in which element x is renamed perm[x]."""
        inv = permgroup.inverse(perm)
        return Quandle([[perm[self.table[inv[a]][inv[b]]] for b in range(self.n)] for a in range(self.n)])

    def to_text(self) -> str:
        lines = [str(self.n)]
        lines += [" ".join(map(str, row)) for row in self.table]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Quandle":
        lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
        if not lines:
            raise QuandleParseError("empty input", 1)
        lineno, first = lines[0]
        try:
            n = int(first.strip())
        except ValueError:
            raise QuandleParseError(f"expected the size, got {first.strip()!r}", lineno) from None
        if n < 1:
            raise QuandleParseError("size must be positive", lineno)
        if len(lines) - 1 < n:
            raise QuandleParseError(f"expected {n} rows, found {len(lines) - 1}", lines[-1][0] + 1)
        if len(lines) - 1 > n:
            raise QuandleParseError(f"expected {n} rows, found {len(lines) - 1}", lines[n + 1][0])
        rows = []
        for lineno, ln in lines[1:]:
            row = []
            col = 0
            for tok in ln.split():
                col = ln.index(tok, col) + 1
                if len(row) == n:
                    raise QuandleParseError(f"expected {n} entries, found more", lineno, col)
                try:
                    v = int(tok)
                except ValueError:
                    raise QuandleParseError(f"not an integer: {tok!r}", lineno, col) from None
                if not 0 <= v < n:
                    raise QuandleParseError(f"entry {v} out of range 0..{n - 1}", lineno, col)
                row.append(v)
                col += len(tok) - 1
            if len(row) != n:
                raise QuandleParseError(f"expected {n} entries, found {len(row)}", lineno, len(ln) + 1)
            rows.append(row)
        return cls(rows)

    @cached_property
    def dis_generators(self) -> list[tuple[int, ...]]:
        inv = [permgroup.inverse(r) for r in self.table]
        gens = []
        seen = set()
        for a in range(self.n):
            for b in range(self.n):
                g = permgroup.compose(self.table[a], inv[b])
                if g not in seen:
                    seen.add(g)
                    gens.append(g)
        return gens


def projection(n: int) -> Quandle:
    return Quandle([list(range(n)) for _ in range(n)])


def affine(A: AbelianGroup, f: Homomorphism) -> Quandle:
    """Aff(A, f): x*y = (1-f)(x) + f(y) on the elements of A in index order."""
    one_minus = Homomorphism.identity(A) - f
    els = A.elements
    return Quandle([[A.index(A.add(one_minus(x), f(y))) for y in els] for x in els])


def cyclic_affine(n: int, f: int) -> Quandle:
    return Quandle([[((1 - f) * x + f * y) % n for y in range(n)] for x in range(n)])


@dataclass
class ValidationReport:
    idempotent: bool = True
    left_quasigroup: bool = True
    left_distributive: bool = True
    idempotent_witness: Optional[int] = None
    left_quasigroup_witness: Optional[int] = None
    left_distributive_witness: Optional[tuple[int, int, int]] = None

    @property
    def is_quandle(self) -> bool:
        return self.idempotent and self.left_quasigroup and self.left_distributive

    def failures(self) -> list[str]:
        out = []
        if not self.idempotent:
            out.append(f"idempotence fails at x={self.idempotent_witness}")
        if not self.left_quasigroup:
            out.append(f"row {self.left_quasigroup_witness} is not a permutation")
        if not self.left_distributive:
            a, b, c = self.left_distributive_witness
            out.append(f"left distributivity fails at (a,b,c)=({a},{b},{c})")
        return out


def validate(Q: Quandle) -> ValidationReport:
    rep = ValidationReport()
    T, n = Q.table, Q.n
    for x in range(n):
        if T[x][x] != x:
            rep.idempotent, rep.idempotent_witness = False, x
            break
    for a in range(n):
        if len(set(T[a])) != n:
            rep.left_quasigroup, rep.left_quasigroup_witness = False, a
            break
    for a, b, c in itertools.product(range(n), repeat=3):
        if T[a][T[b][c]] != T[T[a][b]][T[a][c]]:
            rep.left_distributive, rep.left_distributive_witness = False, (a, b, c)
            break
    return rep


def is_quandle(Q: Quandle) -> bool:
    return validate(Q).is_quandle


def is_medial_identity(Q: Quandle) -> bool:
    T = Q.table
    r = range(Q.n)
    return all(T[T[x][y]][T[u][v]] == T[T[x][u]][T[y][v]]
               for x in r for y in r for u in r for v in r)


def is_medial_dis(Q: Quandle) -> bool:
    return PermGroup(Q.n, Q.dis_generators).is_abelian()


def is_medial(Q: Quandle) -> bool:
    """Mediality by the four-variable identity, confirmed by commutativity of Dis(Q)."""
    a = is_medial_identity(Q)
    b = is_medial_dis(Q)
    if a != b:
        raise AssertionError(f"mediality tests disagree on {Q.table}")
    return a


def dis(Q: Quandle, cap: int = permgroup.DEFAULT_CAP) -> PermGroup:
    return PermGroup(Q.n, Q.dis_generators, cap=cap)


def lmlt(Q: Quandle, cap: int = permgroup.DEFAULT_CAP) -> PermGroup:
    return PermGroup(Q.n, Q.table, cap=cap)


def orbits(Q: Quandle) -> list[list[int]]:
    return lmlt(Q).orbits()


@dataclass
class OrbitGroupChart:
    """The orbit Qe made into an abelian group with neutral element e."""

    orbit: list[int]
    base: int
    group: AbelianGroup
    to_group: dict[int, tuple[int, ...]]
    from_group: dict[tuple[int, ...], int]
    add_table: dict[tuple[int, int], int] = field(repr=False)
    translation_action: Homomorphism

    def add(self, x: int, y: int) -> int:
        return self.add_table[(x, y)]


def _identify_group(orbit: list[int], add: dict[tuple[int, int], int], zero: int):
    """Find a canonical group and an isomorphism onto the orbit group."""
    m = len(orbit)

    def mult(k, x):
        out = zero
        for _ in range(k):
            out = add[(out, x)]
        return out

    order_of = {}
    for x in orbit:
        k, y = 1, x
        while y != zero:
            y = add[(y, x)]
            k += 1
        order_of[x] = k

    for G in groups_of_order(m):
        d = G.factors

        def extend(chosen: list[int], span: set[int]):
            t = len(chosen)
            if t == len(d):
                return chosen
            for x in orbit:
                if order_of[x] != d[t]:
                    continue
                new_span = {add[(s, mult(a, x))] for s in span for a in range(d[t])}
                if len(new_span) == len(span) * d[t]:
                    found = extend(chosen + [x], new_span)
                    if found:
                        return found
            return None

        gens = extend([], {zero})
        if gens is not None:
            from_group = {}
            for coords in G.elements:
                v = zero
                for c, g in zip(coords, gens):
                    v = add[(v, mult(c, g))]
                from_group[coords] = v
            return G, from_group
    raise NotMedialError("orbit group is not an abelian group")


def orbit_group(Q: Quandle, e: int) -> OrbitGroupChart:
    G = dis(Q)
    alpha = G.transversal(e)
    orbit = sorted(alpha)
    add = {}
    for x in orbit:
        ax = alpha[x]
        for y in orbit:
            add[(x, y)] = ax[y]
    # well-definedness: a different displacement moving e to x must act the same way
    for g in G.generators:
        for x in orbit:
            for y in orbit:
                if add[(g[x], y)] != g[add[(x, y)]]:
                    raise NotMedialError(f"orbit addition is not well defined at {x}+{y}")
    for x in orbit:
        for y in orbit:
            if add[(x, y)] != add[(y, x)]:
                raise NotMedialError("orbit addition is not commutative")
    grp, from_group = _identify_group(orbit, add, e)
    to_group = {v: k for k, v in from_group.items()}
    Le = Q.table[e]
    action = Homomorphism(grp, grp, tuple(to_group[Le[from_group[g]]] for g in grp.generators()))
    # L_e must act as an automorphism of the chart group
    for x in grp.elements:
        if to_group[Le[from_group[x]]] != action(x):
            raise NotMedialError("L_e does not act as a group automorphism on the orbit")
    return OrbitGroupChart(orbit, e, grp, to_group, from_group, add, action)


def subquandle(Q: Quandle, elements: Sequence[int]) -> Quandle:
    """The subquandle on ``elements`` (which must be closed), renumbered in the given order."""
    pos = {x: i for i, x in enumerate(elements)}
    try:
        return Quandle([[pos[Q.mul(a, b)] for b in elements] for a in elements])
    except KeyError as exc:
        raise ValueError("elements are not closed under the operation") from exc


def is_latin(Q: Quandle) -> bool:
    return all(len(set(Q.right(b))) == Q.n for b in range(Q.n))


def is_connected(Q: Quandle) -> bool:
    return len(orbits(Q)) == 1


def symmetry_order(Q: Quandle) -> int:
    """Least n with (L_a)^n = 1 for every a."""
    return math.lcm(*(permgroup.perm_order(r) for r in Q.table))


def is_n_symmetric(Q: Quandle, n: int) -> bool:
    return n % symmetry_order(Q) == 0


def reductivity_degree(Q: Quandle) -> Optional[int]:
    """Least m <= |Q| such that (R_y)^m is the constant map onto y; None if none."""
    T, n = Q.table, Q.n
    cur = [[x for _ in range(n)] for x in range(n)]  # cur[x][y] = x R_y^m
    for m in range(1, n + 1):
        cur = [[T[cur[x][y]][y] for y in range(n)] for x in range(n)]
        if all(cur[x][y] == y for x in range(n) for y in range(n)):
            return m
    return None


def is_m_reductive(Q: Quandle, m: int) -> bool:
    T, n = Q.table, Q.n
    for x in range(n):
        for y in range(n):
            z = x
            for _ in range(m):
                z = T[z][y]
            if z != y:
                return False
    return True


def element_invariants(Q: Quandle) -> list[tuple]:
    """Per-element data preserved by isomorphisms."""
    orbs = orbits(Q)
    size_of = {x: len(b) for b in orbs for x in b}
    T = Q.table
    out = []
    for a in range(Q.n):
        fixed = sum(1 for b in range(Q.n) if T[a][b] == b)
        rimg = len(set(T[x][a] for x in range(Q.n)))
        out.append((size_of[a], permgroup.perm_order(T[a]), fixed, rimg))
    return out


def quandle_signature(Q: Quandle) -> tuple:
    return (Q.n, tuple(sorted(element_invariants(Q))))


def brute_force_iso(Q1: Quandle, Q2: Quandle) -> Optional[list[int]]:
    """An isomorphism Q1 -> Q2 as a list ``f`` with f[x] the image of x, or None."""
    n = Q1.n
    if Q2.n != n:
        return None
    inv1, inv2 = element_invariants(Q1), element_invariants(Q2)
    if sorted(inv1) != sorted(inv2):
        return None
    T1, T2 = Q1.table, Q2.table
    candidates = [[y for y in range(n) if inv2[y] == inv1[x]] for x in range(n)]

    def propagate(f, used, x, y):
        f = dict(f)
        used = set(used)
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if a in f:
                if f[a] != b:
                    return None
                continue
            if b in used or inv1[a] != inv2[b]:
                return None
            f[a] = b
            used.add(b)
            for c in list(f):
                fc = f[c]
                stack.append((T1[a][c], T2[b][fc]))
                stack.append((T1[c][a], T2[fc][b]))
        return f, used

    order = sorted(range(n), key=lambda x: len(candidates[x]))

    def search(f, used):
        if len(f) == n:
            return f
        x = next(v for v in order if v not in f)
        for y in candidates[x]:
            if y in used:
                continue
            res = propagate(f, used, x, y)
            if res is not None:
                found = search(*res)
                if found is not None:
                    return found
        return None

    found = search({}, set())
    if found is None:
        return None
    return [found[x] for x in range(n)]


def is_isomorphism(Q1: Quandle, Q2: Quandle, f: Sequence[int]) -> bool:
    n = Q1.n
    if sorted(f) != list(range(n)) or Q2.n != n:
        return False
    return all(f[Q1.table[a][b]] == Q2.table[f[a]][f[b]] for a in range(n) for b in range(n))


def _all_quandle_tables(n: int):
    """Every quandle table of size n, row by row with left-distributivity pruning."""
    rows: list = [None] * n
    rest = {a: [p for p in itertools.permutations(range(n)) if p[a] == a] for a in range(n)}

    def ok(upto: int) -> bool:
        # check a(bc) = (ab)(ac) wherever rows a, b and ab are all known
        for a in range(upto + 1):
            Ra = rows[a]
            for b in range(upto + 1):
                Rb = rows[b]
                ab = Ra[b]
                if ab > upto:
                    continue
                Rab = rows[ab]
                if a != upto and b != upto and ab != upto:
                    continue
                for c in range(n):
                    if Ra[Rb[c]] != Rab[Ra[c]]:
                        return False
        return True

    def rec(a: int):
        if a == n:
            yield tuple(rows)
            return
        for p in rest[a]:
            rows[a] = p
            if ok(a):
                yield from rec(a + 1)
        rows[a] = None

    yield from rec(0)


def brute_force_enumerate(n: int, predicate: Callable[[Quandle], bool] = lambda Q: True,
                          cap: int = BRUTE_FORCE_ENUMERATION_CAP) -> list[Quandle]:
    """All quandles of size n satisfying ``predicate``, one per isomorphism class."""
    if n > cap:
        raise ValueError(f"brute-force enumeration is capped at n={cap}")
    buckets: dict[tuple, list[Quandle]] = defaultdict(list)
    reps = []
    for table in _all_quandle_tables(n):
        Q = Quandle(table)
        if not predicate(Q):
            continue
        sig = quandle_signature(Q)
        if any(brute_force_iso(Q, R) is not None for R in buckets[sig]):
            continue
        buckets[sig].append(Q)
        reps.append(Q)
    return reps
