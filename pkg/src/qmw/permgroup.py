"""Small permutation groups on {0, ..., n-1}, by explicit element closure."""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Sequence

DEFAULT_CAP = 10**6

Permutation = tuple[int, ...]


class GroupTooLarge(RuntimeError):
    pass


def identity(n: int) -> Permutation:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """p o q, i.e. apply q first."""
    return tuple(p[x] for x in q)


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def cycle_string(p: Sequence[int]) -> str:
    parts = ["(" + " ".join(map(str, c)) + ")" for c in cycles(p) if len(c) > 1]
    return "".join(parts) or "()"


def from_cycles(n: int, cyc: Iterable[Sequence[int]]) -> Permutation:
    img = list(range(n))
    for c in cyc:
        for a, b in zip(c, list(c[1:]) + [c[0]]):
            img[a] = b
    return tuple(img)


def perm_order(p: Sequence[int]) -> int:
    return math.lcm(*(len(c) for c in cycles(p))) if len(p) else 1


class PermGroup:
    """Group generated by a list of permutations of equal degree.

    Elements are computed lazily by breadth-first closure, refusing to grow
    past ``cap`` elements.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]], cap: int = DEFAULT_CAP):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(g)
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError(f"{g} is not a permutation of degree {degree}")
            if g != identity(degree) and g not in gens:
                gens.append(g)
        self.generators = gens
        self.cap = cap
        self._elements: list[Permutation] | None = None

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, gens=[{', '.join(cycle_string(g) for g in self.generators)}])"

    @property
    def elements(self) -> list[Permutation]:
        if self._elements is None:
            e = identity(self.degree)
            seen = {e}
            order = [e]
            queue = deque([e])
            while queue:
                x = queue.popleft()
                for g in self.generators:
                    y = compose(g, x)
                    if y not in seen:
                        seen.add(y)
                        order.append(y)
                        if len(order) > self.cap:
                            raise GroupTooLarge(f"group exceeds {self.cap} elements")
                        queue.append(y)
            self._elements = order
        return self._elements

    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in set(self.elements)

    def orbits(self) -> list[list[int]]:
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for x in range(self.degree):
                a, b = find(x), find(g[x])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        blocks: dict[int, list[int]] = {}
        for x in range(self.degree):
            blocks.setdefault(find(x), []).append(x)
        return sorted(blocks.values(), key=lambda b: b[0])

    def orbit(self, e: int) -> list[int]:
        return next(b for b in self.orbits() if e in b)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(compose(a, b) == compose(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def stabilizer(self, e: int) -> "PermGroup":
        return PermGroup(self.degree, [g for g in self.elements if g[e] == e], cap=self.cap)

    def transversal(self, e: int) -> dict[int, Permutation]:
        """For each x in the orbit of e, the first-discovered element mapping e to x."""
        reps = {e: identity(self.degree)}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = g[x]
                if y not in reps:
                    reps[y] = compose(g, reps[x])
                    queue.append(y)
        return reps


def generate(gens: Sequence[Sequence[int]], degree: int | None = None, cap: int = DEFAULT_CAP) -> PermGroup:
    if degree is None:
        if not gens:
            raise ValueError("degree needed for an empty generator list")
        degree = len(gens[0])
    return PermGroup(degree, gens, cap=cap)


def element_count(G: PermGroup) -> int:
    return G.order()
