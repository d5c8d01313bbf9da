"""Permutations on loop elements and finitely generated permutation groups.

Composition is postfix throughout: ``apply(compose(p, q), x)`` equals
``apply(q, apply(p, x))``, i.e. p acts first.  This makes products of
translations read in the same order as they are written.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .table import LoopTable, is_power_associative

Perm = tuple[int, ...]

DEFAULT_CLOSURE_CAP = 1_000_000


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def apply(p: Perm, x: int) -> int:
    return p[x]


def compose(p: Perm, q: Perm) -> Perm:
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return tuple(q[v] for v in p)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[tuple[str, Perm], ...]
    elements: frozenset[Perm]
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements

    def __repr__(self) -> str:
        flag = ", truncated" if self.truncated else ""
        return f"PermGroup(degree={self.degree}, size={len(self.elements)}{flag})"


def group_closure(
    generators, cap: int = DEFAULT_CLOSURE_CAP, degree: int | None = None
) -> PermGroup:
    """Breadth-first closure of labeled generators under composition.

    Closure under inversion is automatic for finite permutation sets.  If the
    element count would exceed `cap` the search stops with ``truncated=True``
    (the returned set is then not necessarily closed).
    """
    gens = tuple(generators)
    if not gens:
        if degree is None:
            raise ValueError("degree is required when there are no generators")
        return PermGroup(degree, (), frozenset({identity_perm(degree)}))
    deg = len(gens[0][1])
    if degree is not None and degree != deg:
        raise ValueError(f"degree mismatch: {degree} vs {deg}")
    if any(len(p) != deg for _, p in gens):
        raise ValueError("generators have mixed degrees")

    elements = {identity_perm(deg)}
    frontier = list(elements)
    truncated = False
    while frontier and not truncated:
        new = []
        for p in frontier:
            for _, g in gens:
                q = tuple(g[v] for v in p)
                if q not in elements:
                    elements.add(q)
                    new.append(q)
                    if len(elements) > cap:
                        truncated = True
                        break
            if truncated:
                break
        frontier = new
    return PermGroup(deg, gens, frozenset(elements), truncated)


def inner_generators(L: LoopTable) -> list[tuple[str, Perm]]:
    """The standard inner mapping generators, each labeled with its arguments.

    For every pair x, y this yields the right and left inner mappings
    R(x,y) = Rx Ry R(x*y)^-1 and L(x,y) = Lx Ly L(y*x)^-1, and for every x
    the middle mapping T(x) = Rx Lx^-1.  All of them fix the identity.
    Labels use 1-based element names.
    """
    n = L.order
    rights = [L.right_translation(a) for a in range(n)]
    lefts = [L.left_translation(a) for a in range(n)]
    rights_inv = [invert(p) for p in rights]
    lefts_inv = [invert(p) for p in lefts]
    out = []
    for x in range(n):
        for y in range(n):
            p = compose(compose(rights[x], rights[y]), rights_inv[L.table[x][y]])
            out.append((f"R({x + 1},{y + 1})", p))
    for x in range(n):
        for y in range(n):
            p = compose(compose(lefts[x], lefts[y]), lefts_inv[L.table[y][x]])
            out.append((f"L({x + 1},{y + 1})", p))
    for x in range(n):
        out.append((f"T({x + 1})", compose(rights[x], lefts_inv[x])))
    return out


def mlt_group(L: LoopTable, cap: int = DEFAULT_CLOSURE_CAP) -> PermGroup:
    gens = [(f"L({a + 1})", L.left_translation(a)) for a in L.elements]
    gens += [(f"R({a + 1})", L.right_translation(a)) for a in L.elements]
    return group_closure(gens, cap=cap)


def inn_group(L: LoopTable, cap: int = DEFAULT_CLOSURE_CAP) -> PermGroup:
    grp = group_closure(inner_generators(L), cap=cap)
    e = L.identity
    assert all(p[e] == e for p in grp.elements), "inner closure moved the identity"
    return grp


def automorphism_violation(L: LoopTable, p: Perm) -> tuple[int, int] | None:
    """Least pair (a, b) with p(a*b) != p(a)*p(b), or None."""
    if len(p) != L.order:
        raise ValueError(f"degree mismatch: {len(p)} vs {L.order}")
    t = L.table
    for a in L.elements:
        pa = p[a]
        for b in L.elements:
            if p[t[a][b]] != t[pa][p[b]]:
                return (a, b)
    return None


def is_automorphism(L: LoopTable, p: Perm) -> bool:
    return automorphism_violation(L, p) is None


@lru_cache(maxsize=None)
def automorphic_violation(L: LoopTable) -> tuple[str, tuple[int, int]] | None:
    """First inner generator that is not an automorphism, with its witness pair.

    Checking the generators suffices: automorphisms form a group, so they
    contain the inner mapping group exactly when they contain its generators.
    """
    for label, p in inner_generators(L):
        w = automorphism_violation(L, p)
        if w is not None:
            return (label, w)
    return None


def is_automorphic(L: LoopTable) -> bool:
    return automorphic_violation(L) is None


def isomorphisms(L1: LoopTable, L2: LoopTable) -> Iterator[Perm]:
    """Yield every isomorphism L1 -> L2 as an image tuple, lexicographically.

    Backtracking over images with the identity pinned, forced propagation of
    partial products, and (for power-associative pairs) pruning by element
    order.
    """
    if L1.order != L2.order:
        return
    n = L1.order
    t1, t2 = L1.table, L2.table
    sigma = [-1] * n
    taken = [False] * n

    if is_power_associative(L1) and is_power_associative(L2):
        ord1 = [L1.element_order(a) for a in range(n)]
        ord2 = [L2.element_order(a) for a in range(n)]
        candidates = [
            tuple(v for v in range(n) if ord2[v] == ord1[a]) for a in range(n)
        ]
    else:
        candidates = [tuple(range(n))] * n

    def assign(a: int, v: int, trail: list[int]) -> bool:
        # Assign sigma[a] = v, then propagate all products that become
        # determined; record assignments in trail for undo.
        if taken[v]:
            return False
        sigma[a] = v
        taken[v] = True
        trail.append(a)
        queue = [a]
        while queue:
            x = queue.pop()
            sx = sigma[x]
            for y in range(n):
                sy = sigma[y]
                if sy < 0:
                    continue
                for (p, q, sp, sq) in ((x, y, sx, sy), (y, x, sy, sx)):
                    c = t1[p][q]
                    w = t2[sp][sq]
                    sc = sigma[c]
                    if sc < 0:
                        if taken[w]:
                            return False
                        sigma[c] = w
                        taken[w] = True
                        trail.append(c)
                        queue.append(c)
                    elif sc != w:
                        return False
        return True

    def undo(trail: list[int]) -> None:
        for a in trail:
            taken[sigma[a]] = False
            sigma[a] = -1

    def extend() -> Iterator[Perm]:
        free = next((a for a in range(n) if sigma[a] < 0), -1)
        if free < 0:
            yield tuple(sigma)
            return
        for v in candidates[free]:
            if taken[v]:
                continue
            trail: list[int] = []
            if assign(free, v, trail):
                yield from extend()
            undo(trail)

    seed: list[int] = []
    if assign(L1.identity, L2.identity, seed):
        yield from extend()
    undo(seed)


def automorphism_group(L: LoopTable) -> PermGroup:
    """The full automorphism group, found by backtracking search."""
    elems = sorted(isomorphisms(L, L))
    gens: list[tuple[str, Perm]] = []
    span = {identity_perm(L.order)}
    for p in elems:
        if p not in span:
            gens.append((f"a{len(gens) + 1}", p))
            span = set(group_closure(gens, degree=L.order).elements)
    return PermGroup(L.order, tuple(gens), frozenset(elems))
