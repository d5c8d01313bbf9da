"""Finite loops represented as validated Cayley tables.

Element ids are 0-based indices into the table; external text formats use
1-based labels (handled in `loopcheck.catalog`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

MAX_ORDER = 64


class LoopError(Exception):
    """Base class for all errors raised by this package."""


class NotLatinSquare(LoopError):
    def __init__(self, axis: str, index: int):
        self.axis = axis
        self.index = index
        super().__init__(f"{axis} {index} is not a permutation of the elements")


class NoIdentity(LoopError):
    """No element acts as a two-sided identity."""


class NoTwoSidedInverse(LoopError):
    def __init__(self, element: int, left: int, right: int):
        self.element = element
        self.left = left
        self.right = right
        super().__init__(
            f"element {element} has left inverse {left} but right inverse {right}"
        )


class NoFiniteOrder(LoopError):
    """Left-nested powers of an element cycle without reaching the identity."""


class NotUniquely2Divisible(LoopError):
    """The squaring map is not a bijection."""


class OrderTooLarge(LoopError):
    """The requested operation is capped at a smaller order."""


class NotAutomorphicWarning(UserWarning):
    """A check whose soundness assumes an automorphic loop ran without that
    hypothesis being verified."""


@dataclass(frozen=True)
class LoopTable:
    """A finite loop: an n-by-n Cayley table with a two-sided identity.

    ``table[a][b]`` holds a*b.  Instances are immutable and hashable; build
    them through `make_loop` or the constructors below, which validate the
    Latin-square and identity axioms.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    name: str | None = field(default=None, compare=False)

    def __repr__(self) -> str:
        return f"LoopTable(order={self.order}, name={self.name!r})"

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def ldiv(self, a: int, b: int) -> int:
        """The unique x with a*x = b."""
        return _ldiv_table(self)[a][b]

    def rdiv(self, a: int, b: int) -> int:
        """The unique y with y*a = b."""
        return _rdiv_table(self)[a][b]

    def left_translation(self, a: int) -> tuple[int, ...]:
        """The permutation x -> a*x (row a of the table)."""
        return self.table[a]

    def right_translation(self, a: int) -> tuple[int, ...]:
        """The permutation x -> x*a (column a of the table)."""
        return tuple(row[a] for row in self.table)

    def has_two_sided_inverse(self, a: int) -> bool:
        return _inverse_table(self)[a] >= 0

    def inverse(self, a: int) -> int:
        inv = _inverse_table(self)[a]
        if inv < 0:
            raise NoTwoSidedInverse(
                a, self.rdiv(a, self.identity), self.ldiv(a, self.identity)
            )
        return inv

    def power(self, a: int, k: int) -> int:
        """Left-nested power: a^0 = 1 and a^k = a^(k-1) * a.

        Negative exponents use a^(-k) = (a^-1)^k and require a two-sided
        inverse.  In power-associative loops this agrees with every other
        bracketing; elsewhere it is the canonical convention of this package.
        """
        if k < 0:
            a = self.inverse(a)
            k = -k
        acc = self.identity
        row_of = self.table
        for _ in range(k):
            acc = row_of[acc][a]
        return acc

    def element_order(self, a: int) -> int:
        """Least k >= 1 with a^k = 1 under left-nested powers."""
        return _order_table(self)[a]

    def sqrt(self, a: int) -> int:
        """The unique square root of a; requires a uniquely 2-divisible loop."""
        roots = _sqrt_table(self)
        if roots is None:
            raise NotUniquely2Divisible(f"squaring is not a bijection on {self!r}")
        return roots[a]


def make_loop(matrix, name: str | None = None) -> LoopTable:
    """Validate a square 0-based integer matrix as a loop Cayley table.

    Raises `NotLatinSquare` when a row or column repeats an entry and
    `NoIdentity` when no element is a two-sided identity.  The identity is
    auto-detected; it need not be element 0.
    """
    rows = tuple(tuple(int(v) for v in row) for row in matrix)
    n = len(rows)
    if n < 1:
        raise LoopError("a loop needs at least one element")
    if n > MAX_ORDER:
        raise OrderTooLarge(f"order {n} exceeds the cap of {MAX_ORDER}")
    full = frozenset(range(n))
    for i, row in enumerate(rows):
        if len(row) != n:
            raise LoopError(f"row {i} has {len(row)} entries, expected {n}")
        if not all(0 <= v < n for v in row):
            raise LoopError(f"row {i} contains entries outside 0..{n - 1}")
        if frozenset(row) != full:
            raise NotLatinSquare("row", i)
    for j in range(n):
        if frozenset(row[j] for row in rows) != full:
            raise NotLatinSquare("column", j)
    identity = -1
    id_row = tuple(range(n))
    for e in range(n):
        if rows[e] == id_row and all(rows[a][e] == a for a in range(n)):
            identity = e
            break
    if identity < 0:
        raise NoIdentity("no element acts as a two-sided identity")
    return LoopTable(order=n, table=rows, identity=identity, name=name)


@lru_cache(maxsize=None)
def _ldiv_table(L: LoopTable) -> tuple[tuple[int, ...], ...]:
    n = L.order
    out = [[0] * n for _ in range(n)]
    for a, row in enumerate(L.table):
        for x, b in enumerate(row):
            out[a][b] = x
    return tuple(tuple(r) for r in out)


@lru_cache(maxsize=None)
def _rdiv_table(L: LoopTable) -> tuple[tuple[int, ...], ...]:
    n = L.order
    out = [[0] * n for _ in range(n)]
    for y, row in enumerate(L.table):
        for a, b in enumerate(row):
            out[a][b] = y
    return tuple(tuple(r) for r in out)


@lru_cache(maxsize=None)
def _inverse_table(L: LoopTable) -> tuple[int, ...]:
    # -1 marks elements whose left and right inverses differ.
    e = L.identity
    out = []
    for a in L.elements:
        right = L.ldiv(a, e)
        left = L.rdiv(a, e)
        out.append(right if left == right else -1)
    return tuple(out)


@lru_cache(maxsize=None)
def _order_table(L: LoopTable) -> tuple[int, ...]:
    e = L.identity
    n = L.order
    out = []
    for a in L.elements:
        x, k = a, 1
        while x != e:
            x = L.table[x][a]
            k += 1
            if k > n:
                # Unreachable for a valid loop (right translations are
                # bijections, so the left-power orbit always returns to 1).
                raise NoFiniteOrder(f"left powers of {a} never reach the identity")
        out.append(k)
    return tuple(out)


@lru_cache(maxsize=None)
def _sqrt_table(L: LoopTable) -> tuple[int, ...] | None:
    squares = squaring_map(L)
    if len(set(squares)) != L.order:
        return None
    out = [0] * L.order
    for a, sq in enumerate(squares):
        out[sq] = a
    return tuple(out)


def squaring_map(L: LoopTable) -> tuple[int, ...]:
    return tuple(L.table[a][a] for a in L.elements)


def is_uniquely_2_divisible(L: LoopTable) -> bool:
    return _sqrt_table(L) is not None


# ---------------------------------------------------------------------------
# predicates; each *_violation returns the lexicographically least failing
# tuple, or None when the property holds

@lru_cache(maxsize=None)
def commutativity_violation(L: LoopTable) -> tuple[int, int] | None:
    t = L.table
    for a in L.elements:
        for b in L.elements:
            if t[a][b] != t[b][a]:
                return (a, b)
    return None


@lru_cache(maxsize=None)
def associativity_violation(L: LoopTable) -> tuple[int, int, int] | None:
    t = L.table
    for a in L.elements:
        for b in L.elements:
            ab = t[a][b]
            for c in L.elements:
                if t[ab][c] != t[a][t[b][c]]:
                    return (a, b, c)
    return None


@lru_cache(maxsize=None)
def flexibility_violation(L: LoopTable) -> tuple[int, int] | None:
    t = L.table
    for a in L.elements:
        for b in L.elements:
            if t[a][t[b][a]] != t[t[a][b]][a]:
                return (a, b)
    return None


@lru_cache(maxsize=None)
def aaip_violation(L: LoopTable) -> tuple | None:
    """Violation of (a*b)^-1 = b^-1 * a^-1.

    A 1-tuple (a,) flags the least element without a two-sided inverse; a
    pair (a, b) is a genuine violation of the identity.
    """
    inv = _inverse_table(L)
    for a in L.elements:
        if inv[a] < 0:
            return (a,)
    t = L.table
    for a in L.elements:
        for b in L.elements:
            if inv[t[a][b]] != t[inv[b]][inv[a]]:
                return (a, b)
    return None


@lru_cache(maxsize=None)
def power_associativity_violation(L: LoopTable) -> tuple[int] | None:
    """Least element whose multiplication closure fails to be an abelian group."""
    t = L.table
    for a in L.elements:
        closed = {a}
        frontier = [a]
        while frontier:
            x = frontier.pop()
            for y in tuple(closed):
                for z in (t[x][y], t[y][x]):
                    if z not in closed:
                        closed.add(z)
                        frontier.append(z)
        h = sorted(closed)
        if any(t[x][y] != t[y][x] for x in h for y in h):
            return (a,)
        if any(t[t[x][y]][z] != t[x][t[y][z]] for x in h for y in h for z in h):
            return (a,)
    return None


def is_commutative(L: LoopTable) -> bool:
    return commutativity_violation(L) is None


def is_associative(L: LoopTable) -> bool:
    return associativity_violation(L) is None


def is_flexible(L: LoopTable) -> bool:
    return flexibility_violation(L) is None


def has_aaip(L: LoopTable) -> bool:
    return aaip_violation(L) is None


def is_power_associative(L: LoopTable) -> bool:
    return power_associativity_violation(L) is None


# ---------------------------------------------------------------------------
# constructors

def cyclic_group(n: int, name: str | None = None) -> LoopTable:
    """Addition mod n on 0..n-1."""
    if n < 1:
        raise LoopError("cyclic_group needs n >= 1")
    rows = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return make_loop(rows, name=name if name is not None else f"c{n}")


def direct_product(L1: LoopTable, L2: LoopTable, name: str | None = None) -> LoopTable:
    """Componentwise product; element (i, j) is encoded as i*|L2| + j."""
    n1, n2 = L1.order, L2.order
    t1, t2 = L1.table, L2.table
    rows = tuple(
        tuple(t1[i1][j1] * n2 + t2[i2][j2] for j1 in range(n1) for j2 in range(n2))
        for i1 in range(n1)
        for i2 in range(n2)
    )
    if name is None and L1.name and L2.name:
        name = f"{L1.name}x{L2.name}"
    return make_loop(rows, name=name)


def opposite(L: LoopTable, name: str | None = None) -> LoopTable:
    """The loop with the transposed table: a *' b = b * a."""
    rows = tuple(tuple(L.table[b][a] for b in L.elements) for a in L.elements)
    if name is None and L.name:
        name = f"{L.name}_op"
    return make_loop(rows, name=name)
