"""Finite crystallographic root systems built from Cartan data.

Roots are integer vectors in the basis of simple roots. Simple indices are
1-based everywhere in the public API, so ``t_1, ..., t_n`` transcribe directly.

Cartan convention: ``cartan[i][j] = <alpha_i^vee, alpha_j>``, so that
``s_i(beta) = beta - (sum_j cartan[i][j] * beta_j) alpha_i``.

>>> rs = build_root_system(named_cartan("B2"))
>>> len(rs.roots), len(rs.positive)
(8, 4)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import PreconditionError

MAX_ROOTS = 10000

SimpleSubset = frozenset  # of 1-based simple indices


@dataclass(frozen=True)
class CartanDatum:
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    # twist[i - 1] = phi(i); the diagram automorphism induced by F
    twist: tuple[int, ...] = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.twist:
            object.__setattr__(self, "twist", tuple(range(1, self.rank + 1)))

    @classmethod
    def from_matrix(cls, cartan: Sequence[Sequence[int]], twist: Sequence[int] | None = None,
                    label: str = "") -> "CartanDatum":
        mat = tuple(tuple(int(a) for a in row) for row in cartan)
        return cls(len(mat), mat, tuple(twist) if twist else (), label)

    @property
    def is_split(self) -> bool:
        return self.twist == tuple(range(1, self.rank + 1))


def _validate(datum: CartanDatum) -> None:
    n, a = datum.rank, datum.cartan
    if n < 1 or len(a) != n or any(len(row) != n for row in a):
        raise PreconditionError("invalid Cartan matrix")
    for i in range(n):
        if a[i][i] != 2:
            raise PreconditionError("invalid Cartan matrix")
        for j in range(n):
            if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                raise PreconditionError("invalid Cartan matrix")
    phi = datum.twist
    if sorted(phi) != list(range(1, n + 1)):
        raise PreconditionError("invalid twist")
    for i in range(n):
        for j in range(n):
            if a[phi[i] - 1][phi[j] - 1] != a[i][j]:
                raise PreconditionError("twist does not preserve the Cartan matrix")


@dataclass(frozen=True, eq=False)
class RootSystem:
    datum: CartanDatum
    roots: tuple[tuple[int, ...], ...]
    positive: frozenset
    negation: tuple[int, ...]
    # simple[i - 1] is the root index of alpha_i
    simple: tuple[int, ...]
    # reflections[i - 1][r] is the index of s_i(roots[r])
    reflections: tuple[tuple[int, ...], ...]
    # root-level permutation induced by the diagram twist
    twist_perm: tuple[int, ...]
    index: dict = field(repr=False)
    cache: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def simple_indices(self) -> frozenset:
        return frozenset(range(1, self.rank + 1))

    def is_positive(self, r: int) -> bool:
        return r in self.positive

    def height(self, r: int) -> int:
        return sum(self.roots[r])

    def __eq__(self, other):
        if not isinstance(other, RootSystem):
            return NotImplemented
        return self is other or self.datum == other.datum

    def __hash__(self):
        return hash(self.datum)


def build_root_system(datum: CartanDatum) -> RootSystem:
    """Reflection closure of the simple roots, indexed canonically.

    Roots are sorted by height, then by descending coefficient vector, so
    ``alpha_1`` precedes ``alpha_2`` among the simple roots.
    """
    _validate(datum)
    n, a = datum.rank, datum.cartan

    def refl(i: int, v: tuple[int, ...]) -> tuple[int, ...]:
        c = sum(a[i][j] * v[j] for j in range(n))
        return v[:i] + (v[i] - c,) + v[i + 1:]

    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                u = refl(i, v)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
                    if len(seen) > MAX_ROOTS:
                        raise PreconditionError("not finite type")
        frontier = nxt
    for v in seen:
        # a real root of a finite system has coefficients of one sign
        if any(c > 0 for c in v) and any(c < 0 for c in v):
            raise PreconditionError("not finite type")

    roots = tuple(sorted(seen, key=lambda v: (sum(v), tuple(-c for c in v))))
    index = {v: k for k, v in enumerate(roots)}
    negation = tuple(index[tuple(-c for c in v)] for v in roots)
    positive = frozenset(k for k, v in enumerate(roots) if sum(v) > 0)
    simple = tuple(index[v] for v in simples)
    reflections = tuple(tuple(index[refl(i, v)] for v in roots) for i in range(n))
    phi = datum.twist

    def twisted(v):
        out = [0] * n
        for i, c in enumerate(v):
            out[phi[i] - 1] = c
        return tuple(out)

    twist_perm = tuple(index[twisted(v)] for v in roots)
    return RootSystem(datum, roots, positive, negation, simple, reflections, twist_perm, index)


def reflect(rs: RootSystem, i: int, r: int) -> int:
    """Index of ``s_i(roots[r])``."""
    return rs.reflections[i - 1][r]


def support(rs: RootSystem, r: int) -> frozenset:
    return frozenset(i + 1 for i, c in enumerate(rs.roots[r]) if c)


def parabolic_roots(rs: RootSystem, I: Iterable[int]) -> frozenset:
    """Root indices of ``Phi_I``: roots whose support lies in ``I``."""
    I = frozenset(I)
    key = ("parabolic_roots", I)
    if key not in rs.cache:
        rs.cache[key] = frozenset(r for r in range(len(rs.roots)) if support(rs, r) <= I)
    return rs.cache[key]


# --- named types -----------------------------------------------------------


def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _irreducible(letter: str, n: int) -> list[list[int]]:
    if letter == "A" and n >= 1:
        return _chain(n)
    if letter in "BC" and n >= 1:
        a = _chain(n)
        if n >= 2:
            # node 1 is the special node, t_2..t_n generate a type A_{n-1}
            if letter == "B":
                a[0][1] = -2
            else:
                a[1][0] = -2
        return a
    if letter == "D" and n >= 3:
        a = _chain(n)
        # nodes n-1 and n both hang off node n-2
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if letter == "E" and n in (6, 7, 8):
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        edges = [(1, 3), (3, 4), (2, 4)] + [(k, k + 1) for k in range(4, n)]
        for i, j in edges:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return a
    if letter == "F" and n == 4:
        return [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    if letter == "G" and n == 2:
        return [[2, -1], [-3, 2]]
    raise PreconditionError(f"unknown type {letter}{n}")


def _twist_for(order: int, letter: str, n: int) -> list[int]:
    ident = list(range(1, n + 1))
    if order == 1:
        return ident
    if order == 2 and letter == "A":
        return [n + 1 - i for i in ident]
    if order == 2 and letter == "D":
        return ident[:-2] + [n, n - 1]
    if order == 3 and letter == "D" and n == 4:
        return [3, 2, 4, 1]
    if order == 2 and letter == "E" and n == 6:
        return [6, 2, 5, 4, 3, 1]
    raise PreconditionError(f"no order-{order} twist for {letter}{n}")


_COMPONENT = re.compile(r"^([123]?)([A-G])_?(\d+)$")


def named_cartan(label: str) -> CartanDatum:
    """Cartan datum for labels such as ``"A3"``, ``"B4"``, ``"2A3"``, ``"A1xB2"``.

    A leading ``2`` or ``3`` selects the order-2 or order-3 diagram twist.
    Components of a reducible label are joined with ``x`` and numbered
    consecutively.
    """
    blocks = []
    for part in label.strip().split("x"):
        m = _COMPONENT.match(part.strip())
        if not m:
            raise PreconditionError(f"invalid group label {label!r}")
        order = int(m.group(1) or 1)
        letter, n = m.group(2), int(m.group(3))
        blocks.append((_irreducible(letter, n), _twist_for(order, letter, n)))
    rank = sum(len(b) for b, _ in blocks)
    mat = [[0] * rank for _ in range(rank)]
    twist = []
    off = 0
    for b, t in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                mat[off + i][off + j] = b[i][j]
        twist.extend(off + p for p in t)
        off += k
    return CartanDatum.from_matrix(mat, twist, label=label)
