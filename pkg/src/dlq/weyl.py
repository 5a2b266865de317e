"""Weyl group elements as permutations of root indices.

``WeylElt.perm[r]`` is the index of ``w(roots[r])``. Products compose as maps,
so ``(a * b).perm[r] == a.perm[b.perm[r]]`` and ``from_word([i, j])`` is
``s_i s_j``.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property
from itertools import product as _product
from typing import Iterable, Sequence

from .errors import PreconditionError
from .rootsys import RootSystem, parabolic_roots


class WeylElt:
    __slots__ = ("rs", "perm", "__dict__")

    def __init__(self, rs: RootSystem, perm: tuple[int, ...]):
        self.rs = rs
        self.perm = perm

    def _check(self, other: "WeylElt") -> None:
        if self.rs is not other.rs and self.rs != other.rs:
            raise PreconditionError("mixed parents")

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        self._check(other)
        p = self.perm
        return WeylElt(self.rs, tuple(p[k] for k in other.perm))

    def __invert__(self) -> "WeylElt":
        out = [0] * len(self.perm)
        for r, k in enumerate(self.perm):
            out[k] = r
        return WeylElt(self.rs, tuple(out))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElt):
            return NotImplemented
        return self.perm == other.perm and (self.rs is other.rs or self.rs == other.rs)

    def __hash__(self) -> int:
        return hash(self.perm)

    def __call__(self, r: int) -> int:
        return self.perm[r]

    @cached_property
    def length(self) -> int:
        pos = self.rs.positive
        return sum(1 for r in pos if self.perm[r] not in pos)

    @cached_property
    def word(self) -> tuple[int, ...]:
        return tuple(reduced_word(self))

    def left_descents(self) -> list[int]:
        """Simple indices ``i`` with ``s_i w < w``, ascending."""
        inv = ~self
        pos = self.rs.positive
        return [i for i, a in enumerate(self.rs.simple, 1) if inv.perm[a] not in pos]

    def right_descents(self) -> list[int]:
        pos = self.rs.positive
        return [i for i, a in enumerate(self.rs.simple, 1) if self.perm[a] not in pos]

    def __repr__(self) -> str:
        w = "".join(f"s{i}" for i in self.word) or "e"
        return f"WeylElt({w})"


def identity(rs: RootSystem) -> WeylElt:
    return WeylElt(rs, tuple(range(len(rs.roots))))


def simple_reflection(rs: RootSystem, i: int) -> WeylElt:
    if not 1 <= i <= rs.rank:
        raise PreconditionError("invalid simple index")
    return WeylElt(rs, rs.reflections[i - 1])


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElt:
    w = identity(rs)
    for i in word:
        w = w * simple_reflection(rs, i)
    return w


def mul(a: WeylElt, b: WeylElt) -> WeylElt:
    return a * b


def inv(a: WeylElt) -> WeylElt:
    return ~a


def act(a: WeylElt, r: int) -> int:
    return a.perm[r]


def length(a: WeylElt) -> int:
    return a.length


def reduced_word(a: WeylElt) -> list[int]:
    """Reduced word obtained by repeatedly stripping the smallest left descent."""
    word = []
    while True:
        d = a.left_descents()
        if not d:
            return word
        word.append(d[0])
        a = simple_reflection(a.rs, d[0]) * a


def all_reduced_words(a: WeylElt) -> list[tuple[int, ...]]:
    """Every reduced expression of ``a``, in lexicographic order."""
    memo: dict[tuple, list[tuple[int, ...]]] = {}

    def go(w: WeylElt) -> list[tuple[int, ...]]:
        if w.perm in memo:
            return memo[w.perm]
        d = w.left_descents()
        if not d:
            out = [()]
        else:
            out = [(i,) + rest for i in d for rest in go(simple_reflection(w.rs, i) * w)]
        memo[w.perm] = out
        return out

    return go(a)


def in_parabolic(w: WeylElt, J: Iterable[int]) -> bool:
    """True iff ``w`` lies in ``W_J``.

    Equivalent to every letter of a reduced word lying in ``J``; tested through
    the inversion set, which lies in ``Phi_J`` exactly for elements of ``W_J``.
    """
    phi_j = parabolic_roots(w.rs, J)
    pos = w.rs.positive
    return all(r in phi_j for r in pos if w.perm[r] not in pos)


def bruhat_leq(u: WeylElt, w: WeylElt) -> bool:
    """``u <= w`` in Bruhat order.

    Walks the canonical reduced word ``s w'`` of ``w`` left to right. When
    ``s u < u`` the first letter must be used (``u <= w`` iff ``s u <= w'``),
    otherwise it can be skipped (``u <= w`` iff ``u <= w'``), so the subword
    search never backtracks.
    """
    u._check(w)
    cache = w.rs.cache.setdefault("bruhat", {})
    key = (u.perm, w.perm)
    if key in cache:
        return cache[key]
    if u.length > w.length:
        res = False
    elif w.length == 0:
        res = u.length == 0
    else:
        s = simple_reflection(w.rs, w.left_descents()[0])
        sw = s * w
        su = s * u
        res = bruhat_leq(su, sw) if su.length < u.length else bruhat_leq(u, sw)
    cache[key] = res
    return res


def bruhat_leq_subword(u: WeylElt, word: Sequence[int]) -> bool:
    """Brute-force subword test against an explicit reduced word."""
    rs = u.rs
    targets = {u.perm}
    for mask in _product((0, 1), repeat=len(word)):
        p = from_word(rs, [i for i, m in zip(word, mask) if m])
        if p.perm in targets:
            return True
    return False


def elements(rs: RootSystem, I: Iterable[int] | None = None) -> list[WeylElt]:
    """All elements of ``W_I`` (``W`` when ``I`` is None), sorted by (length, word)."""
    gens = sorted(rs.simple_indices if I is None else frozenset(I))
    key = ("elements", tuple(gens))
    if key in rs.cache:
        return rs.cache[key]
    e = identity(rs)
    seen = {e.perm: e}
    queue = deque([e])
    while queue:
        w = queue.popleft()
        for i in gens:
            ws = w * simple_reflection(rs, i)
            if ws.perm not in seen:
                seen[ws.perm] = ws
                queue.append(ws)
    out = sorted(seen.values(), key=lambda w: (w.length, w.word))
    rs.cache[key] = out
    return out


def longest_element(rs: RootSystem, I: Iterable[int] | None = None) -> WeylElt:
    """``w_I``: the unique element of ``W_I`` sending ``Phi_I^+`` to ``Phi_I^-``."""
    I = rs.simple_indices if I is None else frozenset(I)
    w = identity(rs)
    # grow by ascents inside W_I until none is left
    while True:
        asc = [i for i in sorted(I) if i not in w.right_descents()]
        if not asc:
            return w
        w = w * simple_reflection(rs, asc[0])


def apply_F(a: WeylElt) -> WeylElt:
    """Image under the diagram twist: ``phi o a o phi^-1`` on roots."""
    t = a.rs.twist_perm
    tinv = [0] * len(t)
    for r, k in enumerate(t):
        tinv[k] = r
    return WeylElt(a.rs, tuple(t[a.perm[tinv[r]]] for r in range(len(t))))


def apply_F_subset(rs: RootSystem, I: Iterable[int]) -> frozenset:
    return frozenset(rs.datum.twist[i - 1] for i in I)


def is_I_reduced(w: WeylElt, I: Iterable[int], side: str = "left") -> bool:
    """Left: ``l(s_i w) > l(w)`` for ``i`` in ``I``; right: ``l(w s_i) > l(w)``."""
    if side == "left":
        d = w.left_descents()
    elif side == "right":
        d = w.right_descents()
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return not (frozenset(I) & frozenset(d))


def normalizes(w: WeylElt, I: Iterable[int], withF: bool = False) -> bool:
    """True iff ``w`` (after ``phi`` when ``withF``) maps the simple roots of ``I``
    onto themselves, i.e. ``^{wF} I = I``."""
    rs = w.rs
    I = frozenset(I)
    src = apply_F_subset(rs, I) if withF else I
    image = {w.perm[rs.simple[i - 1]] for i in src}
    return image == {rs.simple[i - 1] for i in I}


def fixes_pointwise(s: int, rs: RootSystem, I: Iterable[int]) -> bool:
    """True iff the simple reflection ``s`` fixes every root of ``Phi_I``."""
    refl = rs.reflections[s - 1]
    return all(refl[r] == r for r in parabolic_roots(rs, I))
