"""Distinguished subexpressions, Deodhar cell data, and the piece emptiness test.

A subexpression of a reduced word ``s_1 ... s_r`` is a 0/1 mask; ``mask[i] = 1``
keeps ``s_i`` and ``mask[i] = 0`` replaces it by 1. It is *x-distinguished*
when every position where ``x * prefix * s_i > x * prefix`` is kept. Each
distinguished mask with product ``w'`` is a nonempty cell of
``BwB ∩ B^x w' B`` isomorphic to ``A^n x G_m^m``, where ``n`` counts those
forced ascents and ``m`` counts the zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .cosets import is_double_reduced
from .errors import PreconditionError
from .poly import Poly
from .weyl import (
    WeylElt,
    apply_F,
    bruhat_leq,
    elements,
    identity,
    in_parabolic,
    is_I_reduced,
    normalizes,
    reduced_word,
    simple_reflection,
)

WordChooser = Callable[[WeylElt], Sequence[int]]


@dataclass(frozen=True)
class Subexpression:
    word: tuple[int, ...]
    mask: tuple[int, ...]
    product: WeylElt
    n_gamma: int
    m_gamma: int
    distinguished_for: WeylElt

    def mass(self) -> Poly:
        q = Poly.q()
        return q**self.n_gamma * (q - 1) ** self.m_gamma

    def summary(self) -> dict:
        return {
            "mask": list(self.mask),
            "n_gamma": self.n_gamma,
            "m_gamma": self.m_gamma,
            "product_word": list(self.product.word),
        }


def _is_ascent(xp: WeylElt, i: int) -> bool:
    # x p s_i > x p  iff  (x p)(alpha_i) > 0
    rs = xp.rs
    return xp.perm[rs.simple[i - 1]] in rs.positive


def is_distinguished(word: Sequence[int], mask: Sequence[int], x: WeylElt) -> bool:
    if len(word) != len(mask):
        raise ValueError("word and mask lengths differ")
    rs = x.rs
    p = identity(rs)
    for i, keep in zip(word, mask):
        if not keep and _is_ascent(x * p, i):
            return False
        if keep:
            p = p * simple_reflection(rs, i)
    return True


def distinguished_subexpressions(word: Sequence[int], x: WeylElt) -> Iterator[Subexpression]:
    """All x-distinguished masks of ``word``, depth first with 1 before 0.

    Forced positions admit only 1, so every branch that survives is
    distinguished and nothing needs to be filtered afterwards.
    """
    rs = x.rs
    word = tuple(word)
    r = len(word)
    gens = [simple_reflection(rs, i) for i in word]

    def go(pos: int, p: WeylElt, mask: tuple[int, ...], n: int, m: int):
        if pos == r:
            yield Subexpression(word, mask, p, n, m, x)
            return
        s = gens[pos]
        if _is_ascent(x * p, word[pos]):
            yield from go(pos + 1, p * s, mask + (1,), n + 1, m)
        else:
            yield from go(pos + 1, p * s, mask + (1,), n, m)
            yield from go(pos + 1, p, mask + (0,), n, m + 1)

    yield from go(0, identity(rs), (), 0, 0)


def enumerate_cells(w: WeylElt, x: WeylElt, w_prime: WeylElt,
                    word: Sequence[int] | None = None) -> list[Subexpression]:
    """Nonempty Deodhar cells of ``BwB ∩ B^x w' B`` for the given reduced word of ``w``."""
    word = reduced_word(w) if word is None else list(word)
    return [g for g in distinguished_subexpressions(word, x) if g.product == w_prime]


def deodhar_mass(w: WeylElt, x: WeylElt, word: Sequence[int] | None = None) -> Poly:
    """Sum of ``q^n (q-1)^m`` over every x-distinguished subexpression of ``w``."""
    word = reduced_word(w) if word is None else list(word)
    total = Poly()
    for g in distinguished_subexpressions(word, x):
        total = total + g.mass()
    return total


def r_polynomial(u: WeylElt, w: WeylElt) -> Poly:
    """Kazhdan-Lusztig R-polynomial by the left-descent recursion."""
    u._check(w)
    cache = w.rs.cache.setdefault("rpoly", {})
    key = (u.perm, w.perm)
    if key in cache:
        return cache[key]
    if u == w:
        res = Poly((1,))
    elif not bruhat_leq(u, w):
        res = Poly()
    else:
        s = simple_reflection(w.rs, w.left_descents()[0])
        su, sw = s * u, s * w
        if su.length < u.length:
            res = r_polynomial(su, sw)
        else:
            q = Poly.q()
            res = q * r_polynomial(su, sw) + (q - 1) * r_polynomial(u, sw)
    cache[key] = res
    return res


# --- pieces X_x --------------------------------------------------------------


def check_pair(I: Iterable[int], w: WeylElt) -> None:
    """Raise unless ``w`` is I-reduced and ``^{wF} I = I``."""
    if not is_I_reduced(w, I, "left"):
        raise PreconditionError("w not I-reduced")
    if not normalizes(w, I, withF=True):
        raise PreconditionError("wF does not normalise I")


def piece_witnesses(I: Iterable[int], w: WeylElt, J: Iterable[int], x: WeylElt,
                    word_for: WordChooser | None = None) -> Iterator[tuple[WeylElt, Subexpression]]:
    """Pairs ``(y, gamma)`` with ``y`` in ``W_I`` and ``gamma`` an x-distinguished
    subexpression of ``y w`` whose product ``p`` has ``x p F(x)^-1`` in ``W_J``."""
    I, J = frozenset(I), frozenset(J)
    check_pair(I, w)
    if not is_double_reduced(x, J, I):
        raise PreconditionError("x not J-reduced-I")
    choose = word_for or reduced_word
    fx_inv = ~apply_F(x)
    for y in elements(w.rs, I):
        yw = y * w
        for g in distinguished_subexpressions(choose(yw), x):
            if in_parabolic(x * g.product * fx_inv, J):
                yield y, g


def piece_nonempty(I: Iterable[int], w: WeylElt, J: Iterable[int], x: WeylElt,
                   word_for: WordChooser | None = None) -> bool:
    return next(piece_witnesses(I, w, J, x, word_for), None) is not None
