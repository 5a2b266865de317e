"""Minimal double coset representatives ``W_J \\ W / W_I`` and the subset ``K_x``."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .errors import PreconditionError
from .rootsys import RootSystem, parabolic_roots
from .weyl import (
    WeylElt,
    elements,
    identity,
    is_I_reduced,
    simple_reflection,
)


def is_double_reduced(x: WeylElt, J: Iterable[int], I: Iterable[int]) -> bool:
    """``x`` is J-reduced-I: ``x(alpha_i) > 0`` for i in I and ``x^-1(alpha_j) > 0`` for j in J."""
    return is_I_reduced(x, J, "left") and is_I_reduced(x, I, "right")


def _sort_key(x: WeylElt):
    return (x.length, x.word)


def left_reduced_elements(rs: RootSystem, J: Iterable[int]) -> list[WeylElt]:
    """Minimal representatives of ``W_J \\ W``.

    The set is closed under deleting the last letter of a reduced word, so a
    BFS by right multiplication that keeps only left-J-reduced elements
    reaches all of it.
    """
    J = frozenset(J)
    e = identity(rs)
    seen = {e.perm: e}
    queue = deque([e])
    while queue:
        w = queue.popleft()
        for i in range(1, rs.rank + 1):
            ws = w * simple_reflection(rs, i)
            if ws.perm in seen or ws.length < w.length:
                continue
            if is_I_reduced(ws, J, "left"):
                seen[ws.perm] = ws
                queue.append(ws)
    return list(seen.values())


def double_coset_min_reps(rs: RootSystem, J: Iterable[int], I: Iterable[int]) -> list[WeylElt]:
    """All J-reduced-I elements, sorted by (length, reduced word)."""
    J, I = frozenset(J), frozenset(I)
    key = ("dcreps", J, I)
    if key not in rs.cache:
        reps = [x for x in left_reduced_elements(rs, J) if is_I_reduced(x, I, "right")]
        rs.cache[key] = sorted(reps, key=_sort_key)
    return rs.cache[key]


def double_coset_min_reps_bruteforce(rs: RootSystem, J: Iterable[int], I: Iterable[int]) -> list[WeylElt]:
    """Cross-check: partition all of ``W`` into double cosets and keep the shortest element of each."""
    WJ, WI = elements(rs, J), elements(rs, I)
    unseen = {w.perm: w for w in elements(rs)}
    reps = []
    while unseen:
        w = next(iter(unseen.values()))
        orbit = {(a * w * b).perm: a * w * b for a in WJ for b in WI}
        for p in orbit:
            unseen.pop(p, None)
        reps.append(min(orbit.values(), key=_sort_key))
    return sorted(reps, key=_sort_key)


def factor(w: WeylElt, J: Iterable[int], I: Iterable[int]) -> tuple[WeylElt, WeylElt, WeylElt]:
    """Write ``w = a * x * b`` with ``x`` minimal in ``W_J w W_I``, ``a`` in ``W_J``, ``b`` in ``W_I``.

    ``a`` is taken right-``K_x``-reduced, which makes the triple unique; the
    lengths then add up: ``l(w) = l(a) + l(x) + l(b)``.
    """
    rs = w.rs
    J, I = frozenset(J), frozenset(I)
    a, x, b = identity(rs), w, identity(rs)
    while True:
        dl = [i for i in x.left_descents() if i in J]
        dr = [i for i in x.right_descents() if i in I]
        if dl:
            s = simple_reflection(rs, dl[0])
            a, x = a * s, s * x
        elif dr:
            s = simple_reflection(rs, dr[0])
            x, b = x * s, s * b
        else:
            break
    K = K_of(x, J, I)
    xinv = ~x
    while True:
        d = [k for k in a.right_descents() if k in K]
        if not d:
            return a, x, b
        s = simple_reflection(rs, d[0])
        a, b = a * s, xinv * s * x * b


def K_of(x: WeylElt, J: Iterable[int], I: Iterable[int]) -> frozenset:
    """``K_x = J ∩ x(Phi_I)``, as the set of ``j`` in ``J`` with ``x^-1(alpha_j)`` in ``Phi_I``."""
    J, I = frozenset(J), frozenset(I)
    if not is_double_reduced(x, J, I):
        raise PreconditionError("x not J-reduced-I")
    rs = x.rs
    phi_i = parabolic_roots(rs, I)
    xinv = ~x
    return frozenset(j for j in J if xinv.perm[rs.simple[j - 1]] in phi_i)


# --- unipotent intersections ----------------------------------------------
#
# A constraint names a set of roots; the dimension of an intersection of
# T-stable unipotent subgroups is the size of the intersection of their roots.
#   ("neg",)            Phi^-                       (U^-)
#   ("w_pos", w)        w(Phi^+)                    (^w U)
#   ("x_inv_UJ", x, J)  x^-1(Phi^+ minus Phi_J)     (U_J^x)


def constraint_roots(rs: RootSystem, cond: tuple) -> frozenset:
    kind = cond[0]
    if kind == "neg":
        return frozenset(range(len(rs.roots))) - rs.positive
    if kind == "pos":
        return rs.positive
    if kind == "w_pos":
        w = cond[1]
        return frozenset(w.perm[r] for r in rs.positive)
    if kind == "x_inv_UJ":
        x, J = cond[1], cond[2]
        xinv = ~x
        return frozenset(xinv.perm[r] for r in rs.positive - parabolic_roots(rs, J))
    raise ValueError(f"unknown root-region constraint {kind!r}")


def unipotent_intersection_dim(rs: RootSystem, cond: Iterable[tuple]) -> int:
    sets = [constraint_roots(rs, c) for c in cond]
    if not sets:
        raise ValueError("at least one constraint is required")
    return len(frozenset.intersection(*sets))


def case_e(x: WeylElt, z: WeylElt, J: Iterable[int]) -> int:
    """``dim(U_J^x ∩ ^z U ∩ U^-)``."""
    return unipotent_intersection_dim(x.rs, [("x_inv_UJ", x, frozenset(J)), ("w_pos", z), ("neg",)])
