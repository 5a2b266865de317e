"""Formal bookkeeping for graded cohomology with Frobenius eigenvalues.

A :class:`GradedModule` is a multiset of ``(degree, eig_exp, label)``, where
``eig_exp = k`` records the Frobenius eigenvalue ``q^k``. Shifts act on the
stored degrees directly: ``shift(M, n)`` moves degree ``k`` to ``k + n``.

>>> str(Bipartition((1,), (2,)))
'[1;2]'
>>> sorted(gm_cohomology(2).items())
[((2, 0, triv), 1), ((3, 1, triv), 2), ((4, 2, triv), 1)]
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator

from .errors import PreconditionError


def _check_partition(p: tuple[int, ...]) -> tuple[int, ...]:
    p = tuple(int(a) for a in p)
    if any(a <= 0 for a in p) or any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"not a partition: {p}")
    return p


def _fmt_part(p: tuple[int, ...]) -> str:
    if not p:
        return "-"
    if len(p) == 1:
        return str(p[0])
    return "(" + ",".join(map(str, p)) + ")"


def _parse_part(s: str) -> tuple[int, ...]:
    s = s.strip()
    if s in ("-", "", "−"):
        return ()
    s = s.strip("()")
    if "," in s:
        return tuple(int(a) for a in s.split(","))
    m = re.fullmatch(r"(\d+)\^(\d+)", s)
    if m:
        return (int(m.group(1)),) * int(m.group(2))
    # a bare digit string lists single-digit parts, so "21" is (2, 1)
    if len(s) > 1:
        return tuple(int(c) for c in s)
    return (int(s),)


@dataclass(frozen=True, order=True)
class Bipartition:
    lam: tuple = ()
    mu: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_partition(self.lam))
        object.__setattr__(self, "mu", _check_partition(self.mu))

    @property
    def n(self) -> int:
        return sum(self.lam) + sum(self.mu)

    def __str__(self) -> str:
        return f"[{_fmt_part(self.lam)};{_fmt_part(self.mu)}]"

    def __repr__(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, s: str) -> "Bipartition":
        m = re.fullmatch(r"\s*\[(.*);(.*)\]\s*", s)
        if not m:
            raise ValueError(f"not a bipartition label: {s!r}")
        return cls(_parse_part(m.group(1)), _parse_part(m.group(2)))

    @classmethod
    def trivial(cls, n: int) -> "Bipartition":
        return cls((n,) if n else (), ())

    @classmethod
    def steinberg(cls, n: int) -> "Bipartition":
        return cls((), (1,) * n)


@dataclass(frozen=True)
class CharLabel:
    """A character label: ``bipartition``, ``partition`` or ``opaque``."""

    kind: str
    data: object

    def __post_init__(self):
        if self.kind not in ("bipartition", "partition", "opaque"):
            raise ValueError(f"unknown label kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "partition":
            return _fmt_part(self.data)
        return str(self.data)

    __repr__ = __str__

    def sort_key(self):
        return (self.kind, str(self))

    @classmethod
    def bp(cls, lam=(), mu=()) -> "CharLabel":
        return cls("bipartition", Bipartition(tuple(lam), tuple(mu)))

    @classmethod
    def parse(cls, s: str) -> "CharLabel":
        if s.startswith("["):
            return cls("bipartition", Bipartition.parse(s))
        return cls("opaque", s)


TRIV = CharLabel("opaque", "triv")

Entry = tuple  # (degree, eig_exp, CharLabel)


def _entry_key(e: Entry):
    return (e[0], e[1], e[2].sort_key())


class GradedModule(Counter):
    """Multiset of ``(degree, eig_exp, label)`` entries."""

    @classmethod
    def of(cls, entries: Iterable[Entry]) -> "GradedModule":
        out = cls()
        for d, k, lab in entries:
            if int(k) < 0:
                raise ValueError("eigenvalue exponent must be nonnegative")
            out[(int(d), int(k), lab)] += 1
        return out

    def entries(self) -> list[Entry]:
        """Sorted list with multiplicities expanded."""
        return [e for e in sorted(self, key=_entry_key) for _ in range(self[e])]

    def items(self):
        return [(e, self[e]) for e in sorted(self, key=_entry_key) if self[e] > 0]

    def labels(self) -> set:
        return {e[2] for e, m in super().items() if m > 0}

    def total(self) -> int:
        return sum(m for m in self.values() if m > 0)

    def euler(self) -> int:
        return sum((-1) ** d * m for (d, _, _), m in super().items())

    def is_label_trivial(self) -> bool:
        return all(lab == TRIV for lab in self.labels())

    def __add__(self, other):
        return GradedModule(Counter.__add__(self, other))

    def __sub__(self, other):
        return GradedModule(Counter.__sub__(self, other))

    def __eq__(self, other):
        if not isinstance(other, Counter):
            return NotImplemented
        return dict(+Counter(self)) == dict(+Counter(other))

    __hash__ = None

    def to_rows(self) -> list[dict]:
        return [
            {"degree": d, "q_exponent": k, "character": str(lab)}
            for d, k, lab in self.entries()
        ]

    def __repr__(self) -> str:
        body = ", ".join(
            f"({d}, {k}, {lab})" + (f" x{m}" if m > 1 else "") for (d, k, lab), m in self.items()
        )
        return "GradedModule{" + body + "}"


def shift(M: GradedModule, n: int) -> GradedModule:
    out = GradedModule()
    for (d, k, lab), m in M.items():
        out[(d + n, k, lab)] += m
    return out


def twist(M: GradedModule, e: int) -> GradedModule:
    out = GradedModule()
    for (d, k, lab), m in M.items():
        if k + e < 0:
            raise ValueError("twist would make an eigenvalue exponent negative")
        out[(d, k + e, lab)] += m
    return out


def gm_cohomology(d: int) -> GradedModule:
    """``H_c^*`` of ``G_m^d``: ``(d + k, k, triv)`` with multiplicity ``C(d, k)``."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    out = GradedModule()
    for k in range(d + 1):
        out[(d + k, k, TRIV)] = comb(d, k)
    return out


def point() -> GradedModule:
    return gm_cohomology(0)


def tensor(M1: GradedModule, M2: GradedModule) -> GradedModule:
    """Kunneth product; at most one factor may carry nontrivial labels."""
    l1, l2 = not M1.is_label_trivial(), not M2.is_label_trivial()
    if l1 and l2:
        raise PreconditionError("ambiguous character product")
    out = GradedModule()
    for (d1, k1, a), m1 in M1.items():
        for (d2, k2, b), m2 in M2.items():
            out[(d1 + d2, k1 + k2, b if l2 else a)] += m1 * m2
    return out


# --- Harish-Chandra branching ------------------------------------------------


def _remove_box(p: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    for i, a in enumerate(p):
        if i + 1 == len(p) or p[i + 1] < a:
            q = p[:i] + (a - 1,) + p[i + 1:]
            yield tuple(b for b in q if b)


def branch_restrict_B(bp: Bipartition) -> Counter:
    """Bipartitions of ``n - 1`` obtained by deleting one removable box."""
    if bp.n == 0:
        raise PreconditionError("cannot restrict a bipartition of 0")
    out = Counter()
    for lam in _remove_box(bp.lam):
        out[Bipartition(lam, bp.mu)] += 1
    for mu in _remove_box(bp.mu):
        out[Bipartition(bp.lam, mu)] += 1
    return out


def hc_restrict_module(M: GradedModule) -> GradedModule:
    labels = M.labels()
    if any(lab.kind != "bipartition" for lab in labels):
        raise PreconditionError("mixed label kinds")
    if len({lab.data.n for lab in labels}) > 1:
        raise PreconditionError("labels are bipartitions of different sizes")
    out = GradedModule()
    for (d, k, lab), m in M.items():
        for b, c in branch_restrict_B(lab.data).items():
            out[(d, k, CharLabel("bipartition", b))] += m * c
    return out


# --- the type B_n principal series tables ------------------------------------


def bn_table(n: int, coeff: str = "triv") -> GradedModule:
    """Principal-series part of ``H_c^*(X(I, w_n))`` for ``I = {t_1}``,
    ``w_n = t_n ... t_2 t_1 t_2``, with trivial or Steinberg coefficients."""
    if n < 2:
        raise PreconditionError("n must be at least 2")
    bp = CharLabel.bp
    out = []
    if coeff == "triv":
        for k in range(1, n):
            lam = (k - 1,) if k > 1 else ()
            out.append((n + k, k, bp(lam, (2,) + (1,) * (n - k - 1))))
        out.append((2 * n + 2, n + 1, bp((n,), ())))
    elif coeff == "St":
        out.append((n + 1, 0, bp((), (1,) * n)))
        for k in range(2, n + 1):
            lam = (k - 1, 1) if k > 2 else (1, 1)
            out.append((n + k, k, bp(lam, (1,) * (n - k))))
    else:
        raise PreconditionError("coeff must be 'triv' or 'St'")
    return GradedModule.of(out)


# --- long exact sequence bookkeeping -----------------------------------------


@dataclass
class ConsistencyReport:
    consistent: bool
    # (closed_degree, open_degree, eig_exp, label, count)
    cancellations: list = field(default_factory=list)
    # (degree, eig_exp, label, "missing" | "surplus", count) for failing groups
    leftover: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "cancellations": [
                {"closed_degree": c, "open_degree": o, "q_exponent": k, "character": str(lab), "count": m}
                for c, o, k, lab, m in self.cancellations
            ],
            "leftover": [
                {"degree": d, "q_exponent": k, "character": str(lab), "kind": kind, "count": m}
                for d, k, lab, kind, m in self.leftover
            ],
        }


def _solve_group(t: dict, o: dict, c: dict, both_ways: bool):
    """Pair counts across adjacent degrees for one (eig, label) group.

    ``a[d]`` pairs closed@d with open@(d+1); ``b[d]`` (only when ``both_ways``)
    pairs open@d with closed@(d+1). Depth-first over degrees, smallest
    counts first, so the first solution found is canonical.
    """
    degs = sorted(set(t) | set(o) | set(c))
    lo, hi = degs[0], degs[-1]

    def go(d, a_prev, b_prev, acc):
        if d > hi:
            return acc if a_prev == 0 and b_prev == 0 else None
        od, cd, td = o.get(d, 0), c.get(d, 0), t.get(d, 0)
        for a in range(0, min(cd, o.get(d + 1, 0)) + 1):
            b_max = min(od, c.get(d + 1, 0)) if both_ways else 0
            for b in range(0, b_max + 1):
                if a + b_prev > cd or b + a_prev > od:
                    continue
                if od + cd - (a + b_prev + b + a_prev) != td:
                    continue
                res = go(d + 1, a, b, acc + [(d, a, b)])
                if res is not None:
                    return res
        return None

    return go(lo, 0, 0, [])


def check_les_consistency(target: GradedModule, open_piece: GradedModule, closed_piece: GradedModule,
                          mode: str = "adjacent") -> ConsistencyReport:
    """Can ``target`` be the cohomology of a space with this open/closed decomposition?

    ``target`` must equal ``open ⊎ closed`` minus cancelling pairs with equal
    eigenvalue and label in adjacent degrees. In ``"les"`` mode only the
    direction of the connecting map is allowed (closed in degree ``k`` against
    open in degree ``k + 1``); ``"adjacent"`` also accepts the reverse.
    """
    if mode not in ("les", "adjacent"):
        raise ValueError("mode must be 'les' or 'adjacent'")
    groups: dict = {}
    for tag, M in (("t", target), ("o", open_piece), ("c", closed_piece)):
        for (d, k, lab), m in M.items():
            g = groups.setdefault((k, lab), {"t": {}, "o": {}, "c": {}})
            g[tag][d] = g[tag].get(d, 0) + m
    report = ConsistencyReport(True)
    for (k, lab) in sorted(groups, key=lambda g: (g[0], g[1].sort_key())):
        g = groups[(k, lab)]
        sol = _solve_group(g["t"], g["o"], g["c"], mode == "adjacent")
        if sol is None:
            report.consistent = False
            for d in sorted(set(g["t"]) | set(g["o"]) | set(g["c"])):
                diff = g["t"].get(d, 0) - g["o"].get(d, 0) - g["c"].get(d, 0)
                if diff:
                    report.leftover.append((d, k, lab, "missing" if diff > 0 else "surplus", abs(diff)))
            continue
        for d, a, b in sol:
            if a:
                report.cancellations.append((d, d + 1, k, lab, a))
            if b:
                report.cancellations.append((d + 1, d, k, lab, b))
    report.cancellations.sort(key=lambda c: (min(c[0], c[1]), c[2], c[3].sort_key(), c[0]))
    return report


# --- certificate for the two-piece assembly -----------------------------------


@dataclass
class AssemblyCertificate:
    orientation: str  # which piece is open: "x_open" or "y_open"
    x_piece: GradedModule
    levi_module: GradedModule
    report: ConsistencyReport
    admissible: bool
    reasons: list

    def to_dict(self) -> dict:
        return {
            "orientation": self.orientation,
            "admissible": self.admissible,
            "reasons": list(self.reasons),
            "x_piece": self.x_piece.to_rows(),
            "levi_module": self.levi_module.to_rows(),
            "les": self.report.to_dict(),
        }


def _solve_unknown(target: GradedModule, known: GradedModule, known_is_open: bool) -> GradedModule | None:
    """The unknown piece forced by ``target`` and ``known``, if any.

    Known entries missing from the target must cancel against the unknown
    piece, one degree down when the known piece is open (closed@k vs open@k+1)
    and one degree up when it is closed.
    """
    x = target - known
    step = -1 if known_is_open else 1
    for (d, k, lab), m in (known - target).items():
        x[(d + step, k, lab)] += m
    return x


def assembly_certificates(n: int, coeff: str, e: int) -> list[AssemblyCertificate]:
    """Search for the unknown ``x_2`` contribution in the B_n two-piece assembly.

    The target is the Harish-Chandra restriction of ``bn_table(n, coeff)``, the
    ``y_n`` piece is ``G_m x X_{L_J}(I, w_{n-1})`` computed from
    ``bn_table(n - 1, coeff)``. The ``x_2`` piece is left free; a candidate is
    admissible when it is ``shift(twist(C, e), 2e)`` for a module ``C`` of
    bipartitions of ``n - 1`` with degrees in ``[n-1, 2n-2]`` and eigenvalue
    exponents in ``[0, n-1]`` (the shape of a Coxeter variety of rank
    ``n - 1``), and when no principal character other than Id or St of the
    Levi occurs in both pieces. Both orientations are tried.
    """
    target = hc_restrict_module(bn_table(n, coeff))
    y_piece = tensor(bn_table(n - 1, coeff), gm_cohomology(1))
    m = n - 1
    id_, st = CharLabel.bp((m,), ()), CharLabel.bp((), (1,) * m)
    out = []
    for y_open in (True, False):
        x_piece = _solve_unknown(target, y_piece, y_open)
        if y_open:
            report = check_les_consistency(target, y_piece, x_piece, mode="les")
        else:
            report = check_les_consistency(target, x_piece, y_piece, mode="les")
        reasons = []
        if not report.consistent:
            reasons.append("long exact sequence inconsistent")
        bad = [lab for lab in x_piece.labels() if lab.kind != "bipartition" or lab.data.n != m]
        if bad:
            reasons.append("x piece has labels outside the Levi principal series")
        levi = GradedModule()
        for (d, k, lab), mult in x_piece.items():
            levi[(d - 2 * e, k - e, lab)] += mult
        if any(not m <= d <= 2 * m or not 0 <= k <= m for d, k, _ in levi):
            reasons.append("Levi module outside the Coxeter-variety range")
        shared = (x_piece.labels() & y_piece.labels()) - {id_, st}
        if shared:
            reasons.append("shared characters: " + ", ".join(sorted(map(str, shared))))
        out.append(AssemblyCertificate(
            "y_open" if y_open else "x_open", x_piece, levi, report, not reasons, reasons,
        ))
    return out
