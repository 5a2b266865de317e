"""Pieces ``X_x`` of ``X(I, wF)`` indexed by J-reduced-I elements, and their classification.

A nonempty piece is *Case1* when ``v = x w F(x)^-1`` lies in ``W_J`` (and is
left-``W_K``-reduced, ``K = K_x``): the fibres over the Levi variety are affine
spaces of dimension ``e``. It is *Case2* when ``w = s w'`` with ``s`` a
simple reflection that acts trivially on ``Phi_I``, ``v = x w' F(x)^-1`` in
``W_J`` of length ``l(w')``, and ``x W_I s x^-1`` missing ``W_J``: the fibre
acquires a ``G_m`` factor.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .cosets import K_of, case_e, double_coset_min_reps, is_double_reduced
from .deodhar import WordChooser, check_pair, distinguished_subexpressions, piece_nonempty, piece_witnesses
from .errors import PreconditionError
from .rootsys import RootSystem
from .weyl import (
    WeylElt,
    apply_F,
    apply_F_subset,
    elements,
    fixes_pointwise,
    in_parabolic,
    is_I_reduced,
    longest_element,
    reduced_word,
    simple_reflection,
)

EMPTY, CASE1, CASE2, UNCLASSIFIED = "Empty", "Case1", "Case2", "Unclassified"


@dataclass
class PieceClassification:
    x: WeylElt
    status: str
    K: frozenset
    v: Optional[WeylElt] = None
    e: Optional[int] = None
    s: Optional[int] = None
    w_prime: Optional[WeylElt] = None
    # dimension of the torus factor: 1 for Case2, 0 otherwise
    d: int = 0
    cells: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    # every left descent satisfying the Case2 conditions, also when Case1 won
    case2_candidates: tuple = ()

    @property
    def nonempty(self) -> bool:
        return self.status != EMPTY

    @property
    def ambiguous(self) -> bool:
        """Both Case1 and Case2 hypotheses hold for this piece."""
        return self.status == CASE1 and bool(self.case2_candidates)

    def to_dict(self) -> dict:
        out = {
            "x_word": list(self.x.word),
            "length": self.x.length,
            "nonempty": self.nonempty,
            "status": self.status,
        }
        if self.status in (CASE1, CASE2):
            out["v_word"] = list(self.v.word)
            out["K"] = sorted(self.K)
            out["e"] = self.e
            out["d"] = self.d
        if self.status == CASE2:
            out["s"] = self.s
            out["w_prime_word"] = list(self.w_prime.word)
        if self.ambiguous:
            out["case2_candidates"] = list(self.case2_candidates)
        if self.status == UNCLASSIFIED:
            out["cells"] = self.cells
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def check_J(rs: RootSystem, J: Iterable[int]) -> frozenset:
    J = frozenset(J)
    if any(not 1 <= j <= rs.rank for j in J):
        raise PreconditionError("invalid simple index")
    if apply_F_subset(rs, J) != J:
        raise PreconditionError("J not F-stable")
    return J


def _check_all(I, w: WeylElt, J) -> tuple[frozenset, frozenset]:
    rs = w.rs
    I = frozenset(I)
    if any(not 1 <= i <= rs.rank for i in I):
        raise PreconditionError("invalid simple index")
    check_pair(I, w)
    return I, check_J(rs, J)


def enumerate_pieces(I: Iterable[int], w: WeylElt, J: Iterable[int],
                     word_for: WordChooser | None = None) -> list[tuple[WeylElt, bool]]:
    """One ``(x, nonempty)`` pair per J-reduced-I element, ordered by (length, word)."""
    I, J = _check_all(I, w, J)
    return [(x, piece_nonempty(I, w, J, x, word_for)) for x in double_coset_min_reps(w.rs, J, I)]


def _twisted_conj(x: WeylElt, u: WeylElt) -> WeylElt:
    return x * u * ~apply_F(x)


def case2_conditions(I: Iterable[int], w: WeylElt, J: Iterable[int], x: WeylElt, s: int) -> dict:
    """The three Case2 hypotheses for the split ``w = s w'``.

    ``s`` must be a left descent of ``w``. The third condition reads
    ``x (W_I s) x^-1 ∩ W_J = ∅``: no element of the coset lands in ``W_J``.
    """
    rs = w.rs
    I, J = frozenset(I), frozenset(J)
    if s not in w.left_descents():
        raise PreconditionError("s is not a left descent of w")
    ss = simple_reflection(rs, s)
    w_prime = ss * w
    v = _twisted_conj(x, w_prime)
    xinv = ~x
    return {
        "w_prime": w_prime,
        "v": v,
        "i": in_parabolic(v, J) and v.length == w_prime.length,
        "ii": fixes_pointwise(s, rs, I),
        "iii": not any(in_parabolic(x * y * ss * xinv, J) for y in elements(rs, I)),
    }


def _case2_candidates(I, w, J, x) -> list[tuple[int, dict]]:
    out = []
    for s in w.left_descents():
        c = case2_conditions(I, w, J, x, s)
        if c["i"] and c["ii"] and c["iii"]:
            out.append((s, c))
    return out


def classify_piece(I: Iterable[int], w: WeylElt, J: Iterable[int], x: WeylElt,
                   word_for: WordChooser | None = None) -> PieceClassification:
    I, J = _check_all(I, w, J)
    if not is_double_reduced(x, J, I):
        raise PreconditionError("x not J-reduced-I")
    K = K_of(x, J, I)
    if not piece_nonempty(I, w, J, x, word_for):
        return PieceClassification(x, EMPTY, K)

    notes = []
    cands = _case2_candidates(I, w, J, x)
    v = _twisted_conj(x, w)
    if in_parabolic(v, J):
        if is_I_reduced(v, K, "left"):
            return PieceClassification(
                x, CASE1, K, v=v, e=case_e(x, w, J),
                case2_candidates=tuple(s for s, _ in cands),
            )
        notes.append("v lies in W_J but is not W_K-reduced")

    if cands:
        s, c = cands[0]
        return PieceClassification(
            x, CASE2, K, v=c["v"], e=case_e(x, c["w_prime"], J), s=s,
            w_prime=c["w_prime"], d=1, notes=notes,
        )

    if not notes:
        notes.append("neither Case1 nor Case2 hypotheses hold")
    cells = [
        {"y_word": list(y.word), **g.summary()}
        for y, g in piece_witnesses(I, w, J, x, word_for)
    ]
    return PieceClassification(x, UNCLASSIFIED, K, cells=cells, notes=notes)


def classify_all(I: Iterable[int], w: WeylElt, J: Iterable[int], jobs: int = 1,
                 word_for: WordChooser | None = None) -> list[PieceClassification]:
    I, J = _check_all(I, w, J)
    reps = double_coset_min_reps(w.rs, J, I)
    if jobs <= 1:
        return [classify_piece(I, w, J, x, word_for) for x in reps]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda x: classify_piece(I, w, J, x, word_for), reps))


# --- Coxeter elements --------------------------------------------------------


def is_coxeter_element(w: WeylElt, S: Iterable[int] | None = None) -> bool:
    """``w`` is a product of the reflections in ``S`` (default all), each once."""
    S = w.rs.simple_indices if S is None else frozenset(S)
    return w.length == len(S) and frozenset(w.word) == S


@dataclass(frozen=True)
class CoxeterReport:
    x: WeylElt
    v: WeylElt
    gm_exponent: int
    expected_x: WeylElt
    v_is_coxeter: bool
    nonempty: tuple

    def to_dict(self) -> dict:
        return {
            "x_word": list(self.x.word),
            "expected_x_word": list(self.expected_x.word),
            "v_word": list(self.v.word),
            "v_is_coxeter": self.v_is_coxeter,
            "gm_exponent": self.gm_exponent,
            "nonempty_x_words": [list(x.word) for x in self.nonempty],
        }


def coxeter_report(w: WeylElt, J: Iterable[int]) -> CoxeterReport:
    """The unique nonempty piece of ``X(w)`` for a split Coxeter element ``w``.

    ``gm_exponent`` is ``m_gamma`` of the single distinguished subexpression
    whose product lands in ``W_J^x``; it is computed, not set to ``|S| - |J|``.
    """
    rs = w.rs
    if not rs.datum.is_split:
        raise PreconditionError("twist not split")
    if not is_coxeter_element(w):
        raise PreconditionError("w not Coxeter")
    J = check_J(rs, J)
    nonempty = tuple(x for x, ok in enumerate_pieces((), w, J) if ok)
    if len(nonempty) != 1:
        raise PreconditionError("expected exactly one nonempty piece")
    x = nonempty[0]
    xinv = ~x
    gammas = [g for g in distinguished_subexpressions(reduced_word(w), x)
              if in_parabolic(x * g.product * xinv, J)]
    if len(gammas) != 1:
        raise PreconditionError("expected exactly one distinguished subexpression in W_J^x")
    # v is the conjugate of the subword kept by gamma, not of w itself
    v = x * gammas[0].product * xinv
    return CoxeterReport(
        x=x,
        v=v,
        gm_exponent=gammas[0].m_gamma,
        expected_x=longest_element(rs, J) * longest_element(rs),
        v_is_coxeter=in_parabolic(v, J) and is_coxeter_element(v, J),
        nonempty=nonempty,
    )


# --- chains ------------------------------------------------------------------


@dataclass(frozen=True)
class ChainTerm:
    I: frozenset
    w: WeylElt
    gamma: Optional[int] = None

    @property
    def z(self) -> WeylElt:
        if self.gamma is None:
            return self.w
        return simple_reflection(self.w.rs, self.gamma) * self.w


@dataclass(frozen=True)
class ChainSpec:
    terms: tuple
    xs: tuple

    @property
    def rs(self) -> RootSystem:
        return self.terms[0].w.rs


def _maps_simple(w: WeylElt, src: Iterable[int], dst: Iterable[int]) -> bool:
    rs = w.rs
    return {w.perm[rs.simple[i - 1]] for i in src} == {rs.simple[i - 1] for i in dst}


def _check_chain(spec: ChainSpec, J: frozenset) -> None:
    r = len(spec.terms)
    if r == 0 or len(spec.xs) != r:
        raise PreconditionError("chain needs one x per term")
    rs = spec.rs
    Is = [t.I for t in spec.terms] + [apply_F_subset(rs, spec.terms[0].I)]
    for k, t in enumerate(spec.terms, 1):
        if not is_I_reduced(t.w, t.I, "left"):
            raise PreconditionError(f"term {k}: w not I-reduced")
        if not _maps_simple(t.w, Is[k], t.I):
            raise PreconditionError(f"term {k}: w does not carry I_{k + 1} onto I_{k}")
        if t.gamma is not None and t.z.length != t.w.length - 1:
            raise PreconditionError(f"term {k}: gamma is not a left descent of w")
        if not is_double_reduced(spec.xs[k - 1], J, t.I):
            raise PreconditionError(f"term {k}: x not J-reduced-I")
    if len({x.length for x in spec.xs}) != 1:
        raise PreconditionError("x lengths differ")


@dataclass(frozen=True)
class ChainVerdict:
    index: int
    v: WeylElt
    checks: dict
    k_compatible: bool

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "v_word": list(self.v.word),
            "checks": dict(self.checks),
            "ok": self.ok,
            "k_compatible": self.k_compatible,
        }


def validate_chain(spec: ChainSpec, J: Iterable[int]) -> list[ChainVerdict]:
    """Per-term hypothesis checks, with ``x_{r+1} = F(x_1)`` and ``I_{r+1} = phi(I_1)``.

    ``k_compatible`` records whether ``v_i`` carries ``K_{x_{i+1}}`` onto
    ``K_{x_i}``; it is reported only and does not enter ``ok``.
    """
    rs = spec.rs
    J = check_J(rs, J)
    _check_chain(spec, J)
    r = len(spec.terms)
    xs = list(spec.xs) + [apply_F(spec.xs[0])]
    Is = [t.I for t in spec.terms] + [apply_F_subset(rs, spec.terms[0].I)]
    Ks = [K_of(xs[k], J, Is[k]) for k in range(r + 1)]
    out = []
    for k, t in enumerate(spec.terms):
        x = xs[k]
        v = x * t.z * ~xs[k + 1]
        if t.gamma is None:
            checks = {
                "v_in_WJ": in_parabolic(v, J),
                "v_K_reduced": is_I_reduced(v, Ks[k], "left"),
            }
        else:
            g = simple_reflection(rs, t.gamma)
            xinv = ~x
            checks = {
                "i": in_parabolic(v, J) and v.length == t.z.length,
                "ii": fixes_pointwise(t.gamma, rs, t.I),
                "iii": not any(in_parabolic(x * y * g * xinv, J) for y in elements(rs, t.I)),
            }
        out.append(ChainVerdict(k + 1, v, checks, _maps_simple(v, Ks[k + 1], Ks[k])))
    return out


def chain_summary(spec: ChainSpec, J: Iterable[int]) -> dict:
    verdicts = validate_chain(spec, J)
    bad = [f"term {v.index}: {name}" for v in verdicts for name, ok in v.checks.items() if not ok]
    if bad:
        raise PreconditionError("invalid chain (" + ", ".join(bad) + ")")
    J = frozenset(J)
    prod = verdicts[0].v
    for v in verdicts[1:]:
        prod = prod * v.v
    return {
        "d": sum(1 for t in spec.terms if t.gamma is not None),
        "e": sum(case_e(x, t.z, J) for x, t in zip(spec.xs, spec.terms)),
        "v": [list(v.v.word) for v in verdicts],
        "v_product_word": list(prod.word),
    }


def chain_from_words(rs: RootSystem, terms: Sequence[dict], x_words: Sequence[Sequence[int]]) -> ChainSpec:
    from .weyl import from_word

    built = tuple(
        ChainTerm(frozenset(t["I"]), from_word(rs, t["w"]), t.get("gamma")) for t in terms
    )
    return ChainSpec(built, tuple(from_word(rs, xw) for xw in x_words))
