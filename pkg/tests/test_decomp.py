from itertools import combinations

import pytest

from dlq.decomp import (
    CASE1,
    CASE2,
    EMPTY,
    UNCLASSIFIED,
    ChainSpec,
    ChainTerm,
    case2_conditions,
    chain_summary,
    classify_all,
    classify_piece,
    coxeter_report,
    enumerate_pieces,
    validate_chain,
)
from dlq.deodhar import piece_nonempty
from dlq.errors import PreconditionError
from dlq.weyl import elements, from_word, identity, longest_element


def _bn(rs_of, n):
    rs = rs_of(f"B{n}")
    return rs, from_word(rs, list(range(n, 1, -1)) + [1, 2]), frozenset(range(1, n))


def test_coxeter_pieces_in_a3(rs_of):
    rs = rs_of("A3")
    pieces = enumerate_pieces((), from_word(rs, [1, 2, 3]), ())
    assert [x for x, ok in pieces if ok] == [longest_element(rs)]


def test_b3_nonempty_pieces(rs_of):
    rs, w, J = _bn(rs_of, 3)
    got = [x.word for x, ok in enumerate_pieces({1}, w, J) if ok]
    assert got == [(3, 2), (3, 2, 1, 2, 3)]


def test_j_equal_s_gives_one_piece(rs_of):
    rs, w, _ = _bn(rs_of, 3)
    assert enumerate_pieces({1}, w, {1, 2, 3}) == [(identity(rs), True)]


@pytest.mark.parametrize("n", [3, 4])
def test_bn_classification(rs_of, n):
    rs, w, J = _bn(rs_of, n)
    by_x = {p.x.word: p for p in classify_all({1}, w, J)}
    x2 = by_x[tuple(range(n, 1, -1))]
    assert x2.status == CASE1 and x2.K == frozenset()
    assert x2.v.word == tuple(range(n - 1, 0, -1))
    yn = by_x[tuple(range(n, 1, -1)) + tuple(range(1, n + 1))]
    assert yn.status == CASE2 and yn.s == n and yn.K == frozenset({1})
    assert yn.v == from_word(rs, list(range(n - 1, 1, -1)) + [1, 2])


def test_b2_second_piece_is_unclassified(rs_of):
    # t_2 does not commute with t_1 in B_2, so Case2 condition (ii) fails
    rs, w, J = _bn(rs_of, 2)
    p = classify_piece({1}, w, J, from_word(rs, [2, 1, 2]))
    assert p.status == UNCLASSIFIED and p.cells
    assert not case2_conditions({1}, w, J, p.x, 2)["ii"]


def test_an_classification(rs_of):
    rs = rs_of("A4")
    w = from_word(rs, [1, 2, 3, 4, 3])
    by_x = {p.x.word: p for p in classify_all((), w, {1, 2, 3})}
    assert by_x[(4,)].status == CASE1 and by_x[(4,)].v == from_word(rs, [1, 2, 3])
    x1 = by_x[(4, 3, 2, 1)]
    assert x1.status == CASE2 and x1.v == from_word(rs, [1, 2, 3, 2])


def test_status_agrees_with_emptiness_test(rs_of):
    rs = rs_of("B3")
    for w in elements(rs):
        for J in [(1, 2), (2, 3), (1, 3), ()]:
            for p in classify_all((), w, J):
                assert (p.status != EMPTY) == piece_nonempty((), w, J, p.x)


def test_case2_invariants(rs_of):
    for label in ("A3", "B3"):
        rs = rs_of(label)
        for w in elements(rs):
            for J in [(1, 2), (2, 3)]:
                for p in classify_all((), w, J):
                    if p.status == CASE2:
                        assert p.v.length == w.length - 1
                        assert p.s in w.left_descents()


def test_case1_requires_k_reduced(rs_of):
    rs = rs_of("B3")
    for w in elements(rs):
        for p in classify_all((), w, (1, 2)):
            if p.status == CASE1:
                assert p.K == frozenset()


def test_coxeter_report(rs_of):
    rs = rs_of("A3")
    w = from_word(rs, [1, 2, 3])
    full = coxeter_report(w, {1, 2, 3})
    assert full.x == identity(rs) and full.v == w and full.gm_exponent == 0
    empty = coxeter_report(w, ())
    assert empty.x == longest_element(rs) and empty.v == identity(rs) and empty.gm_exponent == 3
    mid = coxeter_report(w, {1, 2})
    assert mid.gm_exponent == 1 and mid.v_is_coxeter
    with pytest.raises(PreconditionError, match="w not Coxeter"):
        coxeter_report(from_word(rs, [1, 2]), ())


def test_preconditions(rs_of):
    rs = rs_of("2A3")
    with pytest.raises(PreconditionError, match="J not F-stable"):
        enumerate_pieces((), from_word(rs, [2]), {1})
    assert enumerate_pieces((), from_word(rs, [2]), {1, 3})


def test_one_term_chain_matches_classification(rs_of):
    rs = rs_of("B3")
    J = range(1, 3)
    for w in elements(rs):
        for p in classify_all((), w, J):
            if p.status == EMPTY:
                continue
            plain = validate_chain(ChainSpec((ChainTerm(frozenset(), w),), (p.x,)), J)[0]
            assert plain.ok == (p.status == CASE1)
            for s in w.left_descents():
                c = case2_conditions((), w, J, p.x, s)
                v = validate_chain(ChainSpec((ChainTerm(frozenset(), w, s),), (p.x,)), J)[0]
                assert v.ok == (c["i"] and c["ii"] and c["iii"])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_bn_chain(rs_of, n):
    rs, w, J = _bn(rs_of, n)
    yn = from_word(rs, list(range(n, 1, -1)) + list(range(1, n + 1)))
    spec = ChainSpec((ChainTerm(frozenset({1}), w, n),), (yn,))
    verdicts = validate_chain(spec, J)
    assert all(v.ok and v.k_compatible for v in verdicts)
    summary = chain_summary(spec, J)
    assert summary["d"] == 1 and summary["e"] == 0


def test_chain_rejects_unequal_lengths(rs_of):
    rs = rs_of("A2")
    s1, s2 = from_word(rs, [1]), from_word(rs, [2])
    spec = ChainSpec((ChainTerm(frozenset(), s1), ChainTerm(frozenset(), s2)),
                     (identity(rs), from_word(rs, [1])))
    with pytest.raises(PreconditionError, match="x lengths differ"):
        validate_chain(spec, ())


def test_trivial_chain_summary(rs_of):
    rs = rs_of("A2")
    e = identity(rs)
    assert chain_summary(ChainSpec((ChainTerm(frozenset(), e),), (e,)), ()) == {
        "d": 0, "e": 0, "v": [[]], "v_product_word": [],
    }


@pytest.mark.parametrize("label", ["2A3", "3D4", "2A2"])
def test_twisted_sanity(rs_of, label):
    rs = rs_of(label)
    S = range(1, rs.rank + 1)
    for w in elements(rs)[:: max(1, len(elements(rs)) // 40)]:
        assert enumerate_pieces((), w, S) == [(identity(rs), True)]
        # X(wF) itself is never empty, so some piece must be
        assert any(ok for _, ok in enumerate_pieces((), w, ()))
