from itertools import combinations

import pytest

from dlq.cosets import (
    K_of,
    case_e,
    double_coset_min_reps,
    double_coset_min_reps_bruteforce,
    factor,
    unipotent_intersection_dim,
)
from dlq.errors import PreconditionError
from dlq.weyl import elements, from_word, in_parabolic, is_I_reduced, longest_element


def _subsets(n):
    for k in range(n + 1):
        yield from combinations(range(1, n + 1), k)


@pytest.mark.parametrize("label", ["A2", "A3", "B2", "B3", "G2"])
def test_min_reps_match_bruteforce(rs_of, label):
    rs = rs_of(label)
    for J in _subsets(rs.rank):
        for I in _subsets(rs.rank):
            assert double_coset_min_reps(rs, J, I) == double_coset_min_reps_bruteforce(rs, J, I)


@pytest.mark.parametrize("label", ["A3", "B3"])
def test_factorization_unique(rs_of, label):
    rs = rs_of(label)
    W = elements(rs)
    for J in _subsets(rs.rank):
        for I in [(), (1,), (1, 2), tuple(range(1, rs.rank + 1))]:
            reps = {x.perm for x in double_coset_min_reps(rs, J, I)}
            hits = {}
            for w in W:
                a, x, b = factor(w, J, I)
                assert a * x * b == w
                assert x.perm in reps
                assert in_parabolic(a, J) and in_parabolic(b, I)
                assert a.length + x.length + b.length == w.length
                assert is_I_reduced(a, K_of(x, J, I), "right")
                hits[(a.perm, x.perm, b.perm)] = hits.get((a.perm, x.perm, b.perm), 0) + 1
            # the normalised triples are in bijection with W
            assert len(hits) == len(W) and set(hits.values()) == {1}


def test_k_of_bn(rs_of):
    for n in (3, 4, 5):
        rs = rs_of(f"B{n}")
        J = range(1, n)
        x2 = from_word(rs, range(n, 1, -1))
        yn = from_word(rs, list(range(n, 1, -1)) + list(range(1, n + 1)))
        assert K_of(x2, J, {1}) == frozenset()
        assert K_of(yn, J, {1}) == frozenset({1})
        assert yn == longest_element(rs) * longest_element(rs, J)


def test_k_of_requires_reduced(rs_of):
    rs = rs_of("A2")
    with pytest.raises(PreconditionError, match="x not J-reduced-I"):
        K_of(from_word(rs, [1]), {1}, ())


def test_intersection_dims(rs_of):
    rs = rs_of("A3")
    w0 = longest_element(rs)
    assert unipotent_intersection_dim(rs, [("pos",)]) == 6
    assert unipotent_intersection_dim(rs, [("w_pos", w0), ("neg",)]) == 6
    assert unipotent_intersection_dim(rs, [("pos",), ("neg",)]) == 0
    # U_J^x for x = e and J = S is trivial
    assert case_e(from_word(rs, []), w0, {1, 2, 3}) == 0
    with pytest.raises(ValueError):
        unipotent_intersection_dim(rs, [])
