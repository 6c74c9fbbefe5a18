import math
import random
from fractions import Fraction

import numpy as np
import pytest

from concordance.arcs import CertifiedReal
from concordance.l2sig import (
    HermitianLaurentMatrix,
    MultiLaurent,
    l2_signature,
    quadrature,
    rank_bound_check,
)
from concordance.laurent import T, T_INV, LaurentPoly, involute

U = T + T_INV


def grid_oracle(M: HermitianLaurentMatrix, points: int = 20000) -> float:
    """Midpoint rule on the circle with numpy eigenvalues (one variable)."""
    total = 0
    for k in range(points):
        ev = np.linalg.eigvalsh(M.evaluate([2 * math.pi * (k + 0.5) / points]))
        total += int(np.sum(ev > 0) - np.sum(ev < 0))
    return total / points


def random_hermitian(rng, n):
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        a, b = rng.randint(-3, 3), rng.randint(-2, 2)
        rows[i][i] = LaurentPoly({0: a}) + U * b
        for j in range(i + 1, n):
            p = LaurentPoly({rng.randint(-1, 1): rng.randint(-2, 2)})
            rows[i][j], rows[j][i] = p, involute(p)
    return HermitianLaurentMatrix.from_laurent(rows)


def test_headline_values():
    assert l2_signature(HermitianLaurentMatrix.from_laurent([[U]])).exact == 0
    assert l2_signature(HermitianLaurentMatrix.from_laurent([[U + 3]])).exact == 1
    assert l2_signature(HermitianLaurentMatrix.from_laurent([[U + 1]])).exact == Fraction(1, 3)


def test_constant_matrices():
    M = HermitianLaurentMatrix.from_laurent([[2, 1], [1, -3]])
    assert l2_signature(M).exact == 0
    assert l2_signature(HermitianLaurentMatrix.from_laurent([[5]])).exact == 1
    assert l2_signature(HermitianLaurentMatrix.from_laurent([])).exact == 0


def test_direct_sum_and_negation():
    rng = random.Random(0)
    for _ in range(15):
        A, B = random_hermitian(rng, rng.randint(1, 2)), random_hermitian(rng, rng.randint(1, 2))
        a, b = l2_signature(A), l2_signature(B)
        s = l2_signature(A.direct_sum(B))
        n = l2_signature(-A)
        if a.exact is not None and b.exact is not None:
            assert s.exact == a.exact + b.exact
            assert n.exact == -a.exact
        else:
            assert s.lo <= a.hi + b.hi and a.lo + b.lo <= s.hi
            assert n.lo <= -a.lo and -a.hi <= n.hi
        assert max(abs(a.lo), abs(a.hi)) <= A.n


def test_matches_grid_oracle():
    rng = random.Random(1)
    for _ in range(10):
        M = random_hermitian(rng, rng.randint(1, 3))
        r = l2_signature(M)
        assert abs(r.value - grid_oracle(M, 4000)) < 5e-3 * M.n + r.error


def test_exact_inside_quadrature():
    rng = random.Random(2)
    for _ in range(10):
        M = random_hermitian(rng, rng.randint(1, 2))
        e = l2_signature(M, method="exact")
        q = l2_signature(M, method="quadrature", max_depth=10)
        assert q.exact is None
        assert q.lo <= e.lo and e.hi <= q.hi


def test_off_diagonal_example():
    M = HermitianLaurentMatrix.from_laurent([[U, T], [T_INV, 1]])
    assert l2_signature(M).exact == Fraction(2, 3)


def test_two_variables():
    x = MultiLaurent(2, {(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1})
    M = HermitianLaurentMatrix([[x]])
    r = l2_signature(M, max_depth=8)
    assert r.exact is None and r.contains(0) and r.hi - r.lo < Fraction(1, 10)
    shifted = HermitianLaurentMatrix([[MultiLaurent(2, {**x.terms, (0, 0): 5})]])
    q = quadrature(shifted)
    assert q.lo == q.hi == 1 and q.uncertain_volume == 0
    with pytest.raises(ValueError):
        l2_signature(M, method="exact")


def test_rank_bound():
    assert rank_bound_check(HermitianLaurentMatrix.from_laurent([[U]]), 0)
    assert not rank_bound_check(HermitianLaurentMatrix.from_laurent([[2]]), 0)
    assert rank_bound_check(HermitianLaurentMatrix.from_laurent([[2]]), 5)
    with pytest.raises(ValueError):
        rank_bound_check(HermitianLaurentMatrix.from_laurent([[2]]), -1)


def test_validation_and_json():
    with pytest.raises(ValueError, match="Hermitian"):
        HermitianLaurentMatrix.from_laurent([[T]])
    with pytest.raises(ValueError):
        HermitianLaurentMatrix.from_json({"vars": 1, "entries": [[[{"exps": [0], "coeff": 0.5}]]]})
    with pytest.raises(ValueError):
        HermitianLaurentMatrix.from_json({"rows": []})
    M = HermitianLaurentMatrix.from_laurent([[U, T], [T_INV, 1]])
    back = HermitianLaurentMatrix.from_json(M.to_json())
    assert back.entries == M.entries and back.k == 1
    assert CertifiedReal.from_json(l2_signature(M).to_json()) == l2_signature(M)
