"""Shared generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from concordance.laurent import LaurentPoly
from concordance.seifert import SeifertMatrix


def standard_form(g: int) -> list[list[int]]:
    """The intersection form ``V - V^T`` for a standard symplectic basis."""
    n = 2 * g
    J = [[0] * n for _ in range(n)]
    for k in range(g):
        J[2 * k][2 * k + 1] = -1
        J[2 * k + 1][2 * k] = 1
    return J


def random_seifert(rng: random.Random, g: int, height: int = 2) -> SeifertMatrix:
    """Random upper triangle; the lower one is forced by ``V - V^T = J``."""
    n = 2 * g
    J = standard_form(g)
    V = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            V[i][j] = rng.randint(-height, height)
    for i in range(n):
        for j in range(i + 1, n):
            V[j][i] = V[i][j] - J[i][j]
    return SeifertMatrix(V)


def random_unimodular(rng: random.Random, n: int, steps: int = 4) -> list[list[int]]:
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1])
        for r in range(n):
            P[r][j] += c * P[r][i]
    return P


def congruent(V: SeifertMatrix, P) -> SeifertMatrix:
    n = V.size
    PT = [[P[j][i] for j in range(n)] for i in range(n)]
    A = [[sum(PT[i][k] * V.entries[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return SeifertMatrix([[sum(A[i][k] * P[k][j] for k in range(n)) for j in range(n)] for i in range(n)])


small_fractions = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3))


@st.composite
def laurent_polys(draw, max_terms: int = 4, exp_range: int = 3):
    k = draw(st.integers(0, max_terms))
    exps = draw(st.lists(st.integers(-exp_range, exp_range), min_size=k, max_size=k, unique=True))
    return LaurentPoly({e: draw(small_fractions) for e in exps})


@st.composite
def seifert_matrices(draw, max_genus: int = 2, height: int = 2):
    g = draw(st.integers(1, max_genus))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_seifert(random.Random(seed), g, height)
