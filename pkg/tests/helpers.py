"""Fixtures and independent brute-force oracles shared by the tests."""

import random
from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd

from gkzbfun import exact
from gkzbfun.errors import ValidationError
from gkzbfun.polyhedra import positive_grading

A1 = ((-1, 0, 1), (1, 1, 1))
A2 = ((-1, 0, 3), (1, 1, 1))
I2 = ((1, 0), (0, 1))
TWISTED = ((1, 1, 1), (0, 1, 2))
LINE = ((1, 1), (0, 1))

ACCEPTANCE_LINES: list[str] = []

# (matrix, t) pairs with pointed cones and ZA = Z^d
FIXTURES = [(A, t) for A in (A1, A2, I2, TWISTED, LINE) for t in range(len(A[0]))]


def leibniz_det(M):
    n = len(M)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = 1
        for i in range(n):
            term *= M[i][p[i]]
        total += -term if inv % 2 else term
    return total


def determinantal_divisors(M):
    """gcd of all k x k minors for k = 1..min(m, n)."""
    m, n = len(M), len(M[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, leibniz_det([[M[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def snf_from_minors(M):
    divs = determinantal_divisors(M)
    inv = []
    prev = 1
    for g in divs:
        if g == 0:
            inv.append(0)
        else:
            inv.append(g // prev)
            prev = g
    return tuple(inv)


def random_pointed(rng: random.Random, d: int, n: int, lo: int = -3, hi: int = 3):
    """Random d x n matrix with entries in [lo, hi], rank d, ZA = Z^d, pointed cone."""
    while True:
        A = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(d)]
        if exact.rank(A) != d or any(x != 1 for x in snf_from_minors(A)):
            continue
        try:
            positive_grading(A)
        except ValidationError:
            continue
        return exact.as_int_matrix(A)


def random_unimodular(rng: random.Random, d: int, steps: int = 6):
    U = [list(r) for r in exact.identity(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2) if d > 1 else (0, 0)
        if i == j:
            U[0][0] = -U[0][0]
            continue
        c = rng.choice([-2, -1, 1, 2])
        for k in range(d):
            U[i][k] += c * U[j][k]
    return exact.as_int_matrix(U)


def brute_in_cone(A, b):
    """Membership in cone(A) by Caratheodory: b is a nonnegative combination of
    some linearly independent subset of columns."""
    cols = exact.columns(A)
    d = len(b)
    if not any(b):
        return True
    for k in range(1, d + 1):
        for sub in combinations(range(len(cols)), k):
            B = exact.from_columns([cols[j] for j in sub])
            if exact.rank(B) < k:
                continue
            lam = exact.solve_rational(B, b)
            if lam is None or any(x < 0 for x in lam):
                continue
            if exact.matvec(B, lam) == tuple(Fraction(x) for x in b):
                return True
    return False


def brute_semigroup(A, b, cap=12):
    cols = exact.columns(A)
    for u in product(range(cap + 1), repeat=len(cols)):
        if exact.matvec(A, u) == tuple(b):
            return True
    return False


def brute_hilbert_basis(M, cap):
    """Minimal nonzero N-solutions of M x = 0 with entries <= cap."""
    n = len(M[0])
    sols = [x for x in product(range(cap + 1), repeat=n) if any(x) and not any(exact.matvec(M, x))]
    sols.sort(key=sum)
    minimal = []
    for x in sols:
        if not any(all(a >= b for a, b in zip(x, y)) for y in minimal):
            minimal.append(x)
    return set(minimal)


def brute_standard_counts(gens, n, up_to):
    counts = [0] * (up_to + 1)
    for e in product(range(up_to + 1), repeat=n):
        if sum(e) <= up_to and not any(all(g[j] <= e[j] for j in range(n)) for g in gens):
            counts[sum(e)] += 1
    return counts
