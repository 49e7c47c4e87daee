"""Semigroup membership, Hilbert bases and the generators of ``J̄_{A,t}``.

Membership in ``NA`` is decided by enumerating the fiber ``{u : A u = b}``,
which is finite because a pointed cone carries a strictly positive grading.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Sequence

from . import exact
from .errors import SearchBoundExceeded, ValidationError
from .polyhedra import cone_facets, in_cone, positive_grading


# ---------------------------------------------------------------------------
# fibers and membership


def _fiber_search(cols, weights, b, w, first_only):
    n = len(cols)
    out = []

    def rec(j, rem, acc):
        if j == n - 1:
            a = cols[j]
            wa = weights[j]
            wb = exact.dot(w, rem)
            if wb % wa:
                return False
            c = wb // wa
            if all(x == c * y for x, y in zip(rem, a)):
                out.append(tuple(acc + [c]))
                return first_only
            return False
        budget = exact.dot(w, rem)
        wa = weights[j]
        for c in range(budget // wa + 1):
            nxt = tuple(x - c * y for x, y in zip(rem, cols[j]))
            if rec(j + 1, nxt, acc + [c]):
                return True
        return False

    if n == 0:
        return [()] if not any(b) else []
    if exact.dot(w, b) < 0:
        return []
    rec(0, tuple(b), [])
    return out


def fiber(A, b: Sequence[int], w: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """All ``u in N^n`` with ``A u = b`` (A must have a positive grading)."""
    A = exact.as_int_matrix(A) if not isinstance(A, tuple) else A
    if w is None:
        w = positive_grading(A)
    cols = exact.columns(A)
    weights = [exact.dot(w, a) for a in cols]
    if any(x <= 0 for x in weights):
        raise ValidationError("grading must be positive on every column")
    return _fiber_search(cols, weights, tuple(b), tuple(w), False)


@lru_cache(maxsize=200_000)
def _member_cached(cols, w, b):
    weights = [exact.dot(w, a) for a in cols]
    found = _fiber_search(cols, weights, b, w, True)
    return found[0] if found else None


def monoid_member(cols: Sequence[Sequence[int]], b: Sequence[int], w: Sequence[int]):
    """Witness ``u`` with ``sum u_j cols_j = b``, using a grading ``w`` positive on cols."""
    cols = tuple(tuple(c) for c in cols)
    if any(exact.dot(w, c) <= 0 for c in cols):
        raise ValidationError("grading must be positive on every generator")
    return _member_cached(cols, tuple(w), tuple(b))


def semigroup_member(A, b: Sequence[int]) -> tuple[int, ...] | None:
    """A witness ``u in N^{n+1}`` with ``A u = b``, or None if ``b`` is not in ``NA``."""
    A = exact.as_int_matrix(A)
    w = positive_grading(A)
    return monoid_member(exact.columns(A), b, w)


# ---------------------------------------------------------------------------
# Hilbert bases


@dataclass(frozen=True)
class HBSolutionSet:
    matrix: exact.IntMatrix
    solutions: tuple[tuple[int, ...], ...]


def _dominates(x, y) -> bool:
    return all(a >= b for a, b in zip(x, y))


def hilbert_basis(M) -> HBSolutionSet:
    """Minimal nonzero solutions of ``M x = 0`` over ``N`` (Contejean-Devie completion).

    A partial vector ``x`` is extended by ``e_j`` only when the defect ``Mx``
    and ``M e_j`` point in opposite directions; candidates dominating a known
    solution are discarded.
    """
    M = exact.as_int_matrix(M)
    m, n = exact.shape(M)
    cols = exact.columns(M)
    basis: list[tuple[int, ...]] = []
    level = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    while level:
        nxt: set[tuple[int, ...]] = set()
        for x in level:
            Mx = exact.matvec(M, x)
            if not any(Mx):
                basis.append(x)
        found = set(basis)
        for x in level:
            if x in found:
                continue
            Mx = exact.matvec(M, x)
            for j in range(n):
                if exact.dot(Mx, cols[j]) >= 0:
                    continue
                y = x[:j] + (x[j] + 1,) + x[j + 1 :]
                if y in nxt:
                    continue
                if any(_dominates(y, s) for s in basis):
                    continue
                nxt.add(y)
        level = sorted(nxt)
    basis.sort(key=lambda v: (sum(v), v))
    return HBSolutionSet(M, tuple(basis))


# ---------------------------------------------------------------------------
# J̄_{A,t}


@dataclass(frozen=True)
class JbarData:
    """Generators of ``deg J̄_{A,t}`` as an ``NA'``-module."""

    generators: tuple[tuple[int, ...], ...]
    min_k: tuple[int, ...]
    K: int
    a_t_in_cone: bool
    witnesses: tuple[tuple[int, ...], ...] = ()

    def to_json(self) -> dict:
        return {
            "generators": [list(g) for g in self.generators],
            "min_k": list(self.min_k),
            "K": self.K,
            "K_label": "sufficient per generators",
            "a_t_in_cone": self.a_t_in_cone,
        }


def split_columns(A, t: int):
    """``(A', a_t, idx)`` where ``idx`` maps columns of ``A'`` back to ``A``."""
    A = exact.as_int_matrix(A)
    n = exact.shape(A)[1]
    if not 0 <= t < n:
        raise ValidationError(f"index t={t} out of range 0..{n - 1}")
    idx = [j for j in range(n) if j != t]
    cols = exact.columns(A)
    A_prime = exact.from_columns([cols[j] for j in idx])
    return A_prime, cols[t], idx


def visible_k_bound(A_prime, a_t, b) -> int:
    """Upper bound on ``k`` with ``b + k a_t in cone(A')`` when ``a_t`` is outside it."""
    bounds = []
    for f in cone_facets(A_prime):
        la = exact.dot(f.functional, a_t)
        if la < 0:
            bounds.append(exact.dot(f.functional, b) // (-la))
    if not bounds:
        raise ValueError("a_t lies in cone(A'); no finite bound on k")
    return min(bounds)


def min_multiple_in_semigroup(A_prime, a_t: Sequence[int]) -> int:
    """The least ``m >= 1`` with ``m a_t in NA'``.

    Search is capped by a certified bound: if ``a_t = B lam`` with ``lam >= 0``
    for linearly independent columns ``B`` of ``A'``, any common denominator
    of ``lam`` works.
    """
    A_prime = exact.as_int_matrix(A_prime)
    a_t = tuple(a_t)
    if not any(a_t):
        raise ValidationError("a_t must be nonzero")
    cols = exact.columns(A_prime)
    r = exact.rank(A_prime)
    bound = None
    for sub in combinations(range(len(cols)), r):
        B = exact.from_columns([cols[j] for j in sub])
        if exact.rank(B) < r:
            continue
        lam = exact.solve_rational(B, a_t)
        if lam is None or any(x < 0 for x in lam):
            continue
        if exact.matvec(B, lam) != tuple(Fraction(x) for x in a_t):
            continue
        den = lcm(*(x.denominator for x in lam))
        bound = den if bound is None else min(bound, den)
    if bound is None:
        raise ValueError("a_t is not in cone(A')")
    w = positive_grading(exact.from_columns(cols + [a_t]))
    for m in range(1, bound + 1):
        if monoid_member(cols, tuple(m * x for x in a_t), w) is not None:
            return m
    raise SearchBoundExceeded(f"no multiple of a_t up to the certified bound {bound} lies in NA'")


def _gkz_rank_ok(A_prime) -> bool:
    return exact.rank(A_prime) == exact.shape(A_prime)[0]


def min_k_for(A_prime, a_t, g, w) -> int | None:
    """Least ``k >= 1`` with ``g + k a_t in NA'`` (a_t outside cone(A'))."""
    cols = exact.columns(A_prime)
    kmax = visible_k_bound(A_prime, a_t, g)
    for k in range(1, kmax + 1):
        if monoid_member(cols, tuple(x + k * y for x, y in zip(g, a_t)), w) is not None:
            return k
    return None


def jbar_generators(A, t: int) -> JbarData:
    """Minimal degrees generating ``J̄_{A,t} ⊆ S_{A'}`` and the minimal k of each.

    Degrees come from the Hilbert basis of ``A'v - A'u - k a_t = 0`` over
    ``(u, v, k)``: the elements with ``k >= 1`` give ``A'u`` as generators.
    """
    A = exact.as_int_matrix(A)
    w = positive_grading(A)
    A_prime, a_t, _ = split_columns(A, t)
    d = exact.shape(A)[0]
    cols = exact.columns(A_prime)
    n1 = len(cols)
    if not cols or not _gkz_rank_ok(A_prime):
        # a_t leaves span(A'): no b + k a_t (k >= 1) can return to N A'
        return JbarData((), (), 0, False)
    if in_cone(A_prime, a_t):
        k = min_multiple_in_semigroup(A_prime, a_t)
        return JbarData(((0,) * d,), (k,), k, True, ((0,) * n1,))

    system = exact.from_columns(
        [tuple(-x for x in c) for c in cols] + list(cols) + [tuple(-x for x in a_t)]
    )
    # same solutions for any basis of the row lattice; the search is fastest
    # with small entries, and the row HNF tames inputs like U·A
    H, _ = exact.hnf(system)
    H = tuple(r for r in H if any(r))
    size = lambda M: max(abs(x) for r in M for x in r)
    hb = hilbert_basis(H if size(H) < size(system) else system)
    cands: dict[tuple[int, ...], tuple[int, ...]] = {}
    for h in hb.solutions:
        if h[-1] >= 1:
            u = h[:n1]
            g = exact.matvec(A_prime, u)
            if g not in cands or sum(u) < sum(cands[g]):
                cands[g] = u
    gens = sorted(cands, key=lambda g: (exact.dot(w, g), g))
    minimal: list[tuple[int, ...]] = []
    for g in gens:
        if any(
            monoid_member(cols, tuple(a - b for a, b in zip(g, h)), w) is not None
            for h in minimal
        ):
            continue
        minimal.append(g)
    ks = []
    for g in minimal:
        k = min_k_for(A_prime, a_t, g, w)
        if k is None:
            raise AssertionError(f"generator {g} admits no k; Hilbert basis inconsistent")
        ks.append(k)
    return JbarData(
        tuple(minimal), tuple(ks), max(ks, default=0), False, tuple(cands[g] for g in minimal)
    )

