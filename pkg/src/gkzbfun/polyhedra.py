"""Geometry of the rational cone spanned by the columns of an integer matrix.

Facets are found by scanning (d-1)-subsets of columns; at the sizes this
package targets (at most ten columns) that beats implementing double
description.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from . import exact
from .errors import ValidationError
from .linform import ParamLinForm, dot_forms


@dataclass(frozen=True)
class Face:
    """A face of ``cone(A)``: the columns on it and a primitive supporting functional.

    The functional vanishes exactly on ``columns`` and is positive on every
    other column.  For the full face it is the zero vector.
    """

    columns: tuple[int, ...]
    functional: tuple[int, ...]
    is_facet: bool = False

    def to_json(self) -> dict:
        return {
            "columns": list(self.columns),
            "functional": list(self.functional),
            "is_facet": self.is_facet,
        }


@dataclass(frozen=True)
class ConeInfo:
    facets: tuple[Face, ...]
    pointed: bool
    homogeneous: bool
    grading: tuple[Fraction, ...] | None = field(default=None)


def _check_full_rank(A):
    d = exact.shape(A)[0]
    if exact.rank(A) != d:
        raise ValidationError(f"A must have rank d = {d}, got rank {exact.rank(A)}")


@lru_cache(maxsize=512)
def _facets_cached(A: exact.IntMatrix) -> tuple[Face, ...]:
    d, n = exact.shape(A)
    cols = exact.columns(A)
    seen: dict[tuple[int, ...], Face] = {}
    for sub in combinations(range(n), d - 1):
        if sub:
            S = exact.from_columns([cols[j] for j in sub])
            if exact.rank(S) != d - 1:
                continue
            ker = exact.rational_kernel(exact.transpose(S))
        else:
            ker = exact.rational_kernel(((0,) * d,))
        if len(ker) != 1:
            continue
        L = exact.clear_denominators(ker[0])
        vals = [exact.dot(L, a) for a in cols]
        if all(v <= 0 for v in vals):
            L = tuple(-x for x in L)
            vals = [-v for v in vals]
        if any(v < 0 for v in vals):
            continue
        zero = tuple(j for j, v in enumerate(vals) if v == 0)
        if zero not in seen:
            seen[zero] = Face(zero, L, True)
    return tuple(sorted(seen.values(), key=lambda f: f.columns))


def cone_facets(A) -> list[Face]:
    """All facets of ``cone(A)``, each with its primitive inward normal."""
    A = exact.as_int_matrix(A)
    _check_full_rank(A)
    return list(_facets_cached(A))


def is_pointed(A) -> bool:
    A = exact.as_int_matrix(A)
    facets = cone_facets(A)
    d = exact.shape(A)[0]
    if not facets:
        return False
    return exact.rank([f.functional for f in facets]) == d


def all_faces(A) -> list[Face]:
    """Every face, as closure of the facets under intersection, plus the full face."""
    A = exact.as_int_matrix(A)
    facets = cone_facets(A)
    d, n = exact.shape(A)
    full = tuple(range(n))
    faces: dict[tuple[int, ...], tuple[int, ...]] = {full: (0,) * d}
    frontier = {f.columns: f.functional for f in facets}
    while frontier:
        new = {}
        for cols, L in frontier.items():
            if cols in faces:
                continue
            faces[cols] = L
            for f in facets:
                inter = tuple(sorted(set(cols) & set(f.columns)))
                if inter not in faces and inter not in frontier:
                    new[inter] = exact.primitive(tuple(a + b for a, b in zip(L, f.functional)))
        frontier = new
    facet_cols = {f.columns for f in facets}
    out = [Face(c, L, c in facet_cols) for c, L in faces.items()]
    return sorted(out, key=lambda f: (len(f.columns), f.columns))


def minimal_face_containing(A, cols: Sequence[int]) -> Face:
    want = set(cols)
    cands = [f for f in all_faces(A) if want <= set(f.columns)]
    return min(cands, key=lambda f: len(f.columns))


def positive_grading(A) -> tuple[int, ...]:
    """An integer functional strictly positive on every column.

    Exists exactly when the cone is pointed and no column is zero.
    """
    A = exact.as_int_matrix(A)
    facets = cone_facets(A)
    d = exact.shape(A)[0]
    w = [0] * d
    for f in facets:
        w = [a + b for a, b in zip(w, f.functional)]
    w = exact.primitive(tuple(w))
    if not facets or any(exact.dot(w, a) <= 0 for a in exact.columns(A)):
        raise ValidationError("cone(A) must be pointed (no strictly positive grading exists)")
    return w


def homogeneity(A) -> tuple[Fraction, ...] | None:
    """A row vector ``c`` with ``c A = (1,...,1)``, or None when A is not homogeneous."""
    A = exact.as_int_matrix(A)
    n = exact.shape(A)[1]
    return exact.solve_rational(exact.transpose(A), [1] * n)


def cone_info(A) -> ConeInfo:
    A = exact.as_int_matrix(A)
    c = homogeneity(A)
    return ConeInfo(tuple(cone_facets(A)), is_pointed(A), c is not None, c)


def face_functional(A, F: Sequence[int], k: int) -> tuple[Fraction, ...]:
    """A functional vanishing on the columns in ``F`` and equal to 1 on column ``k``.

    When ``F`` spans a hyperplane it is unique; otherwise the solution with
    all free coordinates zero is returned.
    """
    A = exact.as_int_matrix(A)
    cols = exact.columns(A)
    rows = [cols[j] for j in F] + [cols[k]]
    rhs = [0] * len(F) + [1]
    L = exact.solve_rational(rows, rhs)
    if L is None:
        raise ValueError(f"column {k} lies in the span of columns {list(F)}")
    return L


def euler_operator(A, L: Sequence, beta: Sequence[ParamLinForm]):
    """Coefficients ``L(a_j)`` of the theta_j in ``E_L`` and the value ``beta_L = L . beta``."""
    A = exact.as_int_matrix(A)
    coeffs = tuple(Fraction(exact.dot(L, a)) for a in exact.columns(A))
    return coeffs, dot_forms(L, beta)


def in_cone(A, b: Sequence) -> bool:
    """Exact membership of ``b`` in ``cone(A)`` for full-rank ``A``."""
    return all(exact.dot(f.functional, b) >= 0 for f in cone_facets(A))


def is_visible(A_prime, a0: Sequence[int], b: Sequence[int]) -> bool:
    """Whether ``b + lam*a0`` leaves ``cone(A')`` for every small ``lam > 0``."""
    A_prime = exact.as_int_matrix(A_prime)
    d = exact.shape(A_prime)[0]
    if exact.rank(A_prime) < d:
        if exact.rank(exact.from_columns(exact.columns(A_prime) + [tuple(a0)])) < d:
            raise ValidationError("columns of A' together with a0 must span Q^d")
        # a0 leaves span(A'), so every point is visible
        return True
    facets = cone_facets(A_prime)
    if any(exact.dot(f.functional, b) < 0 for f in facets):
        raise ValueError(f"{tuple(b)} is not in cone(A')")
    return any(
        exact.dot(f.functional, b) == 0 and exact.dot(f.functional, a0) < 0 for f in facets
    )


def parallelepiped_points(B_cols: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Lattice points of ``{sum lam_j b_j : 0 <= lam_j < 1}`` for independent ``b_j``.

    Coset representatives of ``Z^d / sum Z b_j`` are read off a triangular
    basis and folded into the parallelepiped.
    """
    d = len(B_cols[0])
    H, _ = exact.hnf([tuple(b) for b in B_cols])
    diag = [H[i][i] for i in range(d)]
    B = exact.from_columns(B_cols)
    pts = []
    for x in product(*(range(h) for h in diag)):
        lam = exact.solve_rational(B, x)
        frac = [q - (q.numerator // q.denominator) for q in lam]
        p = exact.matvec(B, frac)
        pts.append(tuple(int(v) for v in p))
    return sorted(set(pts))


def is_normal(A) -> bool:
    """Whether ``NA`` equals ``cone(A) ∩ ZA``, assuming ``ZA = Z^d``.

    Checked on every simplicial subcone: each lattice point of its half-open
    fundamental parallelepiped must lie in ``NA``.
    """
    from .diophantine import semigroup_member

    A = exact.as_int_matrix(A)
    positive_grading(A)
    d, n = exact.shape(A)
    cols = exact.columns(A)
    for sub in combinations(range(n), d):
        Bc = [cols[j] for j in sub]
        if exact.rank(exact.from_columns(Bc)) < d:
            continue
        for p in parallelepiped_points(Bc):
            if semigroup_member(A, p) is None:
                return False
    return True
