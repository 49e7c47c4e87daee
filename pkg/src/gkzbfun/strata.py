"""Quasi-degree strata of ``S_A/∂_t S_A`` and ``S_{A'}/J̄_{A,t}``.

A stratum is a shift ``σ`` together with a set of columns; the degrees of the
module are covered by the translated monoids ``σ + N·span_columns`` and its
quasi-degrees by the affine spaces ``σ + C·span_columns``.  Strata are read
off standard pairs of an initial ideal, so they cover but may overlap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

from . import exact
from .diophantine import (
    jbar_generators,
    monoid_member,
    split_columns,
    visible_k_bound,
)
from .errors import ValidationError
from .groebner import (
    ideal_plus_monomials,
    initial_ideal,
    minimal_monomial_generators,
    toric_ideal,
    unit,
)
from .polyhedra import all_faces, in_cone, positive_grading

MODES = ("fourier", "gkz")


@dataclass(frozen=True)
class StandardPair:
    u: tuple[int, ...]
    F: tuple[int, ...]


@dataclass(frozen=True)
class Stratum:
    shift: tuple[int, ...]
    span_columns: tuple[int, ...]
    face_aligned: bool = False

    def to_json(self) -> dict:
        return {
            "shift": list(self.shift),
            "span_columns": list(self.span_columns),
            "face_aligned": self.face_aligned,
        }


# ---------------------------------------------------------------------------
# standard pairs


def _admissible(u, F, gens) -> bool:
    # u + N^F misses <gens> iff no generator is bounded by u off F
    return not any(all(g[j] <= u[j] for j in range(len(u)) if j not in F) for g in gens)


def _covers(big: StandardPair, small: StandardPair) -> bool:
    if not set(small.F) <= set(big.F):
        return False
    for j, (a, b) in enumerate(zip(big.u, small.u)):
        if a > b:
            return False
        if a != b and j not in big.F:
            return False
    return True


def standard_pairs(gens: Iterable[Sequence[int]], n_vars: int) -> list[StandardPair]:
    """Standard pairs of the monomial ideal generated by ``gens``.

    Every candidate ``(u, F)`` with ``supp(u) ∩ F = ∅`` and ``u_j`` below the
    largest generator exponent in ``j`` is tested; maximal admissible pairs
    are kept.
    """
    gens = minimal_monomial_generators(tuple(g) for g in gens)
    if any(not any(g) for g in gens):
        return []
    caps = [max((g[j] for g in gens), default=0) for j in range(n_vars)]
    admissible: list[StandardPair] = []
    for size in range(n_vars, -1, -1):
        for F in combinations(range(n_vars), size):
            off = [j for j in range(n_vars) if j not in F]
            if any(caps[j] == 0 for j in off):
                continue
            for vals in product(*(range(caps[j]) for j in off)):
                u = [0] * n_vars
                for j, v in zip(off, vals):
                    u[j] = v
                u = tuple(u)
                if _admissible(u, F, gens):
                    admissible.append(StandardPair(u, F))
    out = []
    for p in admissible:
        if any(q != p and _covers(q, p) for q in admissible):
            continue
        out.append(p)
    return sorted(out, key=lambda p: (p.F, p.u))


# ---------------------------------------------------------------------------
# strata


def _face_aligned(A, cols: Sequence[int]) -> bool:
    face = min((f for f in all_faces(A) if set(cols) <= set(f.columns)), key=lambda f: len(f.columns))
    span = lambda cs: exact.rank(exact.from_columns([exact.column(A, j) for j in cs])) if cs else 0
    return span(cols) == span(face.columns)


def _pairs_to_strata(pairs, M, idx) -> list[Stratum]:
    """Map pairs to strata; face alignment is judged in cone(M) on local indices."""
    F = _row_basis(M)
    out = []
    seen = set()
    for p in pairs:
        shift = exact.matvec(M, p.u)
        span = tuple(idx[j] for j in p.F)
        key = (shift, span)
        if key in seen:
            continue
        seen.add(key)
        out.append(Stratum(shift, span, _face_aligned(F, p.F)))
    return out


def _require_pointed(A):
    positive_grading(A)


def fourier_strata(A, t: int) -> list[Stratum]:
    """Strata of ``N = S_A / ∂_t S_A`` from the standard pairs of ``in(I_A + <∂_t>)``."""
    A = exact.as_int_matrix(A)
    _require_pointed(A)
    d, n = exact.shape(A)
    if not 0 <= t < n:
        raise ValidationError(f"index t={t} out of range 0..{n - 1}")
    G = ideal_plus_monomials(toric_ideal(A), [unit(t, n)])
    pairs = standard_pairs(initial_ideal(G), n)
    return _pairs_to_strata(pairs, A, list(range(n)))


def gkz_strata(A, t: int) -> list[Stratum]:
    """Strata of ``S_{A'} / J̄_{A,t}`` (degrees in ``N A'``).

    Each generator degree ``g`` of ``J̄`` is realized by the standard monomial
    of that degree in ``R_{A'}``; since graded pieces of ``S_{A'}`` are at most
    one-dimensional, ``R_{A'}/(I_{A'} + <m_g>)`` has the same degrees as the
    quotient by ``J̄``.
    """
    A = exact.as_int_matrix(A)
    _require_pointed(A)
    A_prime, a_t, idx = split_columns(A, t)
    n1 = len(idx)
    jb = jbar_generators(A, t)
    TA = toric_ideal(_row_basis(A_prime))
    mons = []
    for u in jb.witnesses:
        mons.append(TA.normal_form_monomial(u) if TA.generators else u)
    G = ideal_plus_monomials(TA, mons) if mons else TA
    pairs = standard_pairs(initial_ideal(G), n1)
    return _pairs_to_strata(pairs, A_prime, idx)


def _row_basis(M):
    """Rows of ``M`` forming a basis of its row space (same kernel, same face lattice)."""
    rows = exact.independent_columns(exact.transpose(M), range(exact.shape(M)[0]))
    return tuple(M[i] for i in rows)


# ---------------------------------------------------------------------------
# degree-set oracle


def degset_member(mode: str, A, t: int, b: Sequence[int]) -> bool:
    """Exact test whether ``b`` is a degree of the module in the given mode."""
    A = exact.as_int_matrix(A)
    w = positive_grading(A)
    b = tuple(b)
    cols = exact.columns(A)
    if mode == "fourier":
        if monoid_member(cols, b, w) is None:
            return False
        return monoid_member(cols, tuple(x - y for x, y in zip(b, cols[t])), w) is None
    if mode == "gkz":
        A_prime, a_t, _ = split_columns(A, t)
        pcols = exact.columns(A_prime)
        if monoid_member(pcols, b, w) is None:
            return False
        d = exact.shape(A)[0]
        if exact.rank(A_prime) < d:
            return True
        if in_cone(A_prime, a_t):
            return False
        kmax = visible_k_bound(A_prime, a_t, b)
        return all(
            monoid_member(pcols, tuple(x + k * y for x, y in zip(b, a_t)), w) is None
            for k in range(1, kmax + 1)
        )
    raise ValueError(f"mode must be one of {MODES}")


@dataclass
class BoxReport:
    mode: str
    radius: int
    degrees_checked: int = 0
    stratum_points_checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "radius": self.radius,
            "degrees_checked": self.degrees_checked,
            "stratum_points_checked": self.stratum_points_checked,
            "violations": list(self.violations),
            "ok": self.ok,
        }


def stratum_points(st: Stratum, A, w, radius: int) -> list[tuple[int, ...]]:
    """Points of ``σ + N·span_columns`` inside the box ``|b_i| <= radius``."""
    cols = [exact.column(A, j) for j in st.span_columns]
    wmax = sum(abs(x) for x in w) * radius
    pts = []

    def rec(i, cur):
        if i == len(cols):
            if all(abs(x) <= radius for x in cur):
                pts.append(cur)
            return
        p = cur
        while exact.dot(w, p) <= wmax:
            rec(i + 1, p)
            p = tuple(x + y for x, y in zip(p, cols[i]))

    rec(0, tuple(st.shift))
    return pts


def strata_box_check(strata: Sequence[Stratum], mode: str, A, t: int, box_radius: int = 10) -> BoxReport:
    """Compare strata with the exact degree set on a box: covering and validity."""
    A = exact.as_int_matrix(A)
    w = positive_grading(A)
    d = exact.shape(A)[0]
    rep = BoxReport(mode, box_radius)
    member = {}
    for b in product(range(-box_radius, box_radius + 1), repeat=d):
        if degset_member(mode, A, t, b):
            member[b] = True
            rep.degrees_checked += 1
            covered = False
            for st in strata:
                rest = tuple(x - y for x, y in zip(b, st.shift))
                scol = [exact.column(A, j) for j in st.span_columns]
                if not scol:
                    if not any(rest):
                        covered = True
                        break
                elif monoid_member(scol, rest, w) is not None:
                    covered = True
                    break
            if not covered:
                rep.violations.append(f"degree {b} not covered by any stratum")
    for st in strata:
        for p in stratum_points(st, A, w, box_radius):
            rep.stratum_points_checked += 1
            if not member.get(p, False):
                rep.violations.append(f"stratum {st.shift}+N{list(st.span_columns)} contains non-degree {p}")
    return rep
