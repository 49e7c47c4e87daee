"""Commutative Gröbner bases over Q in the variables ``∂_0, ..., ∂_n``.

Two engines share one interface.  Pure binomial/monomial input (toric
ideals, ``I_A + <∂_t>``, ``I_A' + <m>``) runs on a sign-only representation
where reduction maps monomials to monomials.  Anything else, such as the
random linear sections used for restriction to a point, goes through the
general rational engine.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from . import exact
from .errors import GenericityError, ValidationError
from .linform import frac_str
from .polyhedra import homogeneity, is_pointed, positive_grading

Exp = tuple[int, ...]

# ---------------------------------------------------------------------------
# term orders


@dataclass(frozen=True)
class TermOrder:
    """A monomial order given by a sort key; larger key means larger monomial.

    ``grevlex``/``grlex``/``lex`` compare with ``∂_0 > ∂_1 > ... > ∂_n``.
    ``wrevlex`` grades by ``weights`` and breaks ties by reverse lex with
    variable ``last`` smallest; it is the order used to saturate by ``last``.
    ``elim`` compares the exponent of ``last`` first, then grevlex.
    """

    name: str = "grevlex"
    weights: tuple[int, ...] | None = None
    last: int | None = None

    def key(self, e: Exp):
        if self.name == "grevlex":
            return (sum(e), tuple(-x for x in reversed(e)))
        if self.name == "grlex":
            return (sum(e), e)
        if self.name == "lex":
            return e
        if self.name == "wrevlex":
            w = self.weights
            deg = sum(a * b for a, b in zip(w, e))
            tail = tuple(-e[j] for j in range(len(e)) if j != self.last)
            return (deg, -e[self.last], tail[::-1])
        if self.name == "elim":
            return (e[self.last], sum(e), tuple(-x for x in reversed(e)))
        raise ValueError(f"unknown term order {self.name!r}")


ORDERS = ("grevlex", "grlex", "lex")


def term_order(order: str | TermOrder) -> TermOrder:
    if isinstance(order, TermOrder):
        return order
    if order not in ORDERS:
        raise ValueError(f"unknown term order {order!r}; choose from {ORDERS}")
    return TermOrder(order)


def divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm_exp(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def unit(i: int, n: int) -> Exp:
    return tuple(int(j == i) for j in range(n))


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Sparse polynomial with rational coefficients: a map exponent -> coefficient."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict | Iterable = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, dict) else terms
        clean: dict[Exp, Fraction] = {}
        for e, c in items:
            e = tuple(e)
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean
        if nvars is None:
            nvars = len(next(iter(clean))) if clean else 0
        self.nvars = nvars

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "Poly":
        return cls({tuple(e): c}, len(e))

    @classmethod
    def binomial(cls, a: Sequence[int], b: Sequence[int]) -> "Poly":
        return cls({tuple(a): 1, tuple(b): -1} if tuple(a) != tuple(b) else {}, len(a))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self, order="grevlex") -> list[tuple[Fraction, Exp]]:
        key = term_order(order).key
        return [(self.terms[e], e) for e in sorted(self.terms, key=key, reverse=True)]

    def lead(self, order="grevlex") -> Exp:
        return max(self.terms, key=term_order(order).key)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous_for(self, A) -> bool:
        degs = {exact.matvec(A, e) for e in self.terms}
        return len(degs) <= 1

    def __sub__(self, other: "Poly") -> "Poly":
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) - c
        return Poly(t, self.nvars)

    def __add__(self, other: "Poly") -> "Poly":
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return Poly(t, self.nvars)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Poly({self.format()})"

    def format(self, order="grevlex", var="d") -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (c, e) in enumerate(self.sorted_terms(order)):
            mono = "*".join(
                (f"{var}{j}" if k == 1 else f"{var}{j}^{k}") for j, k in enumerate(e) if k
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{frac_str(mag)}*{mono}"
            else:
                body = frac_str(mag)
            sign = "-" if c < 0 else "+"
            out.append(("-" if c < 0 else "") + body if i == 0 else f" {sign} {body}")
        return "".join(out)

    def to_json(self, order="grevlex") -> list[dict]:
        return [{"coeff": frac_str(c), "exps": list(e)} for c, e in self.sorted_terms(order)]

    @classmethod
    def from_json(cls, data: list[dict]) -> "Poly":
        return cls({tuple(t["exps"]): Fraction(t["coeff"]) for t in data})

    def binomial_shape(self, order) -> tuple[Exp, Exp | None] | None:
        """``(lead, trail)`` if this is ``c(x^a - x^b)`` or ``(a, None)`` for ``c x^a``."""
        if len(self.terms) == 1:
            (e,) = self.terms
            return (e, None)
        if len(self.terms) == 2:
            (e1, c1), (e2, c2) = self.terms.items()
            if c1 == -c2:
                key = term_order(order).key
                return (e1, e2) if key(e1) > key(e2) else (e2, e1)
        return None


# ---------------------------------------------------------------------------
# Gröbner basis container


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[Poly, ...]
    order: TermOrder
    reduced: bool = True
    nvars: int = 0

    def leading_monomials(self) -> list[Exp]:
        return [g.lead(self.order) for g in self.generators]

    def is_binomial(self) -> bool:
        return all(g.binomial_shape(self.order) is not None for g in self.generators)

    def binomials(self):
        return [g.binomial_shape(self.order) for g in self.generators]

    def normal_form_monomial(self, e: Exp) -> Exp | None:
        """Standard monomial congruent to ``∂^e`` (binomial bases only); None means 0."""
        return _nf_mono(tuple(e), self.binomials())

    def to_json(self) -> list[list[dict]]:
        return [g.to_json(self.order) for g in self.generators]


# ---------------------------------------------------------------------------
# binomial engine

Binom = tuple[Exp, "Exp | None"]


def _nf_mono(e: Exp, G: Sequence[Binom]) -> Exp | None:
    while True:
        for lead, trail in G:
            if divides(lead, e):
                if trail is None:
                    return None
                e = tuple(x - a + b for x, a, b in zip(e, lead, trail))
                break
        else:
            return e


def _bnorm(a: Exp | None, b: Exp | None, key) -> Binom | None:
    if a is None and b is None:
        return None
    if a is None:
        return (b, None)
    if b is None:
        return (a, None)
    if a == b:
        return None
    return (a, b) if key(a) > key(b) else (b, a)


def _spoly_binom(f: Binom, g: Binom) -> tuple[Exp | None, Exp | None]:
    l = lcm_exp(f[0], g[0])

    def shift(p: Binom):
        if p[1] is None:
            return None
        return tuple(x - a + b for x, a, b in zip(l, p[0], p[1]))

    return shift(f), shift(g)


def _coprime(a: Exp, b: Exp) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _pair_queue(G_leads, key):
    """Initial pair heap keyed on the order of the lcm; ties by indices."""
    heap = []
    for j in range(len(G_leads)):
        for i in range(j):
            l = lcm_exp(G_leads[i], G_leads[j])
            heap.append((key(l), i, j))
    heapq.heapify(heap)
    return heap


def _chain_skip(i, j, leads, done) -> bool:
    l = lcm_exp(leads[i], leads[j])
    for k in range(len(leads)):
        if k in (i, j) or leads[k] is None:
            continue
        if divides(leads[k], l):
            if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
                return True
    return False


def binomial_buchberger(gens: Iterable[Binom], order: TermOrder) -> list[Binom]:
    """Reduced Gröbner basis of an ideal generated by monic binomials and monomials."""
    key = order.key
    G: list[Binom | None] = []
    for a, b in gens:
        nb = _bnorm(a, b, key)
        if nb is not None:
            G.append(nb)
    G = [g for g in G if g is not None]
    if any(not any(g[0]) for g in G):
        n = len(G[0][0])
        return [((0,) * n, None)]
    leads = [g[0] for g in G]
    heap = _pair_queue(leads, key)
    done: set[tuple[int, int]] = set()
    while heap:
        _, i, j = heapq.heappop(heap)
        done.add((i, j))
        fi, fj = G[i], G[j]
        if fi is None or fj is None:
            continue
        if _coprime(fi[0], fj[0]):
            continue
        if _chain_skip(i, j, leads, done):
            continue
        if fi[1] is None and fj[1] is None:
            continue
        s1, s2 = _spoly_binom(fi, fj)
        live = [g for g in G if g is not None]
        r1 = _nf_mono(s1, live) if s1 is not None else None
        r2 = _nf_mono(s2, live) if s2 is not None else None
        h = _bnorm(r1, r2, key)
        if h is None:
            continue
        if not any(h[0]):
            return [(h[0], None)]
        G.append(h)
        leads.append(h[0])
        k = len(G) - 1
        for m in range(k):
            if G[m] is not None:
                heapq.heappush(heap, (key(lcm_exp(leads[m], h[0])), m, k))
    return _interreduce_binom([g for g in G if g is not None], key)


def _interreduce_binom(G: list[Binom], key) -> list[Binom]:
    G = sorted(set(G), key=lambda g: key(g[0]))
    minimal: list[Binom] = []
    for g in G:
        if any(divides(h[0], g[0]) for h in minimal):
            continue
        minimal = [h for h in minimal if not divides(g[0], h[0])] + [g]
    out = []
    for idx, (lead, trail) in enumerate(minimal):
        others = [h for k, h in enumerate(minimal) if k != idx]
        if trail is not None:
            trail = _nf_mono(trail, others)
        out.append((lead, trail))
    return sorted(out, key=lambda g: key(g[0]), reverse=True)


def _binom_to_poly(g: Binom, n: int) -> Poly:
    lead, trail = g
    if trail is None:
        return Poly.monomial(lead)
    return Poly.binomial(lead, trail)


# ---------------------------------------------------------------------------
# general rational engine


def _reduce_full(f: dict, G: Sequence[tuple[Exp, Fraction, dict]], key) -> dict:
    f = dict(f)
    out: dict[Exp, Fraction] = {}
    while f:
        e = max(f, key=key)
        c = f[e]
        for lead, lc, g in G:
            if divides(lead, e):
                q = c / lc
                s = tuple(x - y for x, y in zip(e, lead))
                for ge, gc in g.items():
                    te = tuple(a + b for a, b in zip(ge, s))
                    v = f.get(te, Fraction(0)) - q * gc
                    if v:
                        f[te] = v
                    else:
                        f.pop(te, None)
                break
        else:
            out[e] = c
            del f[e]
    return out


def _monic(f: dict, key) -> tuple[Exp, Fraction, dict]:
    e = max(f, key=key)
    c = f[e]
    g = {k: v / c for k, v in f.items()}
    return (e, Fraction(1), g)


def _general_buchberger(polys: Sequence[Poly], order: TermOrder, n: int) -> list[dict]:
    key = order.key
    G: list[tuple[Exp, Fraction, dict] | None] = []
    for p in polys:
        if p.terms:
            G.append(_monic(p.terms, key))
    leads = [g[0] for g in G]
    heap = _pair_queue(leads, key)
    done: set[tuple[int, int]] = set()
    while heap:
        _, i, j = heapq.heappop(heap)
        done.add((i, j))
        gi, gj = G[i], G[j]
        if gi is None or gj is None:
            continue
        if _coprime(gi[0], gj[0]) or _chain_skip(i, j, leads, done):
            continue
        l = lcm_exp(gi[0], gj[0])
        s: dict[Exp, Fraction] = {}
        for (lead, _, g), sign in ((gi, 1), (gj, -1)):
            sh = tuple(x - y for x, y in zip(l, lead))
            for ge, gc in g.items():
                te = tuple(a + b for a, b in zip(ge, sh))
                v = s.get(te, Fraction(0)) + sign * gc
                if v:
                    s[te] = v
                else:
                    s.pop(te, None)
        live = [g for g in G if g is not None]
        r = _reduce_full(s, live, key)
        if not r:
            continue
        h = _monic(r, key)
        if not any(h[0]):
            return [{(0,) * n: Fraction(1)}]
        G.append(h)
        leads.append(h[0])
        k = len(G) - 1
        for m in range(k):
            if G[m] is not None:
                heapq.heappush(heap, (key(lcm_exp(leads[m], h[0])), m, k))
    # reduce
    live = sorted((g for g in G if g is not None), key=lambda g: key(g[0]))
    minimal = []
    for g in live:
        if any(divides(h[0], g[0]) for h in minimal):
            continue
        minimal = [h for h in minimal if not divides(g[0], h[0])] + [g]
    out = []
    for idx, g in enumerate(minimal):
        others = [h for k, h in enumerate(minimal) if k != idx]
        out.append(_reduce_full(g[2], others, key))
    return sorted(out, key=lambda f: key(max(f, key=key)), reverse=True)


def buchberger(gens: Sequence[Poly], order: str | TermOrder = "grevlex") -> GroebnerBasis:
    """Reduced Gröbner basis; monic binomial/monomial input takes the sign-only path."""
    order = term_order(order)
    gens = [g for g in gens if not g.is_zero()]
    n = gens[0].nvars if gens else 0
    shapes = [g.binomial_shape(order) for g in gens]
    if all(s is not None for s in shapes):
        for g, s in zip(gens, shapes):
            if s[1] is not None:
                assert abs(g.terms[s[0]]) == abs(g.terms[s[1]])
        G = binomial_buchberger(shapes, order)
        return GroebnerBasis(tuple(_binom_to_poly(g, n) for g in G), order, True, n)
    G = _general_buchberger(gens, order, n)
    return GroebnerBasis(tuple(Poly(g, n) for g in G), order, True, n)


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    """Fully reduced remainder of ``f`` modulo ``G``."""
    if f.is_zero():
        return Poly({}, f.nvars)
    key = G.order.key
    gs = [_monic(g.terms, key) for g in G.generators]
    return Poly(_reduce_full(f.terms, gs, key), f.nvars)


def minimal_monomial_generators(exps: Iterable[Exp]) -> list[Exp]:
    exps = sorted(set(tuple(e) for e in exps), key=lambda e: (sum(e), e))
    out: list[Exp] = []
    for e in exps:
        if not any(divides(g, e) for g in out):
            out.append(e)
    return out


def initial_ideal(G: GroebnerBasis) -> list[Exp]:
    return minimal_monomial_generators(G.leading_monomials())


# ---------------------------------------------------------------------------
# toric ideals


def lattice_binomials(A) -> list[Binom]:
    out = []
    for v in exact.kernel_basis(A):
        plus = tuple(max(0, x) for x in v)
        minus = tuple(max(0, -x) for x in v)
        out.append((plus, minus))
    return out


def _divide_out(g: Binom, i: int) -> Binom:
    lead, trail = g
    k = lead[i] if trail is None else min(lead[i], trail[i])

    def cut(e):
        return e[:i] + (e[i] - k,) + e[i + 1 :]

    return (cut(lead), None if trail is None else cut(trail))


@lru_cache(maxsize=256)
def _toric_cached(A: exact.IntMatrix, order: TermOrder) -> tuple[Binom, ...]:
    d, n = exact.shape(A)
    gens = lattice_binomials(A)
    if not gens:
        return ()
    if is_pointed(A) and all(any(a) for a in exact.columns(A)):
        w = positive_grading(A)
        weights = tuple(exact.dot(w, a) for a in exact.columns(A))
        for i in range(n):
            G = binomial_buchberger(gens, TermOrder("wrevlex", weights, i))
            gens = [_divide_out(g, i) for g in G]
    else:
        # no positive grading: saturate through an auxiliary variable y with x_i*y - 1
        for i in range(n):
            ext = [(a + (0,), None if b is None else b + (0,)) for a, b in gens]
            ext.append((unit(i, n) + (1,), (0,) * (n + 1)))
            G = binomial_buchberger(ext, TermOrder("elim", None, n))
            gens = [
                (a[:n], None if b is None else b[:n])
                for a, b in G
                if a[n] == 0 and (b is None or b[n] == 0)
            ]
    return tuple(binomial_buchberger(gens, order))


def toric_ideal(A, order: str | TermOrder = "grevlex") -> GroebnerBasis:
    """Reduced Gröbner basis of ``I_A``: the lattice-basis ideal saturated by every variable."""
    A = exact.as_int_matrix(A)
    d, n = exact.shape(A)
    if exact.rank(A) != d:
        raise ValidationError(f"A must have rank d = {d}")
    order = term_order(order)
    G = _toric_cached(A, order)
    return GroebnerBasis(tuple(_binom_to_poly(g, n) for g in G), order, True, n)


def ideal_plus_monomials(G: GroebnerBasis, monomials: Iterable[Exp]) -> GroebnerBasis:
    """Gröbner basis of ``<G> + <monomials>`` on the binomial path."""
    gens = G.binomials() + [(tuple(m), None) for m in monomials]
    B = binomial_buchberger(gens, G.order)
    return GroebnerBasis(tuple(_binom_to_poly(g, G.nvars) for g in B), G.order, True, G.nvars)


# ---------------------------------------------------------------------------
# Hilbert series of monomial quotients (standard grading)


def _pmul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _padd(p: list[int], q: list[int]) -> list[int]:
    out = [0] * max(len(p), len(q))
    for i, a in enumerate(p):
        out[i] += a
    for i, b in enumerate(q):
        out[i] += b
    return out


def _ptrim(p: list[int]) -> list[int]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


@lru_cache(maxsize=100_000)
def _hs_numerator(gens: frozenset) -> tuple[int, ...]:
    gens = minimal_monomial_generators(gens)
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return (0,)
    n = len(gens[0])
    counts = [sum(1 for g in gens if g[j]) for j in range(n)]
    if max(counts) <= 1:
        out = [1]
        for g in gens:
            out = _pmul(out, [1] + [0] * (sum(g) - 1) + [-1])
        return tuple(_ptrim(out))
    j = max(range(n), key=lambda v: (counts[v], -v))
    xj = unit(j, n)
    plus = frozenset(g for g in gens if not g[j]) | {xj}
    colon = frozenset(g[:j] + (max(0, g[j] - 1),) + g[j + 1 :] for g in gens)
    left = list(_hs_numerator(plus))
    right = [0] + list(_hs_numerator(colon))
    return tuple(_ptrim(_padd(left, right)))


def hilbert_series_monomial(gens: Iterable[Sequence[int]], n_vars: int) -> tuple[int, ...]:
    """Numerator ``P(t)`` (low degree first) with ``HS(R/I) = P(t) / (1-t)^n_vars``.

    Uses the pivot split ``P(I) = P(I + <x_j>) + t * P(I : x_j)``.
    """
    gens = [tuple(g) for g in gens]
    if any(len(g) != n_vars for g in gens):
        raise ValueError("generator length does not match n_vars")
    return _hs_numerator(frozenset(gens))


def divide_by_one_minus_t(P: Sequence[int], r: int) -> tuple[int, ...]:
    """Exact quotient ``P(t) / (1-t)^r``; raises if it is not a polynomial."""
    p = list(P)
    for _ in range(r):
        # synthetic division by (1 - t): q_i = sum_{k<=i} p_k
        q = []
        acc = 0
        for c in p:
            acc += c
            q.append(acc)
        if q[-1] != 0:
            raise ValueError("numerator not divisible by (1-t)")
        p = q[:-1] or [0]
    return tuple(_ptrim(p))


def hilbert_coefficients(P: Sequence[int], n_vars: int, up_to: int) -> list[int]:
    """Coefficients of ``P(t)/(1-t)^n_vars`` up to ``t^up_to``."""
    from math import comb

    out = []
    for m in range(up_to + 1):
        out.append(
            sum(c * comb(m - i + n_vars - 1, n_vars - 1) for i, c in enumerate(P) if i <= m)
            if n_vars
            else (P[m] if m < len(P) else 0)
        )
    return out


def standard_monomials_by_degree(gens: Sequence[Exp], n_vars: int, up_to: int) -> list[int]:
    """Brute-force count of monomials outside ``<gens>`` in each degree."""
    counts = [0] * (up_to + 1)
    for e in product(range(up_to + 1), repeat=n_vars):
        s = sum(e)
        if s <= up_to and not any(divides(g, e) for g in gens):
            counts[s] += 1
    return counts


# ---------------------------------------------------------------------------
# restriction to a generic point


def _finite_standard_monomials(leads: Sequence[Exp], n: int) -> list[Exp] | None:
    caps = []
    for j in range(n):
        pure = [g[j] for g in leads if all(g[k] == 0 for k in range(n) if k != j) and g[j] > 0]
        if not pure:
            return None
        caps.append(min(pure))
    return [e for e in product(*(range(c) for c in caps)) if not any(divides(g, e) for g in leads)]


def generic_section_quotient(A, p: Sequence[int]) -> list[int] | None:
    """Hilbert function of ``R_A / (I_A, A·diag(p)·∂)``; None if not of finite length."""
    A = exact.as_int_matrix(A)
    d, n = exact.shape(A)
    TA = toric_ideal(A)
    forms = [
        Poly({unit(j, n): A[i][j] * p[j] for j in range(n) if A[i][j]}, n) for i in range(d)
    ]
    G = buchberger(list(TA.generators) + forms, TA.order)
    std = _finite_standard_monomials(G.leading_monomials(), n)
    if std is None:
        return None
    top = max(sum(e) for e in std)
    hf = [0] * (top + 1)
    for e in std:
        hf[sum(e)] += 1
    return hf


def point_restriction_degree(A, seed: int = 0, retries: int = 5) -> int:
    """``k`` such that the point-restriction b-function divides ``s(s-1)...(s-k+1)``.

    ``k - 1`` is the top degree in which ``R_A/(I_A, A·diag(p)·∂)`` is nonzero
    for a random diagonal ``p``.  Two independently seeded draws must give a
    finite-length quotient with the same Hilbert function.
    """
    A = exact.as_int_matrix(A)
    d, n = exact.shape(A)
    if homogeneity(A) is None:
        raise ValidationError("A must be homogeneous: (1,...,1) must lie in the row span of A")
    if exact.rank(A) != d:
        raise ValidationError(f"A must have rank d = {d}")
    for attempt in range(retries):
        draws = []
        for tag in ("a", "b"):
            rng = random.Random(f"{seed}/{attempt}/{tag}")
            p = [rng.randint(1, 2**16) for _ in range(n)]
            draws.append(generic_section_quotient(A, p))
        if draws[0] is not None and draws[0] == draws[1]:
            return len(draws[0])
    raise GenericityError(
        f"generic linear sections failed after {retries} attempts "
        "(quotient not of finite length or seeds disagree)"
    )
