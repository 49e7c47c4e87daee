"""Root bounds for b-functions of A-hypergeometric systems.

Three bounds are assembled here:

* ``fourier_bound``: roots of ``b(θ̃_t)`` for the inverse Fourier transform
  along ``y_t = 0``, read off where the line ``C·a_t`` meets ``β - qdeg(S_A/∂_t S_A)``.
* ``gkz_bound``: roots of ``b(x_t ∂_t)`` for ``M_A(β)`` along ``x_t = 0``.
* ``point_bound``: integer roots for restriction to a generic point.

Every root is an affine form in ``β`` (a :class:`ParamLinForm`).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import exact
from .diophantine import jbar_generators, min_multiple_in_semigroup, split_columns
from .errors import ValidationError
from .groebner import point_restriction_degree
from .linform import ParamLinForm, dot_forms, frac_str
from .polyhedra import cone_facets, homogeneity, in_cone, is_normal, positive_grading
from .strata import Stratum, degset_member, fourier_strata, gkz_strata

VARIABLES = ("theta_tilde_t", "x_t_del_t", "point_s")
CASES = ("fourier", "rank_drop", "a_t_in_cone", "general", "point")

_VAR_SYMBOL = {"theta_tilde_t": "θ̃", "x_t_del_t": "s", "point_s": "s"}


# ---------------------------------------------------------------------------
# validation


def validate_matrix(A, *, homogeneous: bool = False, pointed: bool = True) -> exact.IntMatrix:
    """Check the standing hypotheses on ``A`` and return it as an integer matrix.

    Checked in order: rank ``d``, ``ZA = Z^d`` (all invariant factors 1),
    pointedness of the cone, and optionally homogeneity.
    """
    A = exact.as_int_matrix(A)
    d, n = exact.shape(A)
    if d == 0 or n == 0:
        raise ValidationError("A must have at least one row and one column")
    r = exact.rank(A)
    if r != d:
        raise ValidationError(f"A must have full row rank d = {d}; rank(A) = {r}")
    inv = exact.snf(A)
    if any(x != 1 for x in inv):
        shown = ",".join(str(x) for x in inv)
        raise ValidationError(f"ZA ≠ Z^d: SNF = ({shown}); the columns must generate Z^d (requires ZA = Z^d)")
    if homogeneous and homogeneity(A) is None:
        raise ValidationError("A is not homogeneous: (1,...,1) is not in the row span of A")
    if pointed:
        positive_grading(A)
    return A


def beta_forms(beta, d: int) -> tuple[tuple[ParamLinForm, ...], bool]:
    """``(forms, symbolic)`` for ``beta`` given as None, ``"symbolic"`` or a rational vector."""
    if beta is None or (isinstance(beta, str) and beta == "symbolic"):
        return ParamLinForm.symbolic_vector(d), True
    if isinstance(beta, str):
        raise ValidationError(f"beta must be 'symbolic' or a rational vector, got {beta!r}")
    vals = list(beta)
    if len(vals) != d:
        raise ValidationError(f"beta has length {len(vals)}, expected d = {d}")
    return ParamLinForm.rational_vector(vals), False


# ---------------------------------------------------------------------------
# result type


@dataclass
class RootBound:
    """A set of candidate roots for a b-function in a declared variable.

    ``certificate`` lists one root per contributing stratum (with repeats);
    the product of the corresponding linear factors is a multiple of the
    b-function, multiplicities not claimed.
    """

    variable: str
    roots: tuple[ParamLinForm, ...] = ()
    integer_roots: tuple[int, ...] = ()
    flags: list[str] = field(default_factory=list)
    certificate: tuple[ParamLinForm, ...] = ()
    case: str = "fourier"
    k_reported: int | None = None
    K_reported: int | None = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ValueError(f"variable must be one of {VARIABLES}")
        self.roots = _dedup(self.roots)
        self.integer_roots = tuple(sorted(set(self.integer_roots)))

    @property
    def root_set(self) -> frozenset[ParamLinForm]:
        return frozenset(self.roots)

    def all_roots(self) -> tuple[ParamLinForm, ...]:
        """Symbolic roots together with the integer roots (as constant forms)."""
        if not self.roots and not self.integer_roots:
            return ()
        d = self.roots[0].dim if self.roots else self.metadata.get("d", 0)
        ints = tuple(ParamLinForm.constant(k, d) for k in self.integer_roots)
        return _dedup(self.roots + ints)

    def evaluate(self, beta0: Sequence) -> frozenset[Fraction]:
        return frozenset(r.evaluate(beta0) for r in self.roots)

    def certificate_text(self) -> str:
        x = _VAR_SYMBOL[self.variable]
        factors = [_factor(x, r) for r in self.certificate]
        factors += [_factor(x, ParamLinForm.constant(k, 1)) for k in self.integer_roots]
        return "*".join(factors) if factors else "1"

    def to_json(self) -> dict:
        return {
            "variable": self.variable,
            "case": self.case,
            "roots": [r.to_json() for r in self.roots],
            "integer_roots": list(self.integer_roots),
            "flags": list(self.flags),
            "certificate": {
                "factors": [r.to_json() for r in self.certificate],
                "integer_roots": list(self.integer_roots),
                "text": self.certificate_text(),
            },
            "k_reported": self.k_reported,
            "K_reported": self.K_reported,
        }

    def format(self) -> str:
        lines = [f"variable: {self.variable}", f"case: {self.case}"]
        lines.append("roots: " + (", ".join(str(r) for r in self.roots) if self.roots else "(none)"))
        if self.integer_roots or self.case != "fourier":
            ints = ", ".join(str(k) for k in self.integer_roots)
            lines.append(f"integer roots: {{{ints}}}")
        if self.k_reported is not None:
            lines.append(f"k: {self.k_reported}")
        if self.K_reported is not None:
            lines.append(f"K: {self.K_reported}")
        if self.flags:
            lines.append("flags: " + ", ".join(self.flags))
        lines.append("certificate: " + self.certificate_text())
        return "\n".join(lines)


def _dedup(forms: Sequence[ParamLinForm]) -> tuple[ParamLinForm, ...]:
    return tuple(sorted(set(forms), key=lambda f: f.sort_key()))


def _factor(x: str, r: ParamLinForm) -> str:
    if r.is_zero():
        return x
    neg = -r
    if neg.is_constant():
        c = neg.const
        return f"({x} + {frac_str(c)})" if c > 0 else f"({x} - {frac_str(-c)})"
    inner = str(r)
    plain = " " not in inner and "/" not in inner and not inner.startswith("-")
    return f"({x} - {inner})" if plain else f"({x} - ({inner}))"


# ---------------------------------------------------------------------------
# stratum intersections


def _line_meets_stratum(A, a_t, st: Stratum, beta: Sequence[ParamLinForm]):
    """Solve ``β - σ - s a_t ∈ span(A_S)`` for ``s``.

    Returns the solve outcome of the system ``[a_t | B] (s, x) = β - σ`` with
    ``B`` a column basis of ``span(A_S)``.
    """
    basis = exact.independent_columns(A, st.span_columns) if st.span_columns else []
    cols = [tuple(a_t)] + [exact.column(A, j) for j in basis]
    M = exact.from_columns(cols)
    d = len(beta)
    rhs = [beta[i] - ParamLinForm.constant(st.shift[i], beta[i].dim) for i in range(d)]
    return exact.solve_param(M, rhs)


def _intersect_strata(A, a_t, strata, beta, symbolic, flags, certificate):
    roots = []
    sym = ParamLinForm.symbolic_vector(len(beta))
    for st in strata:
        out = _line_meets_stratum(A, a_t, st, beta)
        if isinstance(out, exact.UniqueSolution):
            roots.append(out.values[0])
            certificate.append(out.values[0])
            if not symbolic:
                generic = _line_meets_stratum(A, a_t, st, sym)
                if isinstance(generic, exact.InconsistentForGenericBeta):
                    _flag(flags, "conditional_root_realized")
        elif isinstance(out, exact.SolvableWithFreedom):
            _flag(flags, "degenerate_whole_line")
        elif isinstance(out, exact.InconsistentForGenericBeta):
            _flag(flags, "conditional_roots_omitted")
    return roots


def _flag(flags: list[str], name: str):
    if name not in flags:
        flags.append(name)


def _check_t(A, t):
    n = exact.shape(A)[1]
    if not isinstance(t, int) or not 0 <= t < n:
        raise ValidationError(f"t must be a column index in 0..{n - 1}, got {t!r}")


# ---------------------------------------------------------------------------
# the bounds


def fourier_bound(A, beta=None, t: int = 0) -> RootBound:
    """Candidate roots of ``b(θ̃_t)`` for the inverse Fourier transform of ``M_A(β)``."""
    A = validate_matrix(A)
    _check_t(A, t)
    d = exact.shape(A)[0]
    bvec, symbolic = beta_forms(beta, d)
    strata = fourier_strata(A, t)
    flags: list[str] = []
    cert: list[ParamLinForm] = []
    roots = _intersect_strata(A, exact.column(A, t), strata, bvec, symbolic, flags, cert)
    if not strata:
        _flag(flags, "empty_module")
    return RootBound(
        "theta_tilde_t",
        tuple(roots),
        (),
        flags,
        tuple(cert),
        "fourier",
        metadata={"d": d, "t": t, "strata": strata, "symbolic": symbolic},
    )


def gkz_bound(A, beta=None, t: int = 0) -> RootBound:
    """Candidate roots of ``b(x_t ∂_t)`` for ``M_A(β)`` along ``x_t = 0``."""
    A = validate_matrix(A)
    _check_t(A, t)
    d = exact.shape(A)[0]
    bvec, symbolic = beta_forms(beta, d)
    A_prime, a_t, _ = split_columns(A, t)
    meta = {"d": d, "t": t, "symbolic": symbolic}

    if exact.rank(A_prime) < d:
        # E_v - v·β with v·A' = 0 and v·a_t = 1 reduces to x_t ∂_t - v·β
        M = exact.from_columns(exact.columns(A_prime) + [tuple(a_t)])
        rhs = [0] * (exact.shape(M)[1] - 1) + [1]
        v = exact.solve_rational(exact.transpose(M), rhs)
        root = dot_forms(v, bvec)
        meta["v"] = v
        return RootBound("x_t_del_t", (root,), (), [], (root,), "rank_drop", metadata=meta)

    if in_cone(A_prime, a_t):
        k = min_multiple_in_semigroup(A_prime, a_t)
        meta["jbar"] = jbar_generators(A, t)
        return RootBound(
            "x_t_del_t", (), tuple(range(k)), [], (), "a_t_in_cone", k_reported=k, metadata=meta
        )

    jb = jbar_generators(A, t)
    strata = gkz_strata(A, t)
    flags: list[str] = []
    cert: list[ParamLinForm] = []
    roots = _intersect_strata(A, a_t, strata, bvec, symbolic, flags, cert)
    if not strata:
        _flag(flags, "empty_module")
    meta.update(jbar=jb, strata=strata)
    return RootBound(
        "x_t_del_t",
        tuple(roots),
        tuple(range(jb.K)),
        flags,
        tuple(cert),
        "general",
        K_reported=jb.K,
        metadata=meta,
    )


def point_bound(A, seed: int = 0, retries: int = 5) -> RootBound:
    """Integer roots ``{0, ..., k-1}`` for restriction of ``M_A(β)`` to a generic point."""
    A = exact.as_int_matrix(A)
    if homogeneity(A) is None:
        raise ValidationError("A is not homogeneous: (1,...,1) is not in the row span of A")
    A = validate_matrix(A, homogeneous=True)
    d = exact.shape(A)[0]
    k = point_restriction_degree(A, seed=seed, retries=retries)
    normal = is_normal(A)
    meta = {"d": d, "normal": normal, "seed": seed}
    flags = []
    if normal:
        meta["normal_bound"] = d
        if k > d:
            raise AssertionError(f"normal semigroup but k = {k} exceeds d = {d}")
        flags.append("normal_bound_d")
    return RootBound("point_s", (), tuple(range(k)), flags, (), "point", k_reported=k, metadata=meta)


# ---------------------------------------------------------------------------
# conventions


def convert_convention(rb: RootBound, target: str) -> RootBound:
    """Switch between ``b(θ̃_t)`` and ``b(y_t δ_t)``: each root ``ε`` becomes ``-(ε + 1)``.

    The map is an involution, so the same rule applies in both directions.
    """
    pair = {"theta_tilde_t": "x_t_del_t", "x_t_del_t": "theta_tilde_t"}
    if rb.case != "fourier" or pair.get(rb.variable) != target:
        raise ValueError(f"unsupported conversion {rb.variable} -> {target} for case {rb.case}")
    one = lambda r: -(r + ParamLinForm.constant(1, r.dim))
    return replace(
        rb,
        variable=target,
        roots=tuple(one(r) for r in rb.roots),
        certificate=tuple(one(r) for r in rb.certificate),
        flags=list(rb.flags),
        metadata=dict(rb.metadata),
    )


# ---------------------------------------------------------------------------
# properties at β = 0


@dataclass
class CorollaryReport:
    """Sign and interval properties of the Fourier bound at ``β = 0``.

    ``theta_roots`` are the bound's roots in ``θ̃_t``.  ``line_values`` are the
    ``ε`` with ``ε a_t ∈ qdeg(S_A/∂_t S_A)``, i.e. the roots in ``δ_t y_t = -θ̃_t``;
    the non-negativity and interval claims are checked on these.
    """

    theta_roots: tuple[Fraction, ...]
    line_values: tuple[Fraction, ...]
    rational: bool
    nonnegative: bool
    normal: bool
    in_unit_interval: bool | None
    interior_in_del_t: bool
    interior_box_agrees: bool
    only_zero: bool | None
    theta_nonnegative: bool

    @property
    def ok(self) -> bool:
        return (
            self.rational
            and self.nonnegative
            and self.in_unit_interval is not False
            and self.only_zero is not False
            and self.interior_box_agrees
        )

    def to_json(self) -> dict:
        fs = lambda xs: [frac_str(x) for x in xs]
        return {
            "theta_roots": fs(self.theta_roots),
            "line_values": fs(self.line_values),
            "rational": self.rational,
            "nonnegative": self.nonnegative,
            "normal": self.normal,
            "in_unit_interval": self.in_unit_interval,
            "interior_in_del_t": self.interior_in_del_t,
            "interior_box_agrees": self.interior_box_agrees,
            "only_zero": self.only_zero,
            "theta_nonnegative": self.theta_nonnegative,
            "ok": self.ok,
        }


def _stratum_on_boundary(A, st: Stratum, facets) -> bool:
    # σ + N·S misses the interior iff one facet contains σ and every column of S
    return any(
        exact.dot(f.functional, st.shift) == 0
        and all(exact.dot(f.functional, exact.column(A, j)) == 0 for j in st.span_columns)
        for f in facets
    )


def interior_in_del_t(A, t: int, strata=None) -> bool:
    """Whether the interior ideal of ``S_A`` lies in ``∂_t S_A``.

    Equivalent to every degree of ``S_A/∂_t S_A`` lying on the boundary of
    the cone, which is decided stratum by stratum.
    """
    A = exact.as_int_matrix(A)
    facets = cone_facets(A)
    strata = fourier_strata(A, t) if strata is None else strata
    return all(_stratum_on_boundary(A, st, facets) for st in strata)


def _interior_box(A, t: int, radius: int) -> bool:
    facets = cone_facets(A)
    d = exact.shape(A)[0]
    for b in product(range(-radius, radius + 1), repeat=d):
        if all(exact.dot(f.functional, b) > 0 for f in facets) and degset_member("fourier", A, t, b):
            return False
    return True


def corollary_check(A, t: int, box_radius: int = 6) -> CorollaryReport:
    """Evaluate the Fourier bound at ``β = 0`` and test its sign properties."""
    A = validate_matrix(A)
    d = exact.shape(A)[0]
    rb = fourier_bound(A, [0] * d, t)
    theta = tuple(sorted(r.const for r in rb.roots))
    eps = tuple(sorted(-x for x in theta))
    normal = is_normal(A)
    interior = interior_in_del_t(A, t, rb.metadata["strata"])
    box = _interior_box(A, t, box_radius)
    return CorollaryReport(
        theta_roots=theta,
        line_values=eps,
        rational=all(r.is_constant() for r in rb.roots),
        nonnegative=all(x >= 0 for x in eps),
        normal=normal,
        in_unit_interval=all(0 <= x < 1 for x in eps) if normal else None,
        interior_in_del_t=interior,
        interior_box_agrees=(interior == box) if interior else True,
        only_zero=(set(eps) <= {0}) if interior else None,
        theta_nonnegative=all(x >= 0 for x in theta),
    )
