"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples.  Integer matrices hold ``int`` entries,
rational ones ``Fraction``.  Nothing in here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .linform import ParamLinForm, to_fraction

IntMatrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]


# ---------------------------------------------------------------------------
# basic helpers


def as_int_matrix(rows) -> IntMatrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if not out or not out[0]:
        raise ValueError("matrix must be nonempty")
    width = len(out[0])
    if any(len(r) != width for r in out):
        raise ValueError("ragged matrix")
    for row, orig in zip(out, rows):
        for x, y in zip(row, orig):
            if isinstance(y, bool) or x != y:
                raise ValueError(f"non-integer entry {y!r}")
    return out


def shape(M) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def transpose(M):
    if not M:
        return ()
    return tuple(zip(*M))


def column(M, j: int) -> tuple:
    return tuple(row[j] for row in M)


def columns(M) -> list[tuple]:
    return [column(M, j) for j in range(shape(M)[1])]


def from_columns(cols: Sequence[Sequence], nrows: int | None = None):
    cols = [tuple(c) for c in cols]
    if not cols:
        return tuple(() for _ in range(nrows or 0))
    return tuple(zip(*cols))


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def clear_denominators(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector, made primitive."""
    den = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    return primitive(tuple(int(Fraction(x) * den) for x in v))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) = x*a + y*b`` and ``g >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# fraction-free elimination


def bareiss_echelon(M: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free row echelon form.

    Returns ``(E, pivots, sign)`` where ``E`` is an integer echelon matrix,
    ``pivots`` the pivot columns and ``sign`` the parity of row swaps.  Every
    intermediate entry is a minor of ``M``, which keeps growth in check.
    """
    E = [list(r) for r in M]
    m, n = shape(E)
    pivots: list[int] = []
    prev = 1
    r = 0
    sign = 1
    for c in range(n):
        if r >= m:
            break
        p = next((i for i in range(r, m) if E[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            E[r], E[p] = E[p], E[r]
            sign = -sign
        piv = E[r][c]
        for i in range(r + 1, m):
            f = E[i][c]
            for j in range(c, n):
                E[i][j] = (piv * E[i][j] - f * E[r][j]) // prev
            for j in range(c):
                E[i][j] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return E, pivots, sign


def _integerize_rows(M) -> list[list[int]]:
    out = []
    for row in M:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * den) for x in row])
    return out


def rank(M) -> int:
    if not M or not M[0]:
        return 0
    _, piv, _ = bareiss_echelon(_integerize_rows(M))
    return len(piv)


def det(M) -> Fraction | int:
    m, n = shape(M)
    if m != n:
        raise ValueError("determinant of a non-square matrix")
    if m == 0:
        return 1
    dens = [lcm(*(Fraction(x).denominator for x in row)) for row in M]
    E, piv, sign = bareiss_echelon(_integerize_rows(M))
    if len(piv) < m:
        return 0
    value = sign * E[m - 1][m - 1]
    scale = 1
    for dd in dens:
        scale *= dd
    if scale == 1:
        return value
    return Fraction(value, scale)


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q (via a fraction-free forward pass)."""
    if not M or not M[0]:
        return [list(r) for r in M], []
    E, piv, _ = bareiss_echelon(_integerize_rows(M))
    R = [[Fraction(x) for x in row] for row in E[: len(piv)]]
    for i, c in enumerate(piv):
        p = R[i][c]
        R[i] = [x / p for x in R[i]]
    for i in reversed(range(len(piv))):
        c = piv[i]
        for k in range(i):
            f = R[k][c]
            if f:
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]
    n = shape(M)[1]
    R.extend([[Fraction(0)] * n for _ in range(shape(M)[0] - len(piv))])
    return R, piv


def rational_kernel(M) -> list[tuple[Fraction, ...]]:
    """A basis of the right kernel of ``M`` over Q."""
    n = shape(M)[1]
    R, piv = rref(M)
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(tuple(v))
    return basis


def solve_rational(M, rhs) -> tuple[Fraction, ...] | None:
    """One solution of ``M x = rhs`` over Q with all free variables set to 0."""
    m, n = shape(M)
    if len(rhs) != m:
        raise ValueError("dimension mismatch")
    aug = [list(row) + [to_fraction(b)] for row, b in zip(M, rhs)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return tuple(x)


def independent_columns(M, cols: Sequence[int]) -> list[int]:
    """Greedy maximal linearly independent subset of the given columns."""
    chosen: list[int] = []
    for j in cols:
        trial = chosen + [j]
        if rank(from_columns([column(M, k) for k in trial])) == len(trial):
            chosen = trial
    return chosen


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


def hnf(M) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H = U M`` upper echelon:
    positive pivots, entries above each pivot reduced into ``[0, pivot)``,
    zero rows last.
    """
    M = as_int_matrix(M)
    m, n = shape(M)
    H = [list(r) for r in M]
    U = [list(r) for r in identity(m)]
    r = 0
    for c in range(n):
        if r >= m:
            break
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            g, x, y = xgcd(a, b)
            p, q = -b // g, a // g
            for T in (H, U):
                rr, ri = T[r], T[i]
                T[r] = [x * s + y * t for s, t in zip(rr, ri)]
                T[i] = [p * s + q * t for s, t in zip(rr, ri)]
        piv = H[r][c]
        if piv == 0:
            continue
        if piv < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
            piv = -piv
        for k in range(r):
            f = H[k][c] // piv
            if f:
                H[k] = [s - f * t for s, t in zip(H[k], H[r])]
                U[k] = [s - f * t for s, t in zip(U[k], U[r])]
        r += 1
    return tuple(map(tuple, H)), tuple(map(tuple, U))


def snf(M) -> tuple[int, ...]:
    """Invariant factors ``d1 | d2 | ...`` (length ``min(rows, cols)``, zeros last)."""
    M = as_int_matrix(M)
    A = [list(r) for r in M]
    m, n = shape(A)
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        A[t], A[i0] = A[i0], A[t]
        for row in A:
            row[t], row[j0] = row[j0], row[t]
        done = False
        while not done:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if not done:
                nz = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                nz += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i0, j0 = min(nz)
                if i0 != t:
                    A[t], A[i0] = A[i0], A[t]
                if j0 != t:
                    for row in A:
                        row[t], row[j0] = row[j0], row[t]
        t += 1
    diag = [abs(A[i][i]) for i in range(min(m, n))]
    # diagonal -> divisibility chain via (gcd, lcm) exchanges
    k = len(diag)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = diag[i], diag[j]
            if a == 0 and b != 0:
                diag[i], diag[j] = b, 0
            elif a and b:
                g = gcd(a, b)
                diag[i], diag[j] = g, a * b // g
    return tuple(diag)


def kernel_basis(M) -> list[tuple[int, ...]]:
    """A Z-basis (in row Hermite form) of the lattice ``{v in Z^cols : M v = 0}``."""
    M = as_int_matrix(M)
    H, U = hnf(transpose(M))
    r = sum(1 for row in H if any(row))
    basis = [U[i] for i in range(r, len(U))]
    if not basis:
        return []
    Hk, _ = hnf(basis)
    return [row for row in Hk if any(row)]


def lattice_rank_and_index(M) -> tuple[int, int]:
    """Rank of the column lattice of ``M`` and its index in its saturation."""
    factors = [f for f in snf(M) if f]
    index = 1
    for f in factors:
        index *= f
    return len(factors), index


# ---------------------------------------------------------------------------
# linear systems with a beta-linear right side


@dataclass(frozen=True)
class UniqueSolution:
    values: tuple[ParamLinForm, ...]


@dataclass(frozen=True)
class SolvableWithFreedom:
    particular: tuple[ParamLinForm, ...]
    nullity: int


@dataclass(frozen=True)
class InconsistentForGenericBeta:
    """Solvable only on the affine subspace where every condition vanishes."""

    conditions: tuple[ParamLinForm, ...]


@dataclass(frozen=True)
class InconsistentAlways:
    pass


SolveOutcome = UniqueSolution | SolvableWithFreedom | InconsistentForGenericBeta | InconsistentAlways


def solve_param(M, rhs: Sequence[ParamLinForm]) -> SolveOutcome:
    """Solve ``M x = rhs`` where ``rhs`` is a vector of affine forms in beta.

    The outcome is classified exactly.  Rows are scaled to integers and
    eliminated fraction-free; the right side rides along as linear forms.
    """
    m, n = shape(M)
    if len(rhs) != m:
        raise ValueError(f"dimension mismatch: {m} rows but {len(rhs)} right-hand sides")
    if m == 0:
        raise ValueError("empty system")
    d = rhs[0].dim
    E: list[list[int]] = []
    b: list[ParamLinForm] = []
    for row, f in zip(M, rhs):
        fr = [to_fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        E.append([int(x * den) for x in fr])
        b.append(f * den)

    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r >= m:
            break
        p = next((i for i in range(r, m) if E[i][c] != 0), None)
        if p is None:
            continue
        E[r], E[p] = E[p], E[r]
        b[r], b[p] = b[p], b[r]
        piv = E[r][c]
        for i in range(r + 1, m):
            f = E[i][c]
            for j in range(c, n):
                E[i][j] = (piv * E[i][j] - f * E[r][j]) // prev
            b[i] = (b[i] * piv - b[r] * f) / prev
        prev = piv
        pivots.append(c)
        r += 1

    conditions = tuple(b[i] for i in range(r, m) if not b[i].is_zero())
    if conditions:
        # the conditions themselves may be jointly unsatisfiable
        feasible = solve_rational([c.coeffs for c in conditions], [-c.const for c in conditions])
        if feasible is None:
            return InconsistentAlways()
        return InconsistentForGenericBeta(conditions)

    x = [ParamLinForm.zero(d) for _ in range(n)]
    for i in reversed(range(r)):
        c = pivots[i]
        acc = b[i]
        for j in range(c + 1, n):
            if E[i][j]:
                acc = acc - x[j] * E[i][j]
        x[c] = acc / E[i][c]
    if r == n:
        return UniqueSolution(tuple(x))
    return SolvableWithFreedom(tuple(x), n - r)
