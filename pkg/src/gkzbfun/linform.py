"""Affine-linear forms ``c0 + c1*b1 + ... + cd*bd`` with rational coefficients.

These carry the parameter vector beta symbolically.  A rational parameter is
just a form whose beta-coefficients all vanish, so the same code path serves
both the symbolic and the numeric mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def to_fraction(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def frac_str(q: Fraction) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=False)
class ParamLinForm:
    const: Fraction
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "const", to_fraction(self.const))
        object.__setattr__(self, "coeffs", tuple(to_fraction(c) for c in self.coeffs))

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: Scalar, d: int) -> "ParamLinForm":
        return cls(Fraction(c), (Fraction(0),) * d)

    @classmethod
    def zero(cls, d: int) -> "ParamLinForm":
        return cls.constant(0, d)

    @classmethod
    def beta(cls, i: int, d: int) -> "ParamLinForm":
        """The coordinate ``b_{i+1}`` (0-based index ``i``)."""
        coeffs = [Fraction(0)] * d
        coeffs[i] = Fraction(1)
        return cls(Fraction(0), tuple(coeffs))

    @classmethod
    def symbolic_vector(cls, d: int) -> tuple["ParamLinForm", ...]:
        return tuple(cls.beta(i, d) for i in range(d))

    @classmethod
    def rational_vector(cls, values: Sequence) -> tuple["ParamLinForm", ...]:
        d = len(values)
        return tuple(cls.constant(to_fraction(v), d) for v in values)

    # -- arithmetic -------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "ParamLinForm"):
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return ParamLinForm(self.const + other, self.coeffs)
        if not isinstance(other, ParamLinForm):
            return NotImplemented
        self._check(other)
        return ParamLinForm(
            self.const + other.const,
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
        )

    __radd__ = __add__

    def __neg__(self):
        return ParamLinForm(-self.const, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, ParamLinForm):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if not isinstance(k, (int, Fraction)) or isinstance(k, bool):
            return NotImplemented
        return ParamLinForm(self.const * k, tuple(c * k for c in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, k):
        if not isinstance(k, (int, Fraction)) or isinstance(k, bool):
            return NotImplemented
        k = Fraction(k)
        if k == 0:
            raise ZeroDivisionError("division of a linear form by zero")
        return self * (1 / k)

    # -- queries ----------------------------------------------------------

    def is_constant(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_zero(self) -> bool:
        return self.const == 0 and self.is_constant()

    def evaluate(self, beta0: Sequence) -> Fraction:
        if len(beta0) != self.dim:
            raise ValueError(f"expected {self.dim} values, got {len(beta0)}")
        return self.const + sum(
            (c * to_fraction(b) for c, b in zip(self.coeffs, beta0)), Fraction(0)
        )

    def substitute(self, beta0: Sequence) -> "ParamLinForm":
        return ParamLinForm.constant(self.evaluate(beta0), self.dim)

    def sort_key(self):
        return (self.coeffs, self.const)

    # -- formatting -------------------------------------------------------

    def __str__(self) -> str:
        den = lcm(self.const.denominator, *(c.denominator for c in self.coeffs))
        parts: list[tuple[int, str]] = []
        for i, c in enumerate(self.coeffs):
            n = int(c * den)
            if n:
                parts.append((n, f"b{i + 1}"))
        n0 = int(self.const * den)
        if n0 or not parts:
            parts.append((n0, ""))
        out = []
        for j, (n, sym) in enumerate(parts):
            mag = abs(n)
            body = sym if (sym and mag == 1) else (f"{mag}*{sym}" if sym else str(mag))
            if j == 0:
                out.append(("-" if n < 0 else "") + body)
            else:
                out.append((" - " if n < 0 else " + ") + body)
        text = "".join(out)
        if den == 1:
            return text
        if len(parts) == 1:
            return f"{text}/{den}"
        return f"({text})/{den}"

    def __repr__(self) -> str:
        return f"ParamLinForm({self})"

    def to_json(self) -> dict:
        return {"const": frac_str(self.const), "coeffs": [frac_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "ParamLinForm":
        return cls(to_fraction(data["const"]), tuple(to_fraction(c) for c in data["coeffs"]))


def dot_forms(v: Iterable[Scalar], forms: Sequence[ParamLinForm]) -> ParamLinForm:
    """``sum(v_i * forms_i)`` for a rational vector ``v``."""
    forms = list(forms)
    if not forms:
        raise ValueError("empty form vector")
    acc = ParamLinForm.zero(forms[0].dim)
    for c, f in zip(v, forms):
        if c:
            acc = acc + f * to_fraction(c)
    return acc
