"""Concrete partial exponential models for evaluating E-polynomials.

Two models are provided: exact truncated power series K[[t]]/t^N with the
Neumann exponential on the maximal ideal, and an inexact floating model
(complex floats, total exp) for sanity checks only.
"""

from __future__ import annotations

from fractions import Fraction

from .epoly import EPoly
from .errors import PartialityError, VariableCountError
from .scalars import GaussianRational, as_scalar, scalar_im, scalar_re


class TruncatedSeries:
    """Exact series arithmetic modulo t^N over Q or Q(i)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order=None):
        coeffs = [as_scalar(c) for c in coeffs]
        if order is not None:
            if len(coeffs) > order:
                coeffs = coeffs[:order]
            else:
                coeffs = coeffs + [Fraction(0)] * (order - len(coeffs))
        if not coeffs:
            raise ValueError("truncation order must be at least 1")
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def const(cls, c, order: int) -> "TruncatedSeries":
        return cls([c] + [Fraction(0)] * (order - 1))

    @classmethod
    def t(cls, order: int) -> "TruncatedSeries":
        return cls([0, 1], order)

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.const(as_scalar(other), self.order)
        if other.order != self.order:
            raise ValueError("mixed truncation orders")
        return other

    def __add__(self, other):
        other = self._check(other)
        return TruncatedSeries([a + b
                                for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return TruncatedSeries([a * other for a in self.coeffs])
        other = self._check(other)
        n = self.order
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                out[i + j] += a * b
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = TruncatedSeries.const(1, self.order)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == TruncatedSeries.const(other, self.order)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def derivative(self) -> "TruncatedSeries":
        """Formal d/dt, one order lower."""
        if self.order == 1:
            raise ValueError("cannot differentiate at truncation order 1")
        return TruncatedSeries([k * c
                                for k, c in enumerate(self.coeffs)][1:])

    def __str__(self):
        from .scalars import format_scalar
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(format_scalar(c))
            else:
                tpow = "t" if k == 1 else f"t^{k}"
                parts.append(tpow if c == 1 else f"{format_scalar(c)} {tpow}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)!r})"


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """exp on the maximal ideal: sum of s^k / k! for k < N, exact mod t^N."""
    if s.coeffs[0] != 0:
        raise PartialityError(
            f"series exponential undefined: constant coefficient "
            f"{s.coeffs[0]} is nonzero")
    out = TruncatedSeries.const(1, s.order)
    power = TruncatedSeries.const(1, s.order)
    factorial = 1
    for k in range(1, s.order):
        power = power * s
        factorial *= k
        out = out + power * Fraction(1, factorial)
    return out


class SeriesPoint:
    """One truncated series per variable; the exact evaluation model."""

    model = "series"

    def __init__(self, values, order: int = 8):
        self.values = tuple(v if isinstance(v, TruncatedSeries)
                            else TruncatedSeries(v, order) for v in values)
        for v in self.values:
            if v.order != self.values[0].order:
                raise ValueError("mixed truncation orders in point")

    @property
    def order(self) -> int:
        return self.values[0].order

    def lift(self, c):
        return TruncatedSeries.const(c, self.order)

    def exp(self, v, node: EPoly):
        if v.coeffs[0] != 0:
            raise PartialityError(
                f"E-node E({node}) evaluates outside the exponential domain:"
                f" constant coefficient {v.coeffs[0]}")
        return series_exp(v)

    @staticmethod
    def is_zero(v) -> bool:
        return v.is_zero()


class FloatPoint:
    """Complex floats with total exp; for demonstrations, never exact."""

    model = "float"

    def __init__(self, values, tolerance: float = 1e-9):
        self.values = tuple(complex(v) for v in values)
        self.tolerance = tolerance

    @staticmethod
    def lift(c):
        return complex(float(scalar_re(c)), float(scalar_im(c)))

    def exp(self, v, node: EPoly):
        import cmath
        return cmath.exp(v)

    def is_zero(self, v) -> bool:
        return abs(v) <= self.tolerance


def eval_epoly(p: EPoly, point):
    """Ring-homomorphic evaluation; E-nodes go through the model exponential."""
    if len(point.values) != p.nvars:
        raise VariableCountError(
            f"point has {len(point.values)} coordinates, value has "
            f"{p.nvars} variables")
    total = None
    for (mono, exponent), coeff in p.terms:
        acc = point.lift(coeff)
        for j, e in enumerate(mono):
            for _ in range(e):
                acc = acc * point.values[j]
        if exponent is not None:
            acc = acc * point.exp(eval_epoly(exponent, point), exponent)
        total = acc if total is None else total + acc
    if total is None:
        return point.lift(Fraction(0))
    return total


def khovanskii_check(fs, point) -> bool:
    """Square system: all f_i vanish at the point and the Jacobian does not."""
    from .ediff import jacobian
    fs = list(fs)
    for f in fs:
        if not point.is_zero(eval_epoly(f, point)):
            return False
    return not point.is_zero(eval_epoly(jacobian(fs), point))
