"""
The supported generating-function shapes.

Each class is a frozen dataclass holding its polynomial parameters (in x) and,
where relevant, a rational root index ``r``.  ``validate()`` enforces the
preconditions under which the coefficients are exact rationals.
"""

from dataclasses import dataclass, fields
from fractions import Fraction

from .errors import PreconditionError
from .exactmath import Poly, as_fraction, rational_power

__all__ = [
    "GFClass", "InverseRoot", "GeneralRoot", "SqrtRatio", "RootedDenominator",
    "RootedNumerator", "NestedSqrt", "ExpPolySqrt", "ExpRationalTimesRoot",
    "LogRational", "Hypergeometric", "PowerOfFirstOrder", "CLASSES",
    "class_from_dict", "rational_sqrt",
]


def rational_sqrt(c):
    """Nonnegative rational square root of c, or None."""
    try:
        return rational_power(c, Fraction(1, 2))
    except ValueError:
        return None


def _need(cond, message):
    if not cond:
        raise PreconditionError(message)


def _check_root_constant(p, alpha, what="p"):
    _need(not p.is_zero(), f"{what} must be a nonzero polynomial")
    _need(p[0] != 0, f"{what}(0) = 0: {what}^{alpha} has no power series expansion")
    try:
        rational_power(p[0], alpha)
    except ValueError:
        raise PreconditionError(
            f"{what}(0)^{alpha} = {p[0]}^{alpha} is not rational") from None


def _rat_str(q):
    q = as_fraction(q)
    return f"{q.numerator}/{q.denominator}"


class GFClass:
    """Common behaviour of the class dataclasses."""

    kind = ""
    #: number of free parameters, used to prefer the most specific class
    specificity = 0

    def __post_init__(self):
        # accept ints, strings and coefficient lists in the constructor
        for f in fields(self):
            val = getattr(self, f.name)
            if f.type in (Poly, "Poly") and not isinstance(val, Poly):
                val = Poly(val)
            elif f.type in (Fraction, "Fraction"):
                val = as_fraction(val)
            elif f.type in (tuple, "tuple"):
                val = tuple(as_fraction(c) for c in val)
            object.__setattr__(self, f.name, val)

    def validate(self):
        return self

    def to_dict(self):
        out = {"kind": self.kind}
        for f in fields(self):
            val = getattr(self, f.name)
            if isinstance(val, Poly):
                out[f.name] = [_rat_str(c) for c in val.coeffs]
            elif isinstance(val, tuple):
                out[f.name] = [_rat_str(c) for c in val]
            elif isinstance(val, Fraction):
                out[f.name] = _rat_str(val)
            else:
                out[f.name] = val
        return out

    def describe(self):
        parts = []
        for f in fields(self):
            val = getattr(self, f.name)
            if isinstance(val, Poly):
                parts.append(f"{f.name} = {val}")
            elif isinstance(val, tuple):
                parts.append(f"{f.name} = [{', '.join(str(c) for c in val)}]")
            else:
                parts.append(f"{f.name} = {val}")
        return f"{type(self).__name__}{{{'; '.join(parts)}}}"


@dataclass(frozen=True)
class InverseRoot(GFClass):
    """g = p^(-1/r)."""

    p: Poly
    r: Fraction
    kind = "inverse-root"
    specificity = 2

    def validate(self):
        _need(self.r != 0, "r must be nonzero")
        _check_root_constant(self.p, -1 / self.r)
        return self


@dataclass(frozen=True)
class GeneralRoot(GFClass):
    """g = q / (v p^(1/r))."""

    q: Poly
    v: Poly
    p: Poly
    r: Fraction
    kind = "general-root"
    specificity = 4

    def validate(self):
        _need(self.r != 0, "r must be nonzero")
        _need(not self.q.is_zero(), "q must be nonzero")
        _need(not self.v.is_zero() and self.v[0] != 0, "v(0) must be nonzero")
        _check_root_constant(self.p, -1 / self.r)
        return self


@dataclass(frozen=True)
class SqrtRatio(GFClass):
    """g = sqrt(q / p)."""

    q: Poly
    p: Poly
    kind = "sqrt-ratio"
    specificity = 2

    def validate(self):
        _need(not self.q.is_zero() and self.q[0] != 0, "q(0) must be nonzero")
        _need(not self.p.is_zero() and self.p[0] != 0, "p(0) must be nonzero")
        _need(rational_sqrt(self.q[0] / self.p[0]) is not None,
              "q(0)/p(0) must be the square of a rational")
        return self


@dataclass(frozen=True)
class RootedDenominator(GFClass):
    """g = q / (w + v sqrt(p))."""

    q: Poly
    w: Poly
    v: Poly
    p: Poly
    kind = "rooted-denominator"
    specificity = 4

    def validate(self):
        _need(not self.q.is_zero(), "q must be nonzero")
        _need(not self.v.is_zero(), "v must be nonzero")
        _need(not self.p.is_zero() and self.p[0] != 0, "p(0) must be nonzero")
        _need(rational_sqrt(self.p[0]) is not None, "p(0) must be the square of a rational")
        _need(not (self.v * self.v * self.p - self.w * self.w).is_zero(),
              "w^2 = v^2 p makes the denominator a rational function")
        return self


@dataclass(frozen=True)
class RootedNumerator(GFClass):
    """g = (w + v p^(1/r)) / q."""

    w: Poly
    v: Poly
    p: Poly
    q: Poly
    r: Fraction
    kind = "rooted-numerator"
    specificity = 5

    def validate(self):
        _need(self.r != 0, "r must be nonzero")
        _need(not self.q.is_zero(), "q must be nonzero")
        _need(not self.v.is_zero(), "v must be nonzero")
        _check_root_constant(self.p, 1 / self.r)
        return self


@dataclass(frozen=True)
class NestedSqrt(GFClass):
    """g = (w + sqrt(p))^(1/r)."""

    w: Poly
    p: Poly
    r: Fraction
    kind = "nested-sqrt"
    specificity = 3

    def validate(self):
        _need(self.r != 0, "r must be nonzero")
        if self.p.is_zero():
            _check_root_constant(self.w, 1 / self.r, "w")
            return self
        _need(self.p[0] != 0, "p(0) must be nonzero")
        c = rational_sqrt(self.p[0])
        _need(c is not None, "p(0) must be the square of a rational")
        inner = self.w[0] + c
        _need(inner != 0, "w(0) + sqrt(p(0)) must be nonzero")
        try:
            rational_power(inner, 1 / self.r)
        except ValueError:
            raise PreconditionError(
                f"(w(0) + sqrt(p(0)))^(1/r) = {inner}^{1 / self.r} is not rational") from None
        return self


@dataclass(frozen=True)
class ExpPolySqrt(GFClass):
    """g = exp(w + sign * sqrt(p)), sign = +1 or -1."""

    w: Poly
    p: Poly
    sign: int
    kind = "exp-poly-sqrt"
    specificity = 3

    def validate(self):
        _need(self.sign in (1, -1), "sign must be +1 or -1")
        if self.p.is_zero():
            _need(self.w[0] == 0, "w(0) must vanish for a rational exp series")
            return self
        _need(self.p[0] != 0, "p(0) must be nonzero")
        c = rational_sqrt(self.p[0])
        _need(c is not None, "p(0) must be the square of a rational")
        _need(self.w[0] + self.sign * c == 0,
              "w(0) + sign*sqrt(p(0)) must vanish for a rational exp series")
        return self


@dataclass(frozen=True)
class ExpRationalTimesRoot(GFClass):
    """g = exp(q/v) p^(-1/r)."""

    q: Poly
    v: Poly
    p: Poly
    r: Fraction
    kind = "exp-rational-root"
    specificity = 4

    def validate(self):
        _need(self.r != 0, "r must be nonzero")
        _need(not self.v.is_zero() and self.v[0] != 0, "v(0) must be nonzero")
        _need(self.q[0] == 0, "q(0) must vanish for a rational exp series")
        _check_root_constant(self.p, -1 / self.r)
        return self


@dataclass(frozen=True)
class LogRational(GFClass):
    """g = log(q/v)."""

    q: Poly
    v: Poly
    kind = "log-rational"
    specificity = 2

    def validate(self):
        _need(not self.v.is_zero() and self.v[0] != 0, "v(0) must be nonzero")
        _need(self.q[0] == self.v[0], "q(0) = v(0) is required for a rational log series")
        return self


@dataclass(frozen=True)
class Hypergeometric(GFClass):
    """g = x^t pFq(alphas; betas; x^r / c)."""

    alphas: tuple
    betas: tuple
    t: int
    r: int
    c: Fraction
    kind = "hypergeometric"
    specificity = 5

    def validate(self):
        _need(isinstance(self.t, int) and self.t >= 0, "t must be a nonnegative integer")
        _need(isinstance(self.r, int) and self.r >= 1, "r must be a positive integer")
        _need(self.c != 0, "c must be nonzero")
        stop = None
        for a in self.alphas:
            if a.denominator == 1 and a <= 0:
                stop = -a if stop is None else min(stop, -a)
        for b in self.betas:
            if b.denominator == 1 and b <= 0:
                _need(stop is not None and stop < -b,
                      f"denominator parameter {b} vanishes inside the series")
        return self


@dataclass(frozen=True)
class PowerOfFirstOrder(GFClass):
    """g = f^(1/r) where L f' + H f = 0 and f(0) = 1."""

    L: Poly
    H: Poly
    r: Fraction
    kind = "power-of-first-order"
    specificity = 3

    def validate(self):
        _need(self.r != 0, "r must be nonzero")
        _need(not self.L.is_zero() and self.L[0] != 0, "L(0) must be nonzero")
        return self


CLASSES = {cls.kind: cls for cls in (
    InverseRoot, GeneralRoot, SqrtRatio, RootedDenominator, RootedNumerator,
    NestedSqrt, ExpPolySqrt, ExpRationalTimesRoot, LogRational, Hypergeometric,
    PowerOfFirstOrder,
)}


def class_from_dict(data):
    """Inverse of ``GFClass.to_dict``."""
    cls = CLASSES[data["kind"]]
    kwargs = {}
    for f in fields(cls):
        val = data[f.name]
        if f.type in (Poly, "Poly"):
            kwargs[f.name] = Poly(as_fraction(c) for c in val)
        elif f.type in (tuple, "tuple"):
            kwargs[f.name] = tuple(as_fraction(c) for c in val)
        elif f.type in (Fraction, "Fraction"):
            kwargs[f.name] = as_fraction(val)
        else:
            kwargs[f.name] = int(val)
    return cls(**kwargs)
