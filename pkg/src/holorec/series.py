"""
Truncated power series over the rationals and the independent expansion oracle.

The oracle expands each generating-function class by composing elementary
series operations (products, quotients, rational powers, exp, log).  It never
looks at a derived ODE or recurrence, which is what makes it usable as a
referee for them.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import expr as E
from .errors import PreconditionError, UnsupportedShape
from .exactmath import Poly, as_fraction, rational_power
from .gfclass import (
    ExpPolySqrt, ExpRationalTimesRoot, GeneralRoot, Hypergeometric, InverseRoot,
    LogRational, NestedSqrt, PowerOfFirstOrder, RootedDenominator, RootedNumerator,
    SqrtRatio,
)

__all__ = [
    "TruncatedSeries", "series_pow", "series_exp", "series_log", "series_div",
    "series_scaled_pow", "oracle_expand", "expression_series",
]


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of x^0 .. x^order, all exact."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))

    @property
    def order(self):
        return len(self.coeffs) - 1

    @classmethod
    def from_poly(cls, p, order):
        return cls([p[i] for i in range(order + 1)])

    @classmethod
    def constant(cls, c, order):
        return cls([c] + [0] * order)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(as_fraction(other), self.order)
        n = min(self.order, other.order)
        return TruncatedSeries([self[i] + other[i] for i in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = as_fraction(other)
            return TruncatedSeries([c * a for a in self.coeffs])
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            s = Fraction(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    s += a[i] * b[k - i]
            out.append(s)
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = as_fraction(other)
            return TruncatedSeries([a / c for a in self.coeffs])
        return series_div(self, other)

    def __rtruediv__(self, other):
        return series_div(TruncatedSeries.constant(as_fraction(other), self.order), self)

    def derivative(self):
        return TruncatedSeries([i * c for i, c in enumerate(self.coeffs)][1:])

    def integral(self):
        return TruncatedSeries([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def shift_down(self, k):
        """Divide by x^k; the dropped coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise UnsupportedShape("series is not divisible by x^%d" % k)
        return TruncatedSeries(self.coeffs[k:])

    def shift_up(self, k):
        return TruncatedSeries([0] * k + list(self.coeffs))


def series_div(a, b):
    """Quotient a/b; a common power of x is cancelled first."""
    k = b.valuation()
    if k is None:
        raise ZeroDivisionError("division by a series that vanishes to its full order")
    if k:
        a, b = a.shift_down(k), b.shift_down(k)
    n = min(a.order, b.order)
    b0 = b[0]
    out = []
    for m in range(n + 1):
        s = a[m]
        for i in range(1, m + 1):
            if b[i]:
                s -= b[i] * out[m - i]
        out.append(s / b0)
    return TruncatedSeries(out)


def series_pow(a, alpha):
    """a(x)**alpha for a(0) = 1, from the identity a (a^alpha)' = alpha a' a^alpha."""
    alpha = as_fraction(alpha)
    if alpha == 0:
        return TruncatedSeries.constant(1, a.order)
    if a[0] != 1:
        raise PreconditionError("series_pow needs a unit constant term")
    out = [Fraction(1)]
    for n in range(1, a.order + 1):
        s = Fraction(0)
        for k in range(1, n + 1):
            if a[k]:
                s += (alpha * k - (n - k)) * a[k] * out[n - k]
        out.append(s / n)
    return TruncatedSeries(out)


def series_exp(a):
    """exp(a(x)) for a(0) = 0, via g' = a' g."""
    if a[0] != 0:
        raise PreconditionError("series_exp needs a vanishing constant term")
    out = [Fraction(1)]
    for n in range(1, a.order + 1):
        s = Fraction(0)
        for k in range(1, n + 1):
            if a[k]:
                s += k * a[k] * out[n - k]
        out.append(s / n)
    return TruncatedSeries(out)


def series_log(a):
    """log(a(x)) for a(0) = 1, via g' = a'/a."""
    if a[0] != 1:
        raise PreconditionError("series_log needs constant term 1")
    if a.order == 0:
        return TruncatedSeries([0])
    return series_div(a.derivative(), a.truncate(a.order - 1)).integral()


def series_scaled_pow(a, alpha):
    """a(x)**alpha for any a(0) != 0 whose alpha-th power is rational."""
    alpha = as_fraction(alpha)
    c = a[0]
    if c == 0:
        raise PreconditionError("constant term vanishes")
    try:
        scale = rational_power(c, alpha)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    return series_pow(a / c, alpha) * scale


def _poly_series(p, order):
    return TruncatedSeries.from_poly(p, order)


def _pad(*polys):
    return sum(max(p.degree, 0) for p in polys) + 2


def _hypergeometric(cls, order):
    out = [Fraction(0)] * (order + 1)
    n = 0
    while cls.r * n + cls.t <= order:
        num = Fraction(1)
        for a in cls.alphas:
            for i in range(n):
                num *= a + i
        if num == 0:
            break
        den = Fraction(factorial(n)) * cls.c ** n
        for b in cls.betas:
            for i in range(n):
                den *= b + i
        out[cls.r * n + cls.t] = num / den
        n += 1
    return TruncatedSeries(out)


def oracle_expand(cls, order):
    """First ``order + 1`` coefficients of the class's generating function."""
    cls.validate()
    if isinstance(cls, Hypergeometric):
        return _hypergeometric(cls, order)
    S = _poly_series
    if isinstance(cls, InverseRoot):
        return series_scaled_pow(S(cls.p, order), -1 / cls.r)
    if isinstance(cls, GeneralRoot):
        root = series_scaled_pow(S(cls.p, order), -1 / cls.r)
        return S(cls.q, order) * root / S(cls.v, order)
    if isinstance(cls, SqrtRatio):
        return series_scaled_pow(S(cls.q, order) / S(cls.p, order), Fraction(1, 2))
    if isinstance(cls, RootedDenominator):
        m = order + _pad(cls.w, cls.v, cls.p) + 2 * cls.w.degree + 2 * cls.v.degree
        den = S(cls.w, m) + S(cls.v, m) * series_scaled_pow(S(cls.p, m), Fraction(1, 2))
        return _checked(S(cls.q, m) / den, order)
    if isinstance(cls, RootedNumerator):
        m = order + max(cls.q.valuation(), 0)
        num = S(cls.w, m) + S(cls.v, m) * series_scaled_pow(S(cls.p, m), 1 / cls.r)
        return _checked(num / S(cls.q, m), order)
    if isinstance(cls, NestedSqrt):
        if cls.p.is_zero():
            return series_scaled_pow(S(cls.w, order), 1 / cls.r)
        inner = S(cls.w, order) + series_scaled_pow(S(cls.p, order), Fraction(1, 2))
        return series_scaled_pow(inner, 1 / cls.r)
    if isinstance(cls, ExpPolySqrt):
        arg = S(cls.w, order)
        if not cls.p.is_zero():
            arg = arg + series_scaled_pow(S(cls.p, order), Fraction(1, 2)) * cls.sign
        return series_exp(arg)
    if isinstance(cls, ExpRationalTimesRoot):
        e = series_exp(S(cls.q, order) / S(cls.v, order))
        return e * series_scaled_pow(S(cls.p, order), -1 / cls.r)
    if isinstance(cls, LogRational):
        return series_log(S(cls.q, order) / S(cls.v, order))
    if isinstance(cls, PowerOfFirstOrder):
        log_f = (-S(cls.H, order) / S(cls.L, order)).truncate(max(order - 1, 0)).integral()
        f = series_exp(log_f.truncate(order))
        return series_pow(f, 1 / cls.r)
    raise TypeError(f"no oracle for {type(cls).__name__}")


def _checked(s, order):
    if s.order < order:
        raise PreconditionError("insufficient precision after cancelling powers of x")
    return s.truncate(order)


# --- direct evaluation of expression trees --------------------------------

def _node_series(node, m):
    if isinstance(node, E.Num):
        return TruncatedSeries.constant(node.value, m)
    if isinstance(node, E.Var):
        return TruncatedSeries.from_poly(Poly.x(), m)
    if isinstance(node, E.Neg):
        return -_node_series(node.arg, m)
    if isinstance(node, E.Add):
        return _node_series(node.left, m) + _node_series(node.right, m)
    if isinstance(node, E.Sub):
        return _node_series(node.left, m) - _node_series(node.right, m)
    if isinstance(node, E.Mul):
        return _node_series(node.left, m) * _node_series(node.right, m)
    if isinstance(node, E.Div):
        return _node_series(node.left, m) / _node_series(node.right, m)
    if isinstance(node, (E.Pow, E.Sqrt, E.Root)):
        if isinstance(node, E.Pow):
            base, alpha = node.base, node.exponent
        elif isinstance(node, E.Sqrt):
            base, alpha = node.arg, Fraction(1, 2)
        else:
            base, alpha = node.arg, 1 / node.r
        a = _node_series(base, m)
        if alpha.denominator == 1 and alpha >= 0:
            out = TruncatedSeries.constant(1, a.order)
            for _ in range(alpha.numerator):
                out = out * a
            return out
        v = a.valuation()
        if v is None:
            raise UnsupportedShape("power of a series that vanishes to working order")
        shift = v * alpha
        if shift.denominator != 1 or shift < 0:
            raise UnsupportedShape("fractional or negative power of x in expansion")
        return series_scaled_pow(a.shift_down(v), alpha).shift_up(shift.numerator)
    if isinstance(node, E.Exp):
        return series_exp(_node_series(node.arg, m))
    if isinstance(node, E.Log):
        return series_log(_node_series(node.arg, m))
    raise TypeError(f"not an expression node: {node!r}")


def expression_series(node, order):
    """Expand an expression tree directly, independent of classification."""
    pad = 8
    while True:
        s = _node_series(node, order + pad)
        if s.order >= order:
            return s.truncate(order)
        pad *= 2
        if pad > 4096:
            raise UnsupportedShape("cannot reach the requested order")
