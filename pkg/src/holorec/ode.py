"""
Linear differential equations with polynomial coefficients for each class.

A :class:`LinearODE` represents ``sum_k A_k(x) g^(k)(x) = H(x)``.  Rational root
indices ``r = a/b`` are cleared by multiplying through by ``b`` so that every
coefficient stays a polynomial.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DerivationError, PreconditionError
from .exactmath import Poly, as_fraction, poly_gcd_many
from .gfclass import (
    ExpPolySqrt, ExpRationalTimesRoot, GeneralRoot, Hypergeometric, InverseRoot,
    LogRational, NestedSqrt, PowerOfFirstOrder, RootedDenominator, RootedNumerator,
    SqrtRatio, rational_sqrt,
)
from .series import TruncatedSeries

__all__ = [
    "LinearODE", "AlphaVector", "Degeneracy", "derive_ode", "alpha_vector",
    "alpha_cross", "reduce_common_factor", "differentiate_ode", "detect_degenerate",
    "reroute_degenerate", "ode_residual", "lclm_first_order", "split_ode",
    "joint_primitive", "nested_sqrt_trq", "exp_sqrt_trq",
]


@dataclass(frozen=True)
class LinearODE:
    """``sum_k coeffs[k] * g^(k) = inhom``."""

    coeffs: tuple
    inhom: Poly = Poly()

    def __post_init__(self):
        cs = tuple(c if isinstance(c, Poly) else Poly(c) for c in self.coeffs)
        if not cs or cs[-1].is_zero():
            raise DerivationError("leading ODE coefficient vanishes identically")
        object.__setattr__(self, "coeffs", cs)
        if not isinstance(self.inhom, Poly):
            object.__setattr__(self, "inhom", Poly(self.inhom))

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def homogeneous(self):
        return self.inhom.is_zero()

    def __str__(self):
        names = ["g", "g'", "g''"] + [f"g^({k})" for k in range(3, self.order + 1)]
        terms = [f"({c}) {names[k]}" for k, c in reversed(list(enumerate(self.coeffs)))
                 if not c.is_zero()]
        return " + ".join(terms) + f" = {self.inhom}"


@dataclass(frozen=True)
class AlphaVector:
    """The two triples multiplying (T, R, Q) in the nested-root ansatz."""

    a1: Poly
    a2: Poly
    a3: Poly
    a4: Poly
    a5: Poly
    a6: Poly

    @property
    def first(self):
        return (self.a1, self.a2, self.a3)

    @property
    def second(self):
        return (self.a4, self.a5, self.a6)


class Degeneracy(enum.Enum):
    REGULAR = "regular"
    SQUARE = "square"
    PROPORTIONAL = "proportional"


def _split_r(r):
    r = as_fraction(r)
    return r.numerator, r.denominator


def joint_primitive(polys):
    """Scale a family of polynomials jointly to primitive integer coefficients."""
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        return list(polys)
    from math import gcd, lcm
    den = 1
    num = 0
    for p in nonzero:
        for c in p.coeffs:
            den = lcm(den, c.denominator)
            num = gcd(num, c.numerator)
    scale = Fraction(den, num)
    return [p * scale for p in polys]


def alpha_vector(cls):
    """Alpha triples for NestedSqrt / ExpPolySqrt.

    The first triple carries a 1/p term; it is stored multiplied by p, which
    scales every component of the cross product by p.
    """
    w, p = cls.w, cls.p
    w1, w2 = w.derivative(), w.derivative().derivative()
    p1, p2 = p.derivative(), p.derivative().derivative()
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    if isinstance(cls, NestedSqrt):
        r = cls.r
        a1 = (1 - r) * w1 * w1 * p + (quarter - r / 2) * p1 * p1 + r * w2 * w * p + half * r * p2 * p
        a2 = (r * w1 * w + half * r * p1) * p
        a3 = (r * r * w * w + r * r * p) * p
        a4 = (1 - r) * w1 * p1 * p + half * r * w * p2 * p - quarter * r * w * p1 * p1 + r * w2 * p * p
        a5 = half * r * w * p1 * p + r * w1 * p * p
        a6 = 2 * r * r * w * p * p
        return AlphaVector(a1, a2, a3, a4, a5, a6)
    if isinstance(cls, ExpPolySqrt):
        s = cls.sign
        a1 = w2 * p + w1 * w1 * p + quarter * p1 * p1
        a2 = w1 * p
        a3 = p
        a4 = s * (half * p2 * p - quarter * p1 * p1 + w1 * p1 * p)
        a5 = s * half * p1 * p
        a6 = Poly()
        return AlphaVector(a1, a2, a3, a4, a5, a6)
    raise DerivationError(f"no alpha vector for {type(cls).__name__}")


def alpha_cross(alpha):
    """(T, R, Q) orthogonal to both alpha triples, as primitive integer polynomials."""
    a1, a2, a3 = alpha.first
    a4, a5, a6 = alpha.second
    if a1.is_zero() and a2.is_zero() and a3.is_zero():
        raise DerivationError("first alpha triple vanishes")
    T = a2 * a6 - a3 * a5
    R = a3 * a4 - a1 * a6
    Q = a1 * a5 - a2 * a4
    if T.is_zero() and R.is_zero() and Q.is_zero():
        raise DerivationError("alpha triples are parallel: degenerate configuration")
    return tuple(joint_primitive([T, R, Q]))


def detect_degenerate(w, p, r=None):
    """Classify the nested-root parameters (w, p) by the vanishing of T."""
    if (w * w - p).is_zero():
        return Degeneracy.SQUARE
    if (w * p.derivative() - 2 * w.derivative() * p).is_zero():
        return Degeneracy.PROPORTIONAL
    return Degeneracy.REGULAR


def reroute_degenerate(cls):
    """Rewrite a degenerate NestedSqrt as the equivalent InverseRoot."""
    w, p, r = cls.w, cls.p, cls.r
    if p.is_zero():
        return InverseRoot(w, -r)
    if w.is_zero():
        return InverseRoot(p, -2 * r)
    if detect_degenerate(w, p) is Degeneracy.REGULAR:
        raise DerivationError("configuration is not degenerate")
    # w^2 = C p, so sqrt(p) = sign(w(0)) * w / sqrt(C) on the principal branch
    inv_c = p.lc / (w * w).lc
    m = rational_sqrt(inv_c)
    if m is None:
        raise PreconditionError(f"sqrt({inv_c}) is irrational; degenerate rewrite leaves Q")
    s = 1 if w[0] > 0 else -1
    scale = 1 + s * m
    if scale == 0:
        raise PreconditionError("w + sqrt(p) vanishes identically")
    return InverseRoot(w * scale, -r)


def _trq_ode(cls):
    T, R, Q = alpha_cross(alpha_vector(cls))
    # undo the factor p introduced when clearing the first alpha triple
    T, R, Q = joint_primitive([T.exact_div(cls.p), R.exact_div(cls.p), Q.exact_div(cls.p)])
    return LinearODE((Q, R, T))


def nested_sqrt_trq(w, p, r):
    """Closed-form (T, R, Q) of the nested square root, scaled by 8/r."""
    r = as_fraction(r)
    w1, w2 = w.derivative(), w.derivative().derivative()
    p1, p2 = p.derivative(), p.derivative().derivative()
    T = 4 * r * r * (p - w * w) * p * (w * p1 - 2 * w1 * p)
    # R and Q are the expanded cross product; they differ from the printed
    # closed form by a multiple of (2r - 1) p'^2, which fails the oracle check
    R = (8 * r * r * p ** 3 * w2 - 8 * r * r * p * p * w * w * w2 - 4 * r * r * p * p * w * p2
         + 16 * r * r * p * p * w * w1 * w1 - 8 * r * r * p * p * p1 * w1
         + 4 * r * r * p * w ** 3 * p2 - 8 * r * r * p * w * w * p1 * w1
         + 6 * r * r * p * w * p1 * p1 - 2 * r * r * w ** 3 * p1 * p1
         - 16 * r * p * p * w * w1 * w1 + 8 * r * p * p * p1 * w1
         + 8 * r * p * w * w * p1 * w1 - 4 * r * p * w * p1 * p1)
    Q = (-4 * r * p * p * p1 * w2 + 4 * r * p * p * p2 * w1 - 8 * r * p * p * w1 ** 3
         + 4 * r * p * w * w * p1 * w2 - 4 * r * p * w * w * p2 * w1
         + 4 * r * p * w * p1 * w1 * w1 + 2 * r * w * w * p1 * p1 * w1 - r * w * p1 ** 3
         + 8 * p * p * w1 ** 3 - 4 * p * w * p1 * w1 * w1 - 2 * p * p1 * p1 * w1 + w * p1 ** 3)
    return T, R, Q


def exp_sqrt_trq(w, p, sign):
    """Closed-form (T, R, Q) of exp(w + sign*sqrt(p)), scaled by 8."""
    w1, w2 = w.derivative(), w.derivative().derivative()
    p1, p2 = p.derivative(), p.derivative().derivative()
    T = -sign * 4 * p1 * p
    R = sign * 2 * (2 * p2 * p - p1 * p1 + 4 * w1 * p1 * p)
    Q = sign * (4 * p1 * p * w2 - 4 * p1 * p * w1 * w1 + p1 ** 3 - 4 * w1 * p2 * p + 2 * w1 * p1 * p1)
    return T, R, Q


def derive_ode(cls):
    """Differential equation satisfied by the class's generating function.

    The result is the raw formula output; apply :func:`reduce_common_factor`
    to strip common polynomial factors.
    """
    if isinstance(cls, InverseRoot):
        a, b = _split_r(cls.r)
        p = cls.p
        return LinearODE((b * p.derivative(), a * p))
    if isinstance(cls, GeneralRoot):
        a, b = _split_r(cls.r)
        q, v, p = cls.q, cls.v, cls.p
        R = a * q * p * v
        Q = a * q * p * v.derivative() - a * p * q.derivative() * v + b * q * p.derivative() * v
        return LinearODE((Q, R))
    if isinstance(cls, SqrtRatio):
        q, p = cls.q, cls.p
        return LinearODE((q * p.derivative() - q.derivative() * p, 2 * q * p))
    if isinstance(cls, RootedDenominator):
        q, w, v, p = cls.q, cls.w, cls.v, cls.p
        disc = v * v * p - w * w
        vq = v * q
        k = 2 * vq.derivative() * p + vq * p.derivative()
        R = 2 * p * vq * disc
        Q = 2 * p * vq * disc.derivative() - k * disc
        H = -2 * p * vq * (w * q).derivative() + k * w * q
        return LinearODE((Q, R), H)
    if isinstance(cls, RootedNumerator):
        a, b = _split_r(cls.r)
        w, v, p, q = cls.w, cls.v, cls.p, cls.q
        R = a * p * q * v
        Q = a * p * (q.derivative() * v - q * v.derivative()) - b * v * p.derivative() * q
        H = a * p * (w.derivative() * v - w * v.derivative()) - b * v * p.derivative() * w
        return LinearODE((Q, R), H)
    if isinstance(cls, NestedSqrt):
        if cls.p.is_zero() or detect_degenerate(cls.w, cls.p) is not Degeneracy.REGULAR:
            return derive_ode(reroute_degenerate(cls))
        return _trq_ode(cls)
    if isinstance(cls, ExpPolySqrt):
        if cls.p.is_constant():
            # exp of a polynomial: g' - w' g = 0
            return LinearODE((-cls.w.derivative(), Poly([1])))
        return _trq_ode(cls)
    if isinstance(cls, ExpRationalTimesRoot):
        a, b = _split_r(cls.r)
        q, v, p = cls.q, cls.v, cls.p
        R = a * p * v * v
        Q = b * v * v * p.derivative() - a * p * (q.derivative() * v - q * v.derivative())
        return LinearODE((Q, R))
    if isinstance(cls, LogRational):
        q, v = cls.q, cls.v
        return LinearODE((Poly(), q * v), v * q.derivative() - q * v.derivative())
    if isinstance(cls, PowerOfFirstOrder):
        a, b = _split_r(cls.r)
        return LinearODE((b * cls.H, a * cls.L))
    if isinstance(cls, Hypergeometric):
        raise DerivationError("hypergeometric classes use the closed-form two-term recurrence")
    raise DerivationError(f"unsupported class {type(cls).__name__}")


def reduce_common_factor(ode):
    """Divide out the polynomial gcd of all coefficients (and H when nonzero).

    The result has jointly primitive integer coefficients and a positive
    lowest-order coefficient in the leading A_K.
    """
    polys = list(ode.coeffs) + ([ode.inhom] if not ode.homogeneous else [])
    g = poly_gcd_many(polys)
    if g.degree > 0:
        polys = [p.exact_div(g) for p in polys]
    polys = joint_primitive(polys)
    if polys[ode.order].tc < 0:
        polys = [-p for p in polys]
    K = ode.order
    inhom = polys[K + 1] if len(polys) > K + 1 else Poly()
    return LinearODE(tuple(polys[: K + 1]), inhom)


def differentiate_ode(ode):
    """R g' + Q g = H  ->  R g'' + (R' + Q) g' + Q' g = H'."""
    if ode.order != 1:
        raise DerivationError("only first-order equations are differentiated")
    Q, R = ode.coeffs
    return LinearODE((Q.derivative(), R.derivative() + Q, R), ode.inhom.derivative())


def ode_residual(ode, series):
    """sum_k A_k g^(k) - H on a truncated series (order reduced by the ODE order)."""
    K = ode.order
    order = series.order - K
    if order < 0:
        raise ValueError("series too short for this ODE")
    total = TruncatedSeries([0] * (order + 1))
    d = series
    for k, A in enumerate(ode.coeffs):
        total = total + TruncatedSeries.from_poly(A, order) * d.truncate(order)
        if k < K:
            d = d.derivative()
    return total - TruncatedSeries.from_poly(ode.inhom, order)


def lclm_first_order(ode1, ode2):
    """Second-order homogeneous ODE annihilating solutions of two first-order ones.

    With ``R_i y' + Q_i y = 0`` and ``P_i = Q_i R_i' - Q_i' R_i + Q_i^2`` the
    Wronskian determinant of (y, y1, y2) gives
    ``(Q1 R2 - Q2 R1) R1 R2 y'' + (P1 R2^2 - P2 R1^2) y' + (Q2 P1 R2 - Q1 P2 R1) y = 0``.
    """
    for o in (ode1, ode2):
        if o.order != 1 or not o.homogeneous:
            raise DerivationError("lclm needs two homogeneous first-order equations")
    Q1, R1 = ode1.coeffs
    Q2, R2 = ode2.coeffs
    P1 = Q1 * R1.derivative() - Q1.derivative() * R1 + Q1 * Q1
    P2 = Q2 * R2.derivative() - Q2.derivative() * R2 + Q2 * Q2
    A2 = (Q1 * R2 - Q2 * R1) * R1 * R2
    if A2.is_zero():
        raise DerivationError("both parts share one first-order annihilator")
    A1 = P1 * R2 * R2 - P2 * R1 * R1
    A0 = Q2 * P1 * R2 - Q1 * P2 * R1
    return reduce_common_factor(LinearODE((A0, A1, A2)))


def split_ode(cls):
    """Homogeneous second-order ODE for ``(w + v p^(1/r))/q``.

    The rational part ``w/q`` and the radical part ``v p^(1/r)/q`` are each
    annihilated by a first-order operator; their lclm annihilates the sum.
    """
    if not isinstance(cls, RootedNumerator):
        raise DerivationError("split ODE is defined for rooted-numerator classes")
    if cls.w.is_zero():
        raise DerivationError("no rational part to split off")
    a, b = _split_r(cls.r)
    w, v, p, q = cls.w, cls.v, cls.p, cls.q
    rational = LinearODE((w * q.derivative() - w.derivative() * q, w * q))
    radical = derive_ode(RootedNumerator(Poly(), v, p, q, cls.r))
    if not radical.homogeneous:
        raise DerivationError("radical part is unexpectedly inhomogeneous")
    return lclm_first_order(reduce_common_factor(rational), reduce_common_factor(radical))
