"""
Map expression trees onto the supported generating-function classes.

The tree is evaluated bottom-up into a small algebra of symbolic forms:

* ``Rat``   a rational function num/den, kept uncancelled;
* ``Alg``   ``rat + coef * base^expo`` with one radical term (``coef`` a Rat);
  square roots of a common base multiply and divide inside Q(x)[sqrt(p)];
* ``Frac``  an Alg over an Alg whose radical survives in the denominator;
* ``ExpF``  ``exp(arg) * factor``;  ``LogF``  ``log(arg)``;
* ``NestF`` ``(w + sqrt(p))^e``;   ``RatioRoot``  ``sqrt(q/p)``.

The top-level form is then matched to the most specific class, validated,
and cross-checked against a direct series expansion of the tree.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import expr as E
from .errors import PreconditionError, UnsupportedShape
from .exactmath import Poly, poly_gcd_primitive, rational_power
from .gfclass import (
    ExpPolySqrt, ExpRationalTimesRoot, GeneralRoot, InverseRoot, LogRational,
    NestedSqrt, RootedDenominator, RootedNumerator, SqrtRatio,
)
from .ode import joint_primitive

__all__ = [
    "classify", "classify_text", "rewrite_sum", "rewrite_moebius_sqrt",
    "expression_to_poly", "parse_poly",
]

HALF = Fraction(1, 2)
ONE = Poly([1])


# --- forms ------------------------------------------------------------------

@dataclass(frozen=True)
class Rat:
    num: Poly
    den: Poly = ONE

    def __post_init__(self):
        if self.den.is_zero():
            raise UnsupportedShape("division by zero")

    @property
    def is_zero(self):
        return self.num.is_zero()

    @property
    def is_poly(self):
        return self.den.is_constant()

    def constant(self):
        """The rational value when both parts are constant, else None."""
        if self.num.is_constant() and self.den.is_constant():
            return self.num[0] / self.den[0]
        return None

    def __add__(self, o):
        if self.den == o.den:
            return Rat(self.num + o.num, self.den)
        return Rat(self.num * o.den + o.num * self.den, self.den * o.den)

    def __neg__(self):
        return Rat(-self.num, self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        return Rat(self.num * o.num, self.den * o.den)

    def inverse(self):
        if self.num.is_zero():
            raise UnsupportedShape("division by zero")
        return Rat(self.den, self.num)

    def __truediv__(self, o):
        return self * o.inverse()

    def power(self, k):
        base = self if k >= 0 else self.inverse()
        return Rat(base.num ** abs(k), base.den ** abs(k))

    def cancel(self):
        g = poly_gcd_primitive(self.num, self.den) if not self.num.is_zero() else self.den
        num, den = self.num.exact_div(g), self.den.exact_div(g)
        if den.is_constant():
            return Rat(num / den[0], ONE)
        return Rat(num, den)

    def as_poly(self):
        if not self.is_poly:
            return None
        return self.num / self.den[0]


ZERO = Rat(Poly())
UNIT = Rat(ONE)


@dataclass(frozen=True)
class Alg:
    """rat + coef * base^expo; ``coef`` zero means no radical part."""

    rat: Rat
    coef: Rat = ZERO
    base: Poly = ONE
    expo: Fraction = Fraction(0)

    @property
    def has_rad(self):
        return not self.coef.is_zero

    @property
    def is_sqrt(self):
        return self.has_rad and self.expo.denominator == 2


@dataclass(frozen=True)
class Frac:
    num: Alg
    den: Alg


@dataclass(frozen=True)
class ExpF:
    arg: Alg
    factor: Alg


@dataclass(frozen=True)
class LogF:
    arg: Rat


@dataclass(frozen=True)
class NestF:
    inner: Alg
    expo: Fraction


@dataclass(frozen=True)
class RatioRoot:
    q: Poly
    p: Poly


def _radical(coef, base, expo):
    """Normalized coef * base^expo."""
    expo = Fraction(expo)
    if coef.is_zero:
        return Alg(ZERO)
    if expo.denominator == 1:
        return Alg(coef * Rat(base).power(expo.numerator))
    if base.is_constant():
        try:
            return Alg(coef * Rat(Poly([rational_power(base[0], expo)])))
        except ValueError:
            raise UnsupportedShape(f"{base[0]}^{expo} is irrational") from None
    # bring sqrt-type exponents to +1/2 (q(x)[sqrt p] arithmetic) and make p(0) = 1
    if expo.denominator == 2:
        shift = expo - HALF
        coef = coef * Rat(base).power(shift.numerator)
        expo = HALF
    c = base[0]
    if c not in (0, 1):
        try:
            k = rational_power(c, expo)
            coef = coef * Rat(Poly([k]))
            base = base / c
        except ValueError:
            pass
    return Alg(ZERO, coef, base, expo)


def _same_radical(a, b):
    return a.base == b.base and a.expo == b.expo


def _add(a, b):
    if not b.has_rad:
        return Alg(a.rat + b.rat, a.coef, a.base, a.expo)
    if not a.has_rad:
        return _add(b, a)
    if not _same_radical(a, b):
        raise UnsupportedShape("sum of two different radicals")
    coef = a.coef + b.coef
    if coef.is_zero:
        return Alg(a.rat + b.rat)
    return Alg(a.rat + b.rat, coef, a.base, a.expo)


def _neg(a):
    return Alg(-a.rat, -a.coef, a.base, a.expo)


def _mul(a, b):
    if not a.has_rad and not b.has_rad:
        return Alg(a.rat * b.rat)
    if not b.has_rad:
        a, b = b, a
    if not a.has_rad:
        return Alg(a.rat * b.rat, a.rat * b.coef, b.base, b.expo)
    if a.base != b.base:
        raise UnsupportedShape("product of radicals with different bases")
    if a.rat.is_zero and b.rat.is_zero:
        return _radical(a.coef * b.coef, a.base, a.expo + b.expo)
    if a.is_sqrt and b.is_sqrt:
        p = Rat(a.base)
        rat = a.rat * b.rat + a.coef * b.coef * p
        coef = a.rat * b.coef + a.coef * b.rat
        if coef.is_zero:
            return Alg(rat)
        return Alg(rat, coef, a.base, HALF)
    raise UnsupportedShape("product of sums involving non-square roots")


def _inverse(a):
    """1/a with square roots cleared from the denominator by the conjugate."""
    if not a.has_rad:
        return Alg(a.rat.inverse())
    if a.rat.is_zero:
        return _radical(a.coef.inverse(), a.base, -a.expo)
    if a.is_sqrt:
        # multiply by the conjugate
        norm = a.rat * a.rat - a.coef * a.coef * Rat(a.base)
        if norm.is_zero:
            raise UnsupportedShape("denominator vanishes identically")
        return Alg(a.rat / norm, -a.coef / norm, a.base, HALF)
    raise UnsupportedShape("cannot invert a sum with a non-square root")


def _to_alg(f):
    if isinstance(f, Alg):
        return f
    if isinstance(f, Frac):
        return _mul(f.num, _inverse(f.den))
    raise UnsupportedShape(f"cannot combine {_kind_name(f)} with other terms")


def _kind_name(f):
    return {ExpF: "an exponential", LogF: "a logarithm", NestF: "a nested root",
            RatioRoot: "a root of a rational function"}.get(type(f), "this expression")


def _one():
    return Alg(UNIT)


# --- tree evaluation --------------------------------------------------------

def _is_unit(a):
    return isinstance(a, Alg) and not a.has_rad and a.rat.constant() == 1


def _form(node):
    if isinstance(node, E.Num):
        return Alg(Rat(Poly([node.value])))
    if isinstance(node, E.Var):
        return Alg(Rat(Poly([0, 1])))
    if isinstance(node, E.Neg):
        f = _form(node.arg)
        if isinstance(f, LogF):
            return LogF(f.arg.inverse())
        if isinstance(f, Frac):
            return Frac(_neg(f.num), f.den)
        return _neg(_to_alg(f))
    if isinstance(node, (E.Add, E.Sub)):
        a, b = _form(node.left), _form(node.right)
        if isinstance(a, LogF) and isinstance(b, LogF):
            return LogF(a.arg * (b.arg if isinstance(node, E.Add) else b.arg.inverse()))
        b = _to_alg(b)
        return _add(_to_alg(a), b if isinstance(node, E.Add) else _neg(b))
    if isinstance(node, E.Mul):
        return _product(_form(node.left), _form(node.right))
    if isinstance(node, E.Div):
        return _quotient(_form(node.left), _form(node.right))
    if isinstance(node, E.Pow):
        return _power(_form(node.base), node.exponent)
    if isinstance(node, E.Sqrt):
        return _power(_form(node.arg), HALF)
    if isinstance(node, E.Root):
        return _power(_form(node.arg), 1 / node.r)
    if isinstance(node, E.Exp):
        arg = _to_alg(_form(node.arg))
        return ExpF(arg, _one())
    if isinstance(node, E.Log):
        arg = _to_alg(_form(node.arg))
        if arg.has_rad:
            raise UnsupportedShape("logarithm of an algebraic function")
        return LogF(arg.rat)
    raise TypeError(f"not an expression node: {node!r}")


def _int_const(f):
    if isinstance(f, Alg) and not f.has_rad:
        c = f.rat.constant()
        if c is not None and c.denominator == 1:
            return c.numerator
    return None


def _product(a, b):
    if isinstance(b, (ExpF, LogF)) and not isinstance(a, (ExpF, LogF)):
        a, b = b, a
    if isinstance(a, ExpF):
        if isinstance(b, ExpF):
            return ExpF(_add(a.arg, b.arg), _mul(a.factor, b.factor))
        return ExpF(a.arg, _mul(a.factor, _to_alg(b)))
    if isinstance(a, LogF):
        k = _int_const(b)
        if k is None:
            raise UnsupportedShape("only integer multiples of a logarithm are supported")
        return LogF(a.arg.power(k)) if k else Alg(ZERO)
    if isinstance(a, Frac) and isinstance(b, Alg) and not b.has_rad:
        return Frac(_mul(a.num, b), a.den)
    if isinstance(b, Frac) and isinstance(a, Alg) and not a.has_rad:
        return Frac(_mul(b.num, a), b.den)
    return _mul(_to_alg(a), _to_alg(b))


def _quotient(a, b):
    if isinstance(b, ExpF):
        return _product(a, ExpF(_neg(b.arg), _inverse(b.factor)))
    if isinstance(a, ExpF):
        return ExpF(a.arg, _mul(a.factor, _inverse(_to_alg(b))))
    if isinstance(a, LogF):
        k = _int_const(b)
        if k in (1, -1):
            return LogF(a.arg.power(k))
        raise UnsupportedShape("logarithm divided by a non-unit")
    if isinstance(b, LogF):
        raise UnsupportedShape("division by a logarithm")
    num, den = _to_alg(a), _to_alg(b)
    if den.has_rad and not den.rat.is_zero and den.is_sqrt:
        # keep q/(w + v sqrt p) visible for the rooted-denominator class
        if not num.has_rad or _same_radical(num, den):
            return Frac(num, den)
    return _mul(num, _inverse(den))


def _power(f, e):
    e = Fraction(e)
    if isinstance(f, ExpF):
        if e.denominator == 1 or not f.factor.has_rad:
            factor = f.factor
            if e.denominator == 1:
                factor = _int_power(factor, e.numerator)
            else:
                factor = _power(factor, e)
            return ExpF(Alg(f.arg.rat * Rat(Poly([e])), f.arg.coef * Rat(Poly([e])),
                            f.arg.base, f.arg.expo), factor)
        raise UnsupportedShape("fractional power of an exponential times a radical")
    if isinstance(f, (LogF, NestF, RatioRoot)):
        raise UnsupportedShape(f"power of {_kind_name(f)}")
    if isinstance(f, Frac):
        if e.denominator == 1:
            f = _to_alg(f)
        else:
            raise UnsupportedShape("fractional power of a quotient with a root")
    if e.denominator == 1:
        return _int_power(f, e.numerator)
    if not f.has_rad:
        r = f.rat
        if r.is_poly:
            c = r.den[0]
            return _radical(Rat(Poly([1])), r.num / c, e)
        if r.num.is_constant():
            return _radical(Rat(Poly([1])), r.den / r.num[0], -e)
        if abs(e) == HALF:
            return RatioRoot(r.num, r.den) if e > 0 else RatioRoot(r.den, r.num)
        raise UnsupportedShape("fractional power of a rational function")
    if f.rat.is_zero:
        q, v, expo = _strip_base(f.coef.num, f.coef.den, f.base, f.expo)
        c = Rat(q, v).cancel().constant()
        if c is None:
            raise UnsupportedShape("fractional power of a radical with a rational coefficient")
        try:
            k = rational_power(c, e)
        except ValueError:
            raise UnsupportedShape(f"{c}^{e} is irrational") from None
        return _radical(Rat(Poly([k])), f.base, expo * e)
    if f.is_sqrt:
        return NestF(f, e)
    raise UnsupportedShape("fractional power of a sum with a non-square root")


def _int_power(f, k):
    base = f if k >= 0 else _inverse(f)
    out = _one()
    for _ in range(abs(k)):
        out = _mul(out, base)
    return out


# --- class construction -----------------------------------------------------

def _poly_lcm_keep(b, d):
    """lcm(b, d) scaled so that it equals b whenever d divides b."""
    g = poly_gcd_primitive(b, d)
    return b * d.exact_div(g).monic()


def _strip_base(q, v, base, expo):
    """Move factors of ``base`` out of q and v into the exponent."""
    if base.degree < 1:
        return q, v, expo
    while not q.is_zero() and base.divides(q) and q.degree >= base.degree:
        q, expo = q.exact_div(base), expo + 1
    while base.divides(v) and v.degree >= base.degree:
        v, expo = v.exact_div(base), expo - 1
    return q, v, expo


def _radical_class(a):
    q, v = a.coef.num, a.coef.den
    q, v, expo = _strip_base(q, v, a.base, a.expo)
    if expo.denominator == 1:
        return _rational_class(Rat(q, v) * Rat(a.base).power(expo.numerator))
    r = -1 / expo
    base = a.base
    if Rat(q, v).cancel().constant() == 1:
        return InverseRoot(base, r)
    return GeneralRoot(q, v, base, r)


def _rational_class(r):
    r = r.cancel()
    num, den = r.num, r.den
    if num.is_zero():
        raise UnsupportedShape("the zero function has no recurrence to derive")
    if den[0] not in (0, 1):
        num, den = num / den[0], den / den[0]
    if num == 1:
        return InverseRoot(den, 1)
    return GeneralRoot(num, den, ONE, 1)


def _common(parts):
    """Polynomials sharing one denominator for a list of Rats."""
    den = parts[0].den
    for p in parts[1:]:
        den = _poly_lcm_keep(den, p.den)
    return [p.num * den.exact_div(p.den) for p in parts], den


def _reduce_triple(w, v, q):
    g = poly_gcd_primitive(poly_gcd_primitive(q, v), w) if not w.is_zero() else \
        poly_gcd_primitive(q, v)
    if g.degree > 0:
        w, v, q = w.exact_div(g), v.exact_div(g), q.exact_div(g)
    w, v, q = joint_primitive([w, v, q])
    if q.tc < 0:
        w, v, q = -w, -v, -q
    return w, v, q


def _alg_parts(a):
    """(W, U, D) with a = (W + U base^expo) / D."""
    (W, U), D = _common([a.rat, a.coef])
    return W, U, D


def rewrite_sum(u, w, q, v, p):
    """u/w + q/(v sqrt(p)) as (u v p + w q sqrt(p)) / (w v p)."""
    if w.is_zero() or v.is_zero() or p.is_zero():
        raise PreconditionError("w, v and p must be nonzero")
    if u.is_zero():
        return GeneralRoot(q, v, p, 2)
    return RootedNumerator(u * v * p, w * q, p, w * v * p, 2)


def rewrite_moebius_sqrt(u, w, v, q, p):
    """(w + u sqrt(p)) / (q + v sqrt(p)) with the root cleared from the denominator."""
    if u.is_zero() and v.is_zero():
        raise PreconditionError("no square root in numerator or denominator")
    den = v * v * p - q * q
    if den.is_zero():
        raise PreconditionError("v^2 p - q^2 vanishes: denominator is not a rooted form")
    W, U = u * v * p - q * w, w * v - q * u
    if U.is_zero():
        raise PreconditionError("the square root cancels: the quotient is rational")
    if W.is_zero():
        # pure root: U sqrt(p) / den = U / (den p^(-1/2))
        if den.tc < 0:
            U, den = -U, -den
        return GeneralRoot(U, den, p, -2)
    return RootedNumerator(W, U, p, den, 2)


def _alg_class(a):
    if not a.has_rad:
        return _rational_class(a.rat)
    if a.rat.is_zero:
        return _radical_class(a)
    W, U, D = _alg_parts(a)
    W, U, D = _reduce_triple(W, U, D)
    return RootedNumerator(W, U, a.base, D, 1 / a.expo)


def _frac_class(f):
    num, den = f.num, f.den
    W2, U2, D2 = _alg_parts(den)
    if not num.has_rad:
        qn, qd = num.rat.num, num.rat.den
        # (qn/qd) / ((W2 + U2 sqrt p)/D2)
        q, w, v = joint_primitive([qn * D2, qd * W2, qd * U2])
        if q.tc < 0:
            q, w, v = -q, -w, -v
        return RootedDenominator(q, w, v, den.base)
    W1, U1, D1 = _alg_parts(num)
    # ((W1 + U1 s)/D1) / ((W2 + U2 s)/D2) = (D2 W1 + D2 U1 s) / (D1 W2 + D1 U2 s)
    out = rewrite_moebius_sqrt(D2 * U1, D2 * W1, D1 * U2, D1 * W2, den.base)
    w, v, q = _reduce_triple(out.w, out.v, out.q)
    return RootedNumerator(w, v, out.p, q, 2)


def _const_sqrt_coef(a):
    """Constant k with the radical part equal to k sqrt(base), else None."""
    if not a.is_sqrt or a.expo != HALF:
        return None
    return a.coef.constant()


def _exp_class(f):
    arg, factor = f.arg, f.factor
    if arg.has_rad:
        k = _const_sqrt_coef(arg)
        w = arg.rat.as_poly()
        if k is None or w is None:
            raise UnsupportedShape("exp of a root needs a polynomial plus a constant times sqrt(p)")
        if not _is_unit(factor):
            raise UnsupportedShape("exp(w + sqrt(p)) times a further factor is not supported")
        return ExpPolySqrt(w, arg.base * (k * k), 1 if k > 0 else -1)
    q, v = arg.rat.num, arg.rat.den
    if _is_unit(factor):
        w = arg.rat.as_poly()
        if w is not None:
            return ExpPolySqrt(w, Poly(), 1)
        return ExpRationalTimesRoot(q, v, ONE, 1)
    if factor.has_rad and factor.rat.is_zero:
        cls = _radical_class(factor)
        if isinstance(cls, InverseRoot):
            return ExpRationalTimesRoot(q, v, cls.p, cls.r)
        raise UnsupportedShape("exp(q/v) times a radical with a non-constant coefficient")
    if not factor.has_rad:
        cls = _rational_class(factor.rat)
        if isinstance(cls, InverseRoot):
            return ExpRationalTimesRoot(q, v, cls.p, 1)
        r = factor.rat.cancel()
        if r.den.is_constant():
            # (num/c)^1 = p^(-1/r) with r = -1
            return ExpRationalTimesRoot(q, v, r.num / r.den[0], -1)
    raise UnsupportedShape("exp(q/v) times a factor that is not a single root of a polynomial")


def _nest_class(f):
    inner = f.inner
    w = inner.rat.as_poly()
    k = _const_sqrt_coef(inner)
    if w is None or k is None:
        raise UnsupportedShape("nested root needs a polynomial plus a constant times sqrt(p)")
    if k < 0:
        raise UnsupportedShape("nested root of w - sqrt(p) is not supported")
    return NestedSqrt(w, inner.base * (k * k), 1 / f.expo)


def _to_class(f):
    if isinstance(f, Alg):
        return _alg_class(f)
    if isinstance(f, Frac):
        return _frac_class(f)
    if isinstance(f, ExpF):
        return _exp_class(f)
    if isinstance(f, LogF):
        return LogRational(f.arg.num, f.arg.den)
    if isinstance(f, NestF):
        return _nest_class(f)
    if isinstance(f, RatioRoot):
        return SqrtRatio(f.q, f.p)
    raise UnsupportedShape("no class matches this expression")


def classify(node, verify_terms=12):
    """The generating-function class of an expression tree.

    Preconditions are validated; unless ``verify_terms`` is 0 the class is
    also expanded and compared with a direct expansion of the tree, which
    guards against branch and normalization slips.
    """
    try:
        cls = _to_class(_form(node))
    except ArithmeticError as exc:
        raise UnsupportedShape(str(exc)) from None
    cls.validate()
    if verify_terms:
        from .series import expression_series, oracle_expand
        try:
            direct = expression_series(node, verify_terms)
        except (UnsupportedShape, ZeroDivisionError, ValueError):
            direct = None
        if direct is not None and oracle_expand(cls, verify_terms).coeffs != direct.coeffs:
            raise UnsupportedShape(
                f"classified as {cls.kind} but the expansions disagree (branch mismatch)")
    return cls


def classify_text(text, verify_terms=12):
    return classify(E.parse_expression(text), verify_terms)


def expression_to_poly(node):
    """Expand a tree that must denote a polynomial."""
    f = _form(node)
    if not isinstance(f, Alg) or f.has_rad:
        raise UnsupportedShape("expected a polynomial")
    p = f.rat.cancel().as_poly()
    if p is None:
        raise UnsupportedShape("expected a polynomial, found a rational function")
    return p


def parse_poly(text):
    return expression_to_poly(E.parse_expression(text))
