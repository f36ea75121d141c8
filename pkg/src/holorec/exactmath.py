"""
Exact rational numbers and dense univariate polynomials.

Rationals are plain :class:`fractions.Fraction` values.  :class:`Poly` is an
immutable dense polynomial over the rationals; the same type is used for
polynomials in ``x`` (generating-function side) and in ``n`` (recurrence
coefficients).
"""

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm

__all__ = [
    "Fraction",
    "Poly",
    "as_fraction",
    "poly_mul",
    "poly_derivative",
    "poly_gcd_primitive",
    "poly_gcd_many",
    "power_to_falling",
    "falling_to_power",
    "stirling2",
    "falling_factorial_poly",
    "rising_factorial_poly",
    "integer_roots",
    "rational_power",
]


def as_fraction(value):
    """Coerce an int, Fraction or ``"a/b"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class Poly:
    """Dense polynomial with Fraction coefficients, ``coeffs[i]`` multiplies ``var**i``.

    Trailing zeros are trimmed, so the zero polynomial has ``coeffs == ()`` and
    degree -1.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots):
        out = cls([1])
        for r in roots:
            out = out * cls([-as_fraction(r), 1])
        return out

    # basic queries
    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def lc(self):
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def tc(self):
        """Lowest-order nonzero coefficient."""
        for c in self.coeffs:
            if c:
                return c
        return Fraction(0)

    def valuation(self):
        """Exponent of the lowest nonzero term; -1 for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_fraction(other)
            return Poly([c * a for a in self.coeffs])
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, scalar):
        c = as_fraction(scalar)
        return Poly([a / c for a in self.coeffs])

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        quo = [Fraction(0)] * (len(rem) - dq)
        lead = other.lc
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quo[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= c * b
        return Poly(quo), Poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other):
        """True when ``self`` divides ``other`` exactly."""
        return (other % self).is_zero()

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def derivative(self):
        return poly_derivative(self)

    def shift(self, k):
        """Return ``p(var + k)``."""
        k = as_fraction(k)
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * Poly([k, 1]) + c
        return out

    def compose(self, other):
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * other + c
        return out

    def monic(self):
        if self.is_zero():
            return self
        return self / self.lc

    def content(self):
        """Positive rational ``c`` with ``self / c`` primitive over the integers."""
        if self.is_zero():
            return Fraction(1)
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        num = reduce(gcd, (c.numerator for c in self.coeffs), 0)
        return Fraction(num, den)

    def primitive(self):
        """Integer-coefficient primitive part with positive lowest-order coefficient."""
        if self.is_zero():
            return self
        p = self / self.content()
        return -p if p.tc < 0 else p

    def int_coeffs(self):
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("polynomial has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    # display
    def to_str(self, var="x"):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                if mag == 1:
                    body = mono
                elif mag.denominator == 1:
                    body = f"{mag}*{mono}"
                else:
                    body = f"({mag})*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r})"


def poly_mul(a, b):
    """Exact product of two polynomials."""
    if a.is_zero() or b.is_zero():
        return Poly()
    out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ca in enumerate(a.coeffs):
        if ca:
            for j, cb in enumerate(b.coeffs):
                out[i + j] += ca * cb
    return Poly(out)


def poly_derivative(a):
    return Poly([i * c for i, c in enumerate(a.coeffs)][1:])


def poly_gcd_primitive(a, b):
    """Monic greatest common divisor over the rationals (Euclid)."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    while not b.is_zero():
        a, b = b, a % b
        # keep coefficient growth in check
        if not b.is_zero():
            b = b.monic()
    return a.monic()


def poly_gcd_many(polys):
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise ValueError("gcd of zero polynomials is undefined")
    return reduce(poly_gcd_primitive, nonzero[1:], nonzero[0].monic())


@lru_cache(maxsize=None)
def stirling2(t, m):
    """Stirling number of the second kind S(t, m)."""
    if t == m:
        return 1
    if m == 0 or m > t:
        return 0
    return m * stirling2(t - 1, m) + stirling2(t - 1, m - 1)


def falling_factorial_poly(k, shift=0):
    """``(n+shift)(n+shift-1)...(n+shift-k+1)`` as a polynomial in n."""
    out = Poly([1])
    for i in range(k):
        out = out * Poly([shift - i, 1])
    return out


def rising_factorial_poly(k, shift=0):
    """``(n+shift)(n+shift+1)...(n+shift+k-1)`` as a polynomial in n."""
    out = Poly([1])
    for i in range(k):
        out = out * Poly([shift + i, 1])
    return out


def power_to_falling(poly_in_n):
    """Coefficients s_m with ``poly(n) = sum_m s_m * n(n-1)...(n-m+1)``."""
    out = [Fraction(0)] * len(poly_in_n.coeffs)
    for t, c in enumerate(poly_in_n.coeffs):
        for m in range(t + 1):
            out[m] += c * stirling2(t, m)
    while out and out[-1] == 0:
        out.pop()
    return out


def falling_to_power(coeffs):
    """Inverse of :func:`power_to_falling`."""
    out = Poly()
    for m, c in enumerate(coeffs):
        out = out + falling_factorial_poly(m) * as_fraction(c)
    return out


def integer_roots(p):
    """Sorted integer roots of a nonzero rational polynomial."""
    if p.is_zero():
        raise ValueError("zero polynomial has every integer as a root")
    v = p.valuation()
    roots = {0} if v > 0 else set()
    q = Poly(p.coeffs[v:]).primitive()
    if q.degree < 1:
        return sorted(roots)
    c0 = abs(q.coeffs[0].numerator)
    divs = set()
    d = 1
    while d * d <= c0:
        if c0 % d == 0:
            divs.update((d, c0 // d))
        d += 1
    for d in divs:
        for cand in (d, -d):
            if q(cand) == 0:
                roots.add(cand)
    return sorted(roots)


def _int_nth_root(a, k):
    """Exact nonnegative integer k-th root of a >= 0, or None."""
    if a < 2:
        return a
    x = 1 << ((a.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + a // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == a else None


def rational_power(c, alpha):
    """Exact real value of ``c**alpha`` for rational c and alpha.

    Raises ValueError when the result is irrational or not real.
    """
    c, alpha = as_fraction(c), as_fraction(alpha)
    if alpha == 0:
        return Fraction(1)
    if c == 0:
        if alpha > 0:
            return Fraction(0)
        raise ValueError("zero to a negative power")
    k = alpha.denominator
    neg = c < 0
    if neg and k % 2 == 0:
        raise ValueError(f"{c}^{alpha} is not real")
    num = _int_nth_root(abs(c.numerator), k)
    den = _int_nth_root(c.denominator, k)
    if num is None or den is None:
        raise ValueError(f"{c}^{alpha} is irrational")
    root = Fraction(-num if neg else num, den)
    return root ** alpha.numerator
