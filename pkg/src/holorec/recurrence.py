"""
P-finite recurrences: construction from ODEs and closed forms, certification,
the homogenize / EGF / LGF / shortening transformations, and term generation.

A :class:`PRecurrence` states ``sum_j C_j(n) g_{n-j} = 0`` for every
``n >= n_min``, where terms with negative index are zero.  For strided
sequences (hypergeometric series supported on ``x^(stride*m + offset)``) the
relation and the initial terms live on the lattice ``h_m = g_{stride*m+offset}``.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import DerivationError, RecurrenceError, ShorteningError, VerificationError
from .exactmath import (
    Poly, as_fraction, falling_factorial_poly, integer_roots, poly_gcd_many,
)
from .gfclass import (
    ExpPolySqrt, Hypergeometric, InverseRoot, NestedSqrt,
)
from .ode import (
    Degeneracy, derive_ode, detect_degenerate, exp_sqrt_trq, nested_sqrt_trq,
    reroute_degenerate,
)

__all__ = [
    "PRecurrence", "InhomPRecurrence", "TermSource", "ode_to_recurrence",
    "closed_form_recurrence", "certify", "normalize_coeffs", "homogenize",
    "to_egf", "to_lgf", "shorten", "iter_terms", "generate_terms",
    "relation_residual",
]

DEFAULT_GUARD = 10


@dataclass(frozen=True)
class PRecurrence:
    """``sum_j coeffs[j](n) * g_{n-j} = 0`` for ``n >= n_min``.

    ``initial`` holds ``g_0 .. g_{k-1}``, enough to start forward substitution:
    every index below ``n_min`` and every integer root of ``C_0`` is covered.
    """

    coeffs: tuple
    n_min: int = 0
    initial: tuple = ()
    stride: int = 1
    offset: int = 0

    def __post_init__(self):
        cs = tuple(c if isinstance(c, Poly) else Poly(c) for c in self.coeffs)
        if not cs or cs[0].is_zero():
            raise RecurrenceError("leading recurrence coefficient C_0 vanishes identically")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "initial", tuple(as_fraction(c) for c in self.initial))
        if self.stride < 1 or self.offset < 0:
            raise RecurrenceError("stride must be >= 1 and offset >= 0")

    @property
    def span(self):
        return len(self.coeffs) - 1

    @property
    def degree(self):
        return max(c.degree for c in self.coeffs)

    def with_initial(self, initial):
        return PRecurrence(self.coeffs, self.n_min, tuple(initial), self.stride, self.offset)

    def proportional_to(self, other):
        """True when the coefficient vectors differ by a rational-function factor."""
        if self.span != other.span:
            return False
        a0, b0 = self.coeffs[0], other.coeffs[0]
        return all((a * b0 - b * a0).is_zero() for a, b in zip(self.coeffs, other.coeffs))

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            idx = "g(n)" if j == 0 else f"g(n-{j})"
            parts.append(f"({c.to_str('n')})*{idx}")
        lattice = "" if self.stride == 1 and self.offset == 0 else \
            f"  [g(n) = a({self.stride}n+{self.offset})]"
        return " + ".join(parts) + f" = 0,  n >= {self.n_min}" + lattice


@dataclass(frozen=True)
class InhomPRecurrence:
    """``sum_j coeffs[j](n) g_{n-j} + inhom(n) = 0`` for ``n >= n_min``."""

    coeffs: tuple
    inhom: Poly
    n_min: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(
            c if isinstance(c, Poly) else Poly(c) for c in self.coeffs))
        if not isinstance(self.inhom, Poly):
            object.__setattr__(self, "inhom", Poly(self.inhom))


class TermSource:
    """Caching wrapper around a function ``order -> [g_0, ..., g_order]``."""

    def __init__(self, fn):
        self._fn = fn
        self._terms = []

    @classmethod
    def wrap(cls, source):
        if source is None or isinstance(source, TermSource):
            return source
        if callable(source):
            return cls(source)
        terms = [as_fraction(t) for t in source]

        def fixed(order):
            if order >= len(terms):
                raise VerificationError(
                    f"need {order + 1} terms to certify, only {len(terms)} supplied")
            return terms[: order + 1]
        return cls(fixed)

    def upto(self, order):
        if order >= len(self._terms):
            want = max(order, 2 * len(self._terms))
            self._terms = [as_fraction(t) for t in self._fn(want)]
            if len(self._terms) <= order:
                raise VerificationError("term source returned too few terms")
        return self._terms[: order + 1]


# --- core helpers -----------------------------------------------------------

def relation_residual(coeffs, terms, n):
    """``sum_j C_j(n) g_{n-j}`` with zero padding below index 0."""
    total = Fraction(0)
    for j, c in enumerate(coeffs):
        k = n - j
        if k >= 0 and terms[k]:
            total += c(n) * terms[k]
    return total


def normalize_coeffs(coeffs):
    """Strip the polynomial gcd, clear to primitive integers, make lc(C_0) > 0.

    Returns (coeffs, removed_gcd).
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs or coeffs[0].is_zero():
        raise RecurrenceError("cannot normalize a recurrence with vanishing C_0")
    g = poly_gcd_many(coeffs)
    if g.degree > 0:
        coeffs = [c.exact_div(g) for c in coeffs]
    from math import gcd, lcm
    den, num = 1, 0
    for c in coeffs:
        for a in c.coeffs:
            den = lcm(den, a.denominator)
            num = gcd(num, a.numerator)
    scale = Fraction(den, num)
    if coeffs[0].lc < 0:
        scale = -scale
    return [c * scale for c in coeffs], g


def _strip_leading(coeffs):
    """Drop identically-zero leading coefficients; return (coeffs, shift)."""
    s = 0
    while s < len(coeffs) and coeffs[s].is_zero():
        s += 1
    if s == len(coeffs):
        raise DerivationError("recurrence is identically zero")
    shifted = [c.shift(s) for c in coeffs[s:]]
    while shifted and shifted[-1].is_zero():
        shifted.pop()
    return shifted, s


def _roots_at_least(poly, lo):
    if poly.is_zero() or poly.degree < 1:
        return []
    return [z for z in integer_roots(poly) if z >= lo]


def certify(coeffs, source, n_bound, guard=DEFAULT_GUARD, removed=None, stride=1, offset=0):
    """Certify a relation against reference terms and tighten its n_min.

    ``n_bound`` is an index from which the relation is known to hold (before
    dividing out ``removed``).  The relation is checked on the guard window
    above the bound, then probed downward while it keeps holding.
    """
    source = TermSource.wrap(source)
    if source is None:
        raise VerificationError("certification needs reference terms")
    bound = max(n_bound, 0)
    if removed is not None:
        roots = _roots_at_least(removed, 0)
        if roots:
            bound = max(bound, roots[-1] + 1)
    c0_roots = _roots_at_least(coeffs[0], 0)
    top = bound + guard
    if c0_roots:
        top = max(top, c0_roots[-1] + 1)
    terms = source.upto(top)
    for n in range(bound, top + 1):
        if relation_residual(coeffs, terms, n) != 0:
            raise VerificationError(f"relation fails at n = {n} against reference terms")
    n_min = bound
    while n_min > 0 and relation_residual(coeffs, terms, n_min - 1) == 0:
        n_min -= 1
    k = n_min
    late = [z for z in c0_roots if z >= n_min]
    if late:
        k = max(k, late[-1] + 1)
    return PRecurrence(tuple(coeffs), n_min, tuple(terms[:k]), stride, offset)


def _finish(raw, source, bound, guard, stride=1, offset=0):
    """Normalize raw coefficients and certify (or just bound) the relation."""
    coeffs, removed = normalize_coeffs(raw)
    source = TermSource.wrap(source)
    if source is None:
        bound = max(bound, 0)
        roots = _roots_at_least(removed, 0) if removed.degree > 0 else []
        if roots:
            bound = max(bound, roots[-1] + 1)
        return PRecurrence(tuple(coeffs), bound, (), stride, offset)
    return certify(coeffs, source, bound, guard, removed, stride, offset)


# --- construction ---------------------------------------------------------

def ode_recurrence_coeffs(ode):
    """Raw coefficients of the recurrence of an ODE and its homogeneity bound.

    ``sum_j C_j(n) g_{n-j} = [x^(n-K)] H`` holds for every integer n, with
    ``C_j(n) = sum_k A_{k, j-K+k} ff(n-j, k)``.  Returns ``(coeffs, bound)``
    after dropping vanishing leading coefficients; the relation is
    homogeneous for ``n >= bound``.
    """
    K = ode.order
    J = max(a.degree + K - k for k, a in enumerate(ode.coeffs) if not a.is_zero())
    raw = []
    for j in range(J + 1):
        c = Poly()
        for k, a in enumerate(ode.coeffs):
            i = j - K + k
            if 0 <= i <= a.degree and a[i]:
                c = c + falling_factorial_poly(k, -j) * a[i]
        raw.append(c)
    coeffs, s = _strip_leading(raw)
    bound = 0 if ode.homogeneous else ode.inhom.degree + K - s + 1
    return coeffs, bound


def ode_to_recurrence(ode, source=None, guard=DEFAULT_GUARD):
    """P-finite recurrence of the power-series solution of ``ode``.

    With a term ``source`` (callable ``order -> terms`` or a sequence) the
    result is certified and carries its initial segment; without one, n_min
    is the theoretical bound and ``initial`` is empty.
    """
    if ode.order < 1:
        raise DerivationError("ODE order must be at least 1")
    coeffs, bound = ode_recurrence_coeffs(ode)
    return _finish(coeffs, source, bound, guard)


def _first_order_closed(R, Q):
    """Coefficients (n-j) R_j + Q_{j-1}."""
    J = max(R.degree, Q.degree + 1)
    return [Poly([-j, 1]) * R[j] + Q[j - 1] for j in range(J + 1)]


def _trq_closed(T, R, Q):
    """Coefficients (n-j)(n-j-1) T_j + (n-j) R_{j-1} + Q_{j-2}."""
    J = max(T.degree, R.degree + 1, Q.degree + 2)
    return [falling_factorial_poly(2, -j) * T[j] + Poly([-j, 1]) * R[j - 1] + Q[j - 2]
            for j in range(J + 1)]


def _poch_poly(a, shift):
    """``a + n + shift`` as a polynomial in n."""
    return Poly([as_fraction(a) + shift, 1])


def closed_form_recurrence(cls, source=None, guard=DEFAULT_GUARD):
    """Recurrence taken directly from the per-class closed-form theorems."""
    cls.validate()
    if isinstance(cls, Hypergeometric):
        # c m prod(beta + m - 1) h_m = prod(alpha + m - 1) h_{m-1}
        c0 = Poly([0, 1]) * cls.c
        for b in cls.betas:
            c0 = c0 * _poch_poly(b, -1)
        c1 = Poly([-1])
        for a in cls.alphas:
            c1 = c1 * _poch_poly(a, -1)
        if c1.is_zero():
            c1 = Poly()
        return _finish([c0, c1], _lattice_source(source, cls.r, cls.t), 1, guard,
                       cls.r, cls.t)
    if isinstance(cls, NestedSqrt) and (
            cls.p.is_zero() or detect_degenerate(cls.w, cls.p) is not Degeneracy.REGULAR):
        return closed_form_recurrence(reroute_degenerate(cls), source, guard)
    if isinstance(cls, InverseRoot):
        a, b = cls.r.numerator, cls.r.denominator
        # sum_t (r n - r t + t) p_t g_{n-t}, scaled by the denominator of r
        raw = [Poly([-a * t + b * t, a]) * cls.p[t] for t in range(cls.p.degree + 1)]
        coeffs, s = _strip_leading(raw)
        return _finish(coeffs, source, 0, guard)
    if isinstance(cls, NestedSqrt):
        T, R, Q = nested_sqrt_trq(cls.w, cls.p, cls.r)
        coeffs, s = _strip_leading(_trq_closed(T, R, Q))
        return _finish(coeffs, source, 0, guard)
    if isinstance(cls, ExpPolySqrt) and not cls.p.is_constant():
        T, R, Q = exp_sqrt_trq(cls.w, cls.p, cls.sign)
        coeffs, s = _strip_leading(_trq_closed(T, R, Q))
        return _finish(coeffs, source, 0, guard)
    ode = derive_ode(cls)
    if ode.order != 1:
        raise DerivationError(f"no first-order closed form for {type(cls).__name__}")
    Q, R = ode.coeffs
    coeffs, s = _strip_leading(_first_order_closed(R, Q))
    bound = 0 if ode.homogeneous else ode.inhom.degree + 1 - s + 1
    return _finish(coeffs, source, bound, guard)


def _lattice_source(source, stride, offset):
    source = TermSource.wrap(source)
    if source is None or (stride == 1 and offset == 0):
        return source

    def lattice(m):
        full = source.upto(stride * m + offset)
        return full[offset::stride][: m + 1]
    return TermSource(lattice)


# --- transformations ------------------------------------------------------

def homogenize(rec, source=None, guard=DEFAULT_GUARD):
    """Eliminate a polynomial inhomogeneity I(n); the span grows by one.

    ``C_j(n) = I(n-1) P_j(n) - I(n) P_{j-1}(n-1)``.
    """
    I = rec.inhom
    if I.is_zero():
        raise RecurrenceError("recurrence is already homogeneous")
    P = list(rec.coeffs)
    I1 = I.shift(-1)
    out = []
    for j in range(len(P) + 1):
        c = Poly()
        if j < len(P):
            c = c + I1 * P[j]
        if j >= 1:
            c = c - I * P[j - 1].shift(-1)
        out.append(c)
    coeffs, s = _strip_leading(out)
    return _finish(coeffs, source, rec.n_min + 1 - s, guard)


def _transformed_source(rec, source, factor):
    """Terms ``factor(n) * g_n`` built from the source recurrence."""
    src = TermSource.wrap(source)
    if src is None:
        if not rec.initial and rec.n_min > 0:
            raise RecurrenceError("transformation needs initial terms or a term source")

        def from_rec(order):
            return [factor(n) * t for n, t in enumerate(generate_terms(rec, order))]
        return TermSource(from_rec)

    def from_src(order):
        return [factor(n) * t for n, t in enumerate(src.upto(order))]
    return TermSource(from_src)


def to_egf(rec, source=None, guard=DEFAULT_GUARD):
    """Recurrence of ``b_n = n! g_n``: C_j(n) times (n-j+1)...(n)."""
    if rec.stride != 1 or rec.offset != 0:
        raise RecurrenceError("EGF conversion needs stride 1")
    raw = [c * falling_factorial_poly(j) for j, c in enumerate(rec.coeffs)]
    return _finish(raw, _transformed_source(rec, source, factorial), rec.n_min, guard)


def to_lgf(rec, source=None, guard=DEFAULT_GUARD):
    """Recurrence of ``c_n = n g_n`` (c_0 = 0 by construction).

    Since g_{n-j} = c_{n-j}/(n-j), coefficient j is multiplied by the product
    of (n-i) over the other indices i, which clears every denominator.
    """
    if rec.stride != 1 or rec.offset != 0:
        raise RecurrenceError("LGF conversion needs stride 1")
    if all(c.is_zero() for c in rec.coeffs):
        raise RecurrenceError("zero recurrence")
    J = rec.span
    raw = []
    for j, c in enumerate(rec.coeffs):
        m = Poly([1])
        for i in range(J + 1):
            if i != j:
                m = m * Poly([-i, 1])
        raw.append(c * m)
    bound = max(rec.n_min, J + 1)
    return _finish(raw, _transformed_source(rec, source, lambda n: n), bound, guard)


def shorten(rec1, rec2, source=None, guard=DEFAULT_GUARD):
    """Cross-multiply by the other leading coefficient and subtract.

    The g_n terms cancel, leaving a relation one term shorter than ``rec1``.
    Requires ``span(rec2) <= span(rec1)``; the result's degree is at most the
    sum of the input degrees.
    """
    if rec1.stride != rec2.stride or rec1.offset != rec2.offset:
        raise ShorteningError("recurrences live on different lattices")
    if rec2.span > rec1.span:
        raise ShorteningError("second recurrence is longer than the first")
    if rec1.span < 2:
        raise ShorteningError("recurrence already has minimal span")
    a0, b0 = rec1.coeffs[0], rec2.coeffs[0]
    d = []
    for j in range(1, rec1.span + 1):
        bj = rec2.coeffs[j] if j <= rec2.span else Poly()
        d.append(b0 * rec1.coeffs[j] - a0 * bj)
    if all(c.is_zero() for c in d):
        raise ShorteningError("leading elimination gives the zero recurrence (inputs are proportional)")
    # relation holds at n + 1 for n + 1 >= max n_min; re-index to g_{n}
    shifted = [c.shift(1) for c in d]
    coeffs, s = _strip_leading(shifted)
    if len(coeffs) < 2:
        raise ShorteningError("elimination leaves a single-term relation")
    bound = max(rec1.n_min, rec2.n_min) - 1 - s
    src = TermSource.wrap(source)
    if src is None:
        src = _transformed_source(rec1, None, lambda n: 1)
    out = _finish(coeffs, src, bound, guard, rec1.stride, rec1.offset)
    if out.degree > rec1.degree + rec2.degree:
        raise ShorteningError("shortened recurrence exceeds the combined degree")
    return out


# --- generation -----------------------------------------------------------

def _int_coeffs(rec):
    try:
        return [c.int_coeffs() for c in rec.coeffs]
    except ValueError:
        return None


def _horner(cs, n):
    acc = 0
    for c in reversed(cs):
        acc = acc * n + c
    return acc


def _iter_lattice(rec, initial):
    """Yield h_0, h_1, ... on the recurrence's own index lattice."""
    J = rec.span
    window = deque(maxlen=max(J, 1))
    int_cs = _int_coeffs(rec)
    frac_cs = [c.coeffs for c in rec.coeffs]
    exact_int = int_cs is not None and all(t.denominator == 1 for t in initial)
    n = 0
    for t in initial:
        val = t.numerator if exact_int else t
        window.appendleft(val)
        yield t
        n += 1
    if n < rec.n_min:
        raise RecurrenceError(
            f"initial segment has {n} terms but the relation only holds from n = {rec.n_min}")
    while True:
        if exact_int:
            c0 = _horner(int_cs[0], n)
            if c0 == 0:
                raise RecurrenceError(f"C_0 vanishes at n = {n}, beyond the initial segment")
            s = 0
            for j in range(1, J + 1):
                if j <= len(window):
                    s += _horner(int_cs[j], n) * window[j - 1]
            q, r = divmod(-s, c0)
            if r == 0:
                window.appendleft(q)
                yield Fraction(q)
                n += 1
                continue
            # leave the integer fast path for good
            exact_int = False
            window = deque((Fraction(v) for v in window), maxlen=window.maxlen)
        c0 = _horner(frac_cs[0], n)
        if c0 == 0:
            raise RecurrenceError(f"C_0 vanishes at n = {n}, beyond the initial segment")
        s = Fraction(0)
        for j in range(1, J + 1):
            if j <= len(window):
                s += _horner(frac_cs[j], n) * window[j - 1]
        val = -s / c0
        window.appendleft(val)
        yield val
        n += 1


def iter_terms(rec, initial=None):
    """Stream g_0, g_1, ... using only the last ``span`` terms.

    Strided recurrences are expanded back to the full index set with exact
    zeros off the lattice.
    """
    init = rec.initial if initial is None else tuple(as_fraction(t) for t in initial)
    lattice = _iter_lattice(rec, init)
    if rec.stride == 1 and rec.offset == 0:
        yield from lattice
        return
    zero = Fraction(0)
    for _ in range(rec.offset):
        yield zero
    for h in lattice:
        yield h
        for _ in range(rec.stride - 1):
            yield zero


def generate_terms(rec, N, initial=None):
    """Terms g_0 .. g_N."""
    if N < 0:
        return []
    out = []
    for t in iter_terms(rec, initial):
        out.append(t)
        if len(out) > N:
            break
    return out
