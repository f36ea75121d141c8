from fractions import Fraction

from holorec.exactmath import Poly


def P(*cs):
    return Poly([Fraction(c) for c in cs])


def ints(seq):
    return [int(t) if Fraction(t).denominator == 1 else Fraction(t) for t in seq]


# --- random class instances -------------------------------------------------

from holorec.errors import PreconditionError, UnsupportedShape  # noqa: E402
from holorec.gfclass import (  # noqa: E402
    ExpPolySqrt, ExpRationalTimesRoot, GeneralRoot, InverseRoot, LogRational, NestedSqrt,
    PowerOfFirstOrder, RootedDenominator, RootedNumerator, SqrtRatio,
)
from holorec.series import oracle_expand  # noqa: E402

ROOTS = [Fraction(2), Fraction(3), Fraction(-2), Fraction(2, 3), Fraction(1), Fraction(-1, 2),
         Fraction(3, 2), Fraction(4)]


def rand_poly(rng, deg=4, c0=None, nonzero=False):
    d = rng.randint(0, deg)
    cs = [rng.randint(-9, 9) for _ in range(d + 1)]
    if c0 is not None:
        cs[0] = c0
    p = Poly(cs)
    if nonzero and p.is_zero():
        return Poly([1])
    return p


def _unit(rng, deg=4):
    return rand_poly(rng, deg, c0=1)


def _r_th_power(rng, r):
    # a rational whose 1/r-th power is rational
    base = rng.choice([1, 2, 3])
    return Fraction(base) ** r.numerator if r > 0 else Fraction(1, base ** r.numerator)


def _nested(rng):
    r = rng.choice([Fraction(2), Fraction(3), Fraction(-2), Fraction(3, 2)])
    c = rng.choice([1, 2, 3])
    target = Fraction(rng.choice([1, 2])) ** abs(r.numerator)
    w0 = target - c
    p = rand_poly(rng, 4, c0=c * c)
    return NestedSqrt(rand_poly(rng, 3, c0=w0), p, r)


def _exp_sqrt(rng):
    sign = rng.choice([1, -1])
    c = rng.choice([1, 2, 3])
    return ExpPolySqrt(rand_poly(rng, 3, c0=-sign * c), rand_poly(rng, 4, c0=c * c), sign)


MAKERS = {
    "InverseRoot": lambda rng: InverseRoot(_unit(rng), rng.choice(ROOTS)),
    "GeneralRoot": lambda rng: GeneralRoot(rand_poly(rng, 4, nonzero=True),
                                           rand_poly(rng, 3, c0=rng.choice([1, -1, 2, 3])),
                                           _unit(rng), rng.choice(ROOTS)),
    "SqrtRatio": lambda rng: SqrtRatio(rand_poly(rng, 4, c0=rng.choice([1, 4, 9])), _unit(rng)),
    "RootedDenominator": lambda rng: RootedDenominator(
        rand_poly(rng, 3, nonzero=True), rand_poly(rng, 3, c0=rng.choice([0, 1, 2])),
        rand_poly(rng, 3, c0=rng.choice([1, -3, 2])), rand_poly(rng, 4, c0=rng.choice([1, 4, 9]))),
    "RootedNumerator": lambda rng: RootedNumerator(
        rand_poly(rng, 3), rand_poly(rng, 3, nonzero=True), _unit(rng),
        rand_poly(rng, 3, c0=rng.choice([1, -1, 2])), rng.choice(ROOTS)),
    "NestedSqrt": _nested,
    "ExpPolySqrt": _exp_sqrt,
    "ExpRationalTimesRoot": lambda rng: ExpRationalTimesRoot(
        rand_poly(rng, 3, c0=0), rand_poly(rng, 3, c0=rng.choice([1, -1, 2])), _unit(rng),
        rng.choice(ROOTS)),
    "LogRational": lambda rng: (lambda c: LogRational(rand_poly(rng, 4, c0=c), rand_poly(rng, 4, c0=c)))(
        rng.choice([1, -2, 3])),
    "PowerOfFirstOrder": lambda rng: PowerOfFirstOrder(
        rand_poly(rng, 3, c0=rng.choice([1, -1, 2])), rand_poly(rng, 3), rng.choice(ROOTS)),
}


def random_instances(rng, count, order=8):
    """``count`` valid instances cycling through every class.

    Draws that violate a precondition, or whose series has a pole, are
    redrawn; nothing else is filtered.
    """
    names = sorted(MAKERS)
    out = []
    i = 0
    while len(out) < count:
        name = names[i % len(names)]
        try:
            cls = MAKERS[name](rng).validate()
            oracle_expand(cls, order)
        except (PreconditionError, UnsupportedShape, ZeroDivisionError):
            continue
        out.append(cls)
        i += 1
    return out
