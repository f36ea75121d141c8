"""
Embedded OEIS fixtures.

Each row pairs a generating-function class with an OEIS identifier.  The
``known_prefix`` tuples were produced once by an independent sympy series
expansion and frozen here; rows whose coefficients are not all integers carry
no prefix and are certified against the oracle only.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import HolorecError
from .exactmath import Poly
from .gfclass import (
    ExpRationalTimesRoot, GeneralRoot, InverseRoot, RootedDenominator, RootedNumerator,
)
from .pipeline import derive, oracle_source, scaled_terms
from .recurrence import closed_form_recurrence, generate_terms
from .series import oracle_expand

__all__ = [
    "Fixture", "FixtureResult", "FIXTURES", "fixture", "run_fixture", "run_fixture_suite",
    "closed_form_agreement",
]

OGF, EGF = "OGF", "EGF"


def _p(*cs):
    return Poly([Fraction(c) for c in cs])


@dataclass(frozen=True)
class Fixture:
    oeis_id: str
    cls: object
    interpretation: str = OGF
    known_prefix: tuple = None
    label: str = ""
    bfile_path: str = None


@dataclass
class FixtureResult:
    fixture: Fixture
    ok: bool
    terms: int = 0
    seconds: float = 0.0
    message: str = ""
    recurrence: object = field(default=None, repr=False)


def _inverse_root(oeis, p, r, prefix, label):
    return Fixture(oeis, InverseRoot(p, Fraction(r)), OGF, prefix, label)


_ROOT2 = [
    ("A002426", _p(1, -2, -3), (1, 1, 3, 7, 19, 51, 141, 393, 1107, 3139, 8953, 25653)),
    ("A122868", _p(1, -6, -3), (1, 3, 15, 81, 459, 2673, 15849, 95175, 576963, 3523257, 21640365, 133549155)),
    ("A001850", _p(1, -6, 1), (1, 3, 13, 63, 321, 1683, 8989, 48639, 265729, 1462563, 8097453, 45046719)),
    ("A026375", _p(1, -6, 5), (1, 3, 11, 45, 195, 873, 3989, 18483, 86515, 408105, 1936881, 9238023)),
    ("A006139", _p(1, -4, -4), (1, 2, 8, 32, 136, 592, 2624, 11776, 53344, 243392, 1116928, 5149696)),
    ("A000984", _p(1, -4), (1, 2, 6, 20, 70, 252, 924, 3432, 12870, 48620, 184756, 705432)),
    ("A098331", _p(1, -2, 5), (1, 1, -1, -5, -5, 11, 41, 29, -125, -365, -131, 1409)),
    ("A126869", _p(1, 0, -4), (1, 0, 2, 0, 6, 0, 20, 0, 70, 0, 252, 0)),
    ("A115962", _p(1, 0, -4, -4), (1, 0, 2, 2, 6, 12, 26, 60, 130, 300, 672, 1540)),
    ("A098477", _p(1, -2, -7, 8), (1, 1, 5, 9, 37, 89, 325, 905, 3109, 9337, 31173, 97449)),
    ("A026569", _p(1, -2, -3, 4), (1, 1, 3, 5, 13, 27, 67, 153, 375, 893, 2189, 5319)),
    ("A191354", _p(1, -2, -3, -4), (1, 1, 3, 9, 25, 75, 227, 693, 2139, 6645, 20757, 65139)),
    ("A098479", _p(1, -2, 1, -4), (1, 1, 1, 3, 7, 13, 27, 61, 133, 287, 633, 1407)),
    ("A098480", _p(1, -2, 1, -8), (1, 1, 1, 5, 13, 25, 65, 181, 445, 1113, 2945, 7685)),
    ("A137635", _p(1, -4, -8, -4), (1, 2, 10, 46, 226, 1136, 5810, 30080, 157162, 826992, 4376408, 23267332)),
    ("A165431", _p(1, -4, 0, 8), (1, 2, 6, 16, 46, 132, 388, 1152, 3462, 10492, 32036, 98400)),
    ("A157004", _p(1, -4, 0, 4), (1, 2, 6, 18, 58, 192, 650, 2232, 7746, 27096, 95376, 337404)),
]

_ROOT_R = [
    ("A002457", _p(1, -4), Fraction(2, 3), (1, 6, 30, 140, 630, 2772, 12012, 51480, 218790, 923780, 3879876, 16224936)),
    ("A115902", _p(1, -8), Fraction(2, 3), (1, 12, 120, 1120, 10080, 88704, 768768, 6589440, 56010240, 472975360, 3972993024, 33228668928)),
    ("A004998", _p(1, -36), Fraction(6, 11), (1, 66, 3366, 154836, 6735366, 282885372, 11598300252, 467245810152, 18573020953542, 730538824172652, 28491014142733428, 1103379274982221848)),
    ("A298308", _p(1, 9, 0, 9), -3, (1, 3, -9, 48, -288, 1917, -13563, 99927, -758079, 5879754, -46401687, 371336886)),
    ("A095776", _p(1, -9, 0, -27), 3, (1, 3, 18, 135, 1053, 8505, 70470, 594135, 5073840, 43761870, 380433024, 3328474032)),
]

# (q, p, v) with r = 2
_GENERAL = [
    ("A110170", _p(1, -1), _p(1, -6, 1), _p(1), (1, 2, 10, 50, 258, 1362, 7306, 39650, 217090, 1196834, 6634890, 36949266)),
    ("A241023", _p(1, 1), _p(1, -6, 1), _p(1), (1, 4, 16, 76, 384, 2004, 10672, 57628, 314368, 1728292, 9560016, 53144172)),
    ("A085362", _p(1, -1), _p(1, -6, 5), _p(1), (1, 2, 8, 34, 150, 678, 3116, 14494, 68032, 321590, 1528776, 7301142)),
    ("A025178", _p(1, -1), _p(1, -2, -3), _p(1), (1, 0, 2, 4, 12, 32, 90, 252, 714, 2032, 5814, 16700)),
    ("A025565", _p(0, 1, 1), _p(1, -2, -3), _p(1), (0, 1, 2, 4, 10, 26, 70, 192, 534, 1500, 4246, 12092)),
    ("A063886", _p(1, 2), _p(1, 0, -4), _p(1), (1, 2, 2, 4, 6, 12, 20, 40, 70, 140, 252, 504)),
    ("A128057", _p(1, 1), _p(1, 0, 4), _p(1), (1, 1, -2, -2, 6, 6, -20, -20, 70, 70, -252, -252)),
    ("A106188", _p(1), _p(1, -4), _p(1, 0, -1), (1, 2, 7, 22, 77, 274, 1001, 3706, 13871, 52326, 198627, 757758)),
    ("A091520", _p(1), _p(1, 4), _p(1, -4), (1, 2, 14, 36, 214, 604, 3340, 9928, 52582, 161708, 831588, 2620920)),
]

# EGF reading of q / (v p^(1/r)) with q = v = 1
_EGF_ROOT = [
    ("A285199", _p(1, -4, 1), 2, (1, 2, 11, 102, 1329, 22290, 457155, 11083590, 310107105, 9834291810, 348584413275, 13657116176550)),
    ("A006438", _p(1, -8, 1), 2, (1, 4, 47, 924, 25449, 901380, 39024495, 1996824060, 117897243345, 7889215807620, 590030724668175, 48773659291364700)),
    ("A182827", _p(1, 2, 4), 2, (1, -1, -1, 21, -111, -345, 14895, -143955, -760095, 49774095, -699437025, -5221460475)),
    ("A098460", _p(1, -2, -2), 2, (1, 1, 5, 33, 321, 3945, 59445, 1056825, 21677985, 503799345, 13084021125, 375524312625)),
    ("A098461", _p(1, -2, -3), 2, (1, 1, 6, 42, 456, 6120, 101520, 1980720, 44634240, 1139080320, 32488646400, 1023985670400)),
    ("A144773", _p(1, -10), 10, (1, 1, 11, 231, 7161, 293601, 14973651, 913392711, 64850882481, 5252921480961, 478015854767451, 48279601331512551)),
]

# EGF reading of exp(q/v) p^(-1/r); columns (p, q, v, r)
_EGF_EXP = [
    ("A000262", _p(1), _p(0, 1), _p(1, -1), 1, (1, 1, 3, 13, 73, 501, 4051, 37633, 394353, 4596553, 58941091, 824073141)),
    ("A055142", _p(1, -2), _p(0, 1), _p(1), -2, (1, 0, -2, -8, -36, -224, -1880, -19872, -251888, -3712256, -62286624, -1171487360)),
    ("A052143", _p(1, -4), _p(0, 1), _p(1), 2, (1, 3, 17, 163, 2241, 39971, 874513, 22652547, 677742593, 22996109251, 872449527441, 36595485309923)),
    ("A094935", _p(1, -8), _p(0, 8), _p(1), 8, (1, 9, 89, 1073, 18321, 476473, 17484457, 813648417, 45054110369, 2872362067433, 206710159889529, 16558892507010961)),
    ("A094911", _p(1, -7), _p(0, 7), _p(1), 7, (1, 8, 71, 778, 12125, 284012, 9241891, 378595022, 18409947641, 1029827400400, 64998958518719, 4565303338264082)),
    ("A345075", _p(1), _p(0, 1, 1), _p(1, -1, -1), 1, (1, 1, 5, 31, 265, 2741, 33781, 479515, 7710641, 138300265, 2736157861, 59152265591)),
    ("A335819", _p(1), _p(0, 3, Fraction(3, 2)), _p(1), 1, (1, 3, 12, 54, 270, 1458, 8424, 51516, 331452, 2230740, 15641424, 113846472)),
    ("A335595", _p(1, -1), _p(0, -2, -1), _p(1), Fraction(1, 2), (1, 0, 0, 4, 12, 48, 400, 3120, 25872, 251776, 2715264, 31809600)),
    ("A331725", _p(1, 1), _p(0, 1), _p(1, -1), 1, (1, 0, 3, 4, 57, 216, 2755, 18348, 247569, 2368432, 35256771, 436248660)),
    ("A318215", _p(1), _p(0, 1), _p(1, 2, 1), 1, (1, 1, -3, 7, 1, -219, 2581, -22973, 162177, -554039, -10506419, 343049631)),
    ("A302908", _p(6, 18, 9, 1), _p(0, -1), _p(1), 1, None),
    ("A296660", _p(1, -4), _p(0, -2), _p(1), 1, (1, 2, 20, 232, 3728, 74528, 1788736, 50084480, 1602703616, 57697329664, 2307893187584, 101547300251648)),
    ("A200380", _p(1), _p(0, 1, 1, Fraction(-1, 6)), _p(1), 1, (1, 1, 3, 6, 21, 51, 201, 498, 2241, 4581, 26991, 17766)),
]

A122877 = RootedNumerator(w=_p(1, -2, -3), v=_p(-1, 1), p=_p(1, -2, -7), q=_p(0, 0, 0, 8), r=Fraction(2))


def _build():
    rows = [_inverse_root(k, p, 2, pre, "inverse-root r=2") for k, p, pre in _ROOT2]
    rows += [_inverse_root(k, p, r, pre, "inverse-root") for k, p, r, pre in _ROOT_R]
    rows += [Fixture(k, GeneralRoot(q, v, p, Fraction(2)), OGF, pre, "general-root")
             for k, q, p, v, pre in _GENERAL]
    rows.append(Fixture(
        "A116394", RootedDenominator(q=_p(1), w=_p(0, -1), v=_p(1, 1), p=_p(1, -2, -3)),
        OGF, (1, 1, 4, 11, 33, 100, 305, 937, 2890, 8943, 27741, 86216), "rooted-denominator"))
    rows += [Fixture(k, GeneralRoot(_p(1), _p(1), p, Fraction(r)), EGF, pre, "egf general-root")
             for k, p, r, pre in _EGF_ROOT]
    rows += [Fixture(k, ExpRationalTimesRoot(q, v, p, Fraction(r)), EGF, pre, "egf exp-rational")
             for k, p, q, v, r, pre in _EGF_EXP]
    rows.append(Fixture("A122877", A122877, OGF,
                        (0, 1, 2, 7, 20, 65, 206, 679, 2248, 7569, 25690, 88055), "rooted-numerator"))
    return tuple(rows)


FIXTURES = _build()


def fixture(oeis_id):
    for f in FIXTURES:
        if f.oeis_id == oeis_id:
            return f
    raise KeyError(oeis_id)


def _mode(fx):
    return "egf" if fx.interpretation == EGF else "ogf"


def run_fixture(fx, terms=100, guard=10):
    """Derive, then compare generated terms with the oracle (and the prefix)."""
    start = time.perf_counter()
    try:
        d = derive(fx.cls, guard)
        got = scaled_terms(d, terms, _mode(fx))
        want = oracle_expand(fx.cls, terms).coeffs
        if fx.interpretation == EGF:
            want = [factorial(n) * c for n, c in enumerate(want)]
        bad = next((n for n, (a, b) in enumerate(zip(got, want)) if a != b), None)
        if len(got) != terms + 1 or bad is not None:
            msg = f"term {bad}: recurrence {got[bad]} vs oracle {want[bad]}"
            return FixtureResult(fx, False, terms, time.perf_counter() - start, msg)
        if fx.known_prefix is not None:
            k = len(fx.known_prefix)
            if tuple(got[:k]) != tuple(fx.known_prefix):
                return FixtureResult(fx, False, terms, time.perf_counter() - start,
                                     "embedded prefix mismatch")
    except HolorecError as exc:
        return FixtureResult(fx, False, 0, time.perf_counter() - start, str(exc))
    return FixtureResult(fx, True, terms + 1, time.perf_counter() - start, "ok", d.recurrence)


def run_fixture_suite(fixtures=FIXTURES, terms=100, guard=10):
    """Run every fixture; returns (passed, failed, results)."""
    results = [run_fixture(fx, terms, guard) for fx in fixtures]
    passed = sum(r.ok for r in results)
    return passed, len(results) - passed, results


def closed_form_agreement(cls, terms=100, guard=10):
    """Closed-form and generic recurrences run from one shared initial segment.

    Returns the two term lists; the segment is the longer of the two initial
    blocks, taken from the oracle.
    """
    src = oracle_source(cls)
    generic = derive(cls, guard, src).recurrence
    closed = closed_form_recurrence(cls, src, guard)
    k = max(len(generic.initial), len(closed.initial))
    seed = src.upto(k - 1)[:k]
    return generate_terms(generic.with_initial(seed), terms), generate_terms(closed.with_initial(seed), terms)
