"""End-to-end derivation: class -> ODE -> certified recurrence -> terms."""

from dataclasses import dataclass
from math import factorial

from .errors import DerivationError, RecurrenceError, ShorteningError
from .gfclass import Hypergeometric, RootedDenominator, RootedNumerator
from .ode import (
    LinearODE, derive_ode, differentiate_ode, reduce_common_factor, split_ode,
)
from .recurrence import (
    DEFAULT_GUARD, TermSource, closed_form_recurrence, iter_terms,
    ode_to_recurrence, shorten, to_egf, to_lgf,
)
from .series import oracle_expand

__all__ = [
    "Derivation", "derive", "oracle_source", "shortened_recurrence",
    "scaled_terms", "term_stream", "transformed_recurrence",
]


@dataclass(frozen=True)
class Derivation:
    cls: object
    raw_ode: LinearODE
    ode: LinearODE
    recurrence: object

    @property
    def recurrence_source(self):
        return "closed form" if self.ode is None else "ODE"


def oracle_source(cls):
    """Term source backed by the series oracle."""
    return TermSource(lambda order: oracle_expand(cls, order).coeffs)


def derive(cls, guard=DEFAULT_GUARD, source=None):
    """ODE (raw and gcd-reduced) plus the certified recurrence of a class."""
    cls.validate()
    src = source or oracle_source(cls)
    if isinstance(cls, Hypergeometric):
        return Derivation(cls, None, None, closed_form_recurrence(cls, src, guard))
    raw = derive_ode(cls)
    ode = reduce_common_factor(raw)
    return Derivation(cls, raw, ode, ode_to_recurrence(ode, src, guard))


def _partner_odes(cls, ode):
    # thunks, so a failing construction only skips that partner
    if isinstance(cls, RootedNumerator) and not cls.w.is_zero():
        yield lambda: split_ode(cls)
    if isinstance(cls, RootedDenominator) and not cls.w.is_zero():
        # q/(w + v sqrt p) = (q w - q v sqrt p) / (w^2 - v^2 p)
        disc = cls.w * cls.w - cls.v * cls.v * cls.p
        yield lambda: split_ode(RootedNumerator(cls.q * cls.w, -cls.q * cls.v, cls.p, disc, 2))
    if ode is not None and ode.order == 1:
        yield lambda: differentiate_ode(ode)


def shortened_recurrence(derivation, guard=DEFAULT_GUARD, source=None):
    """Eliminate one term by pairing the recurrence with a partner relation.

    Partners, in order: the second-order ODE annihilating the rational and
    radical parts separately, then the differentiated ODE.
    """
    rec = derivation.recurrence
    src = source or oracle_source(derivation.cls)
    errors = []
    for make in _partner_odes(derivation.cls, derivation.ode):
        try:
            other = ode_to_recurrence(reduce_common_factor(make()), src, guard)
            out = shorten(rec, other, src, guard)
        except (ShorteningError, DerivationError, RecurrenceError) as exc:
            errors.append(str(exc))
            continue
        if out.span < rec.span:
            return out
        errors.append("partner did not reduce the span")
    detail = "; ".join(errors) or "no partner relation available for this class"
    raise ShorteningError(f"cannot shorten: {detail}")


def _scale(mode):
    if mode == "egf":
        return factorial
    if mode == "lgf":
        return lambda n: n
    return lambda n: 1


def transformed_recurrence(derivation, mode, guard=DEFAULT_GUARD):
    """The recurrence for n! g_n (``egf``) or n g_n (``lgf``)."""
    src = oracle_source(derivation.cls)
    if mode == "egf":
        return to_egf(derivation.recurrence, src, guard)
    if mode == "lgf":
        return to_lgf(derivation.recurrence, src, guard)
    return derivation.recurrence


def term_stream(derivation, mode="ogf"):
    """Iterator over g_n, n! g_n or n g_n from the certified recurrence."""
    rec = derivation.recurrence
    if mode != "ogf" and (rec.stride != 1 or rec.offset != 0):
        scale = _scale(mode)
        return (scale(n) * t for n, t in enumerate(iter_terms(rec)))
    return iter_terms(transformed_recurrence(derivation, mode))


def scaled_terms(derivation, N, mode="ogf"):
    """First N + 1 terms of :func:`term_stream`."""
    out = []
    for t in term_stream(derivation, mode):
        out.append(t)
        if len(out) > N:
            break
    return out
