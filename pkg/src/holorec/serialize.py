"""JSON encoding of classes, ODEs and recurrences (rationals as "num/den")."""

import json

from .exactmath import Poly, as_fraction
from .gfclass import class_from_dict
from .ode import LinearODE
from .recurrence import PRecurrence

__all__ = [
    "rat_str", "poly_to_list", "poly_from_list", "ode_to_dict", "ode_from_dict",
    "recurrence_to_dict", "recurrence_from_dict", "derivation_to_dict", "dumps",
]


def rat_str(q):
    q = as_fraction(q)
    return f"{q.numerator}/{q.denominator}"


def poly_to_list(p):
    return [rat_str(c) for c in p.coeffs]


def poly_from_list(items):
    return Poly(as_fraction(c) for c in items)


def ode_to_dict(ode):
    return {
        "order": ode.order,
        "coeffs": [poly_to_list(a) for a in ode.coeffs],
        "inhom": poly_to_list(ode.inhom),
    }


def ode_from_dict(data):
    ode = LinearODE(tuple(poly_from_list(c) for c in data["coeffs"]),
                    poly_from_list(data["inhom"]))
    if ode.order != data["order"]:
        raise ValueError("ODE order does not match its coefficient list")
    return ode


def recurrence_to_dict(rec):
    return {
        "span": rec.span,
        "coeffs_in_n": [poly_to_list(c) for c in rec.coeffs],
        "n_min": rec.n_min,
        "initial": [rat_str(t) for t in rec.initial],
        "stride": rec.stride,
        "offset": rec.offset,
    }


def recurrence_from_dict(data):
    rec = PRecurrence(
        tuple(poly_from_list(c) for c in data["coeffs_in_n"]),
        int(data["n_min"]),
        tuple(as_fraction(t) for t in data["initial"]),
        int(data.get("stride", 1)),
        int(data.get("offset", 0)),
    )
    if rec.span != data["span"]:
        raise ValueError("recurrence span does not match its coefficient list")
    return rec


def derivation_to_dict(derivation, shortened=None):
    out = {
        "class": derivation.cls.to_dict(),
        "ode": None if derivation.ode is None else ode_to_dict(derivation.ode),
        "recurrence": recurrence_to_dict(derivation.recurrence),
    }
    if shortened is not None:
        out["shortened"] = recurrence_to_dict(shortened)
    return out


def class_from_json(text):
    return class_from_dict(json.loads(text))


def dumps(data):
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
