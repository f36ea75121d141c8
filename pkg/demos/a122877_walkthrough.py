"""From a generating function with a square root to a 3-term recurrence.

    python3 demos/a122877_walkthrough.py
"""

from holorec.classify import classify_text
from holorec.ode import derive_ode, reduce_common_factor, split_ode
from holorec.pipeline import derive, oracle_source
from holorec.recurrence import generate_terms, ode_to_recurrence, shorten

text = "(1-2*x-3*x^2-(1-x)*sqrt(1-2*x-7*x^2))/(8*x^3)"
cls = classify_text(text)
print("g(x) =", text)
print("class:", cls.describe())

raw = derive_ode(cls)
print("\nraw ODE:     ", raw)
print("reduced ODE: ", reduce_common_factor(raw))

d = derive(cls)
print("\nrecurrence:  ", d.recurrence)
print("terms:       ", [int(t) for t in generate_terms(d.recurrence, 12)])

# a second relation: the order-2 ODE that kills the rational and the radical part separately
src = oracle_source(cls)
partner = ode_to_recurrence(split_ode(cls), src)
print("\npartner:     ", partner)

short = shorten(d.recurrence, partner, src)
print("shortened:   ", short)
print("same terms:  ", generate_terms(short, 40) == generate_terms(d.recurrence, 40))
