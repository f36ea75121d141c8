"""Reading one recurrence as an exponential or logarithmic generating function.

    python3 demos/egf_and_lgf.py
"""

from holorec.classify import classify_text
from holorec.pipeline import derive, scaled_terms, transformed_recurrence


def show(text, mode, N=8):
    d = derive(classify_text(text))
    print(f"{text}  [{mode}]")
    print("  OGF recurrence:", d.recurrence)
    print("  scaled:        ", transformed_recurrence(d, mode))
    print("  terms:         ", [str(t) for t in scaled_terms(d, N, mode)])
    print()


# sets of lists: n! [x^n] exp(x/(1-x))
show("exp(x/(1-x))", "egf")
# involutions
show("exp(x+x^2/2)", "egf")
# EGF row with a root: n! [x^n] (1-4x+x^2)^(-1/2)
show("1/sqrt(1-4*x+x^2)", "egf")
# n [x^n] log(1/(1-x-x^2)) gives the Lucas numbers
show("log(1/(1-x-x^2))", "lgf")
