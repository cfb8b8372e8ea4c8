"""
Diagonal operators from exact spectrum descriptions
===================================================

A spectrum is a list of atoms (value, multiplicity) plus monotone tails
with closed forms. Verdicts are decided with exact rational arithmetic.
"""

from fractions import Fraction

from minmod import INFINITE, Atom, SpectrumSpec, Tail, am_truncation_audit, classify_am, validate_spectrum


def show(label, atoms=(), tails=()):
    spec = validate_spectrum(SpectrumSpec(tuple(atoms), tuple(tails), positive=True))
    print(f"{label:<28}", classify_am(spec).as_dict())
    return spec


show("eigenvalues k", tails=[Tail.unbounded()])
show("projection {0^inf, 1^inf}", atoms=[Atom(0, INFINITE), Atom(1, INFINITE)])
show("1/(k+1) down to 0", tails=[Tail.decreasing_to(0, 1, 1)])
show("identity {1^inf}", atoms=[Atom(1, INFINITE)])
show("1 - 1/(k+1) up to 1", tails=[Tail.increasing_to(1, 1, 1)])
show("2 + 1/k down to 2", tails=[Tail.decreasing_to(2)])

# finite sections of 1/k: gamma_n = 1/n shrinks to the non-closed-range value 0
spec = validate_spectrum(SpectrumSpec((), (Tail.decreasing_to(0),), True))
audit = am_truncation_audit(spec, [8, 64, 512], trials=4)
for e in audit.entries:
    print(e.n, e.gamma_n, Fraction(e.gamma_n))
