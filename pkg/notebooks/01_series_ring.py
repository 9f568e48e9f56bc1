"""
Truncated q-series with exact coefficients
==========================================

A ``QSeries`` knows how far its coefficients are trustworthy (``valid_to``),
and every operation propagates that bound honestly.
"""

# %%
from qpartlab import QSeries, ZPoly, dilate, invert_unit, mul
from qpartlab.errors import NotAUnit, OutOfValidRange

# 1/(1-q) up to q^10: all ones
geometric = invert_unit(QSeries([1, -1], 0, 10), 10)
print(geometric)

# %%
# Multiplying by the unit gives back 1 exactly as far as both factors are known.
print(mul(geometric, QSeries([1, -1], 0, 10)))

# %%
# Asking past valid_to is an error rather than a silent zero.
try:
    geometric.coefficient(11)
except OutOfValidRange as exc:
    print("refused:", exc)

# %%
# Coefficients may be polynomials in a second variable z.
s = QSeries([ZPoly((1, 1)), ZPoly((0, 2))], 1, 4)
print(s)
print(s * s)

# %%
# q -> q^2 stretches the known range too.
print(dilate(geometric.truncate(4), 2))

# %%
try:
    invert_unit(QSeries([2, 1], 0, 5), 5)
except NotAUnit as exc:
    print("not invertible over the integers:", exc)
