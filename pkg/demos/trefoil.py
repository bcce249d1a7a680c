"""
The trefoil as a long knot
==========================

"""

from warrow import alexander_of, alpha_of, canonical_arrow_presentation, gauss_from_string
from warrow.model import dumps, presentation_to_json

# a signed Gauss code, cut open at the basepoint
code = gauss_from_string("open: O1+ U2+ O3+ U1+ O2+ U3+")

# every classical crossing becomes one w-arrow from the over- to the under-passage
p = canonical_arrow_presentation(code)
print(dumps(presentation_to_json(p)))

# normalized so that the value at 1 is 1 and the derivative there vanishes
print("Alexander:", alexander_of(p))

# coefficients of (1-t)^2, (1-t)^3, ...
print("alpha_2..alpha_6:", alpha_of(p, 6))
