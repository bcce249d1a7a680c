"""
Normal forms and equivalence decisions
======================================

"""

import random

from warrow import (
    canonical_arrow_presentation, decide_homotopy, decide_wk, gauss_from_string,
    homotopy_normal_form, make_Lk, wk_normal_form,
)
from warrow.randgen import random_string_link

trefoil = canonical_arrow_presentation(gauss_from_string("open: O1+ U2+ O3+ U1+ O2+ U3+"))

# read off alpha: up to w_5-equivalence the trefoil is L_2 L_3 L_4
nf = wk_normal_form(trefoil, 5)
print("exponents x_2..x_5:", nf.exponents)
print("trefoil ~ representative:", decide_wk(trefoil, nf.representative, 5).equal)

# a witness index when two knots differ
print(decide_wk(make_Lk(2), make_Lk(3), 3))

# string links up to homotopy: layer by layer products of T_I
link = random_string_link(random.Random(0), 3, trees=5)
hf = homotopy_normal_form(link)
print("exponents:", {k: v for k, v in hf.exponents.items() if v})
print("link ~ representative:", decide_homotopy(link, hf.representative).equal)
