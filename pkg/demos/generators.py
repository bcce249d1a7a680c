"""
One tree per invariant: the long knots L_k
==========================================

"""

from warrow import alexander_of, alpha_of, make_Lk, surgery
from warrow.expand import arrow_count

# L_k is a single degree-k comb on the trivial long knot
for k in range(2, 7):
    p = make_Lk(k)
    print(f"L_{k}:", alexander_of(p), "| alpha:", alpha_of(p, 6))

# the inverted generator carries the opposite sign
print("inverse L_3:", alexander_of(make_Lk(3, 1)))

# expanding the tree into arrows multiplies the crossing count quickly
for k in range(2, 7):
    g = surgery(make_Lk(k))
    print(f"L_{k}: {arrow_count(make_Lk(k).trees[0].root)} arrows, {len(g.crossings())} crossings")
