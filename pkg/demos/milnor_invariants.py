"""
Welded Milnor invariants of string links
========================================

"""

from warrow import make_TI, milnor_table
from warrow.milnor import format_sequence
from warrow.model import product

# T_I realizes I; swapping the first two indices flips the sign
p = make_TI((1, 2, 3), 3)
for I, v in milnor_table(p, 3).items():
    if v:
        print(format_sequence(I), v)

# a product of generators: first non-vanishing invariants add up
q = product([make_TI((1, 2, 3), 3), make_TI((2, 1, 3), 3, 1), make_TI((1, 2, 3), 3)])
print({format_sequence(I): v for I, v in milnor_table(q, 3).items() if v})
