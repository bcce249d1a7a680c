"""
Rewriting the closed trefoil with local moves
=============================================

"""

from warrow import MoveSpec, canonical_arrow_presentation, gauss_from_string, trace
from warrow.group import alexander_gcd, wirtinger
from warrow.model import dumps, presentation_to_json

p = canonical_arrow_presentation(gauss_from_string("O1+ U2+ O3+ U1+ O2+ U3+"))

# fuse two arrows into a degree-2 tree, shuffle tails, drop an isolated arrow
moves = [
    MoveSpec("HeadTailExchange", tree=0, other=2),
    MoveSpec("TailsExchange", site=(0, 0)),
    MoveSpec("TailsExchange", site=(0, 4)),
    MoveSpec("TailsExchange", site=(0, 5)),
    MoveSpec("TailsExchange", site=(0, 4)),
    MoveSpec("IsolatedArrow", tree=2),
]
q, log = trace(p, moves)
for entry in log:
    print(entry["index"], entry["move"]["kind"], entry["category"], "->", entry["trees"], "trees")
print(dumps(presentation_to_json(q)))

# the knot group did not change: same Alexander gcd up to units
print(alexander_gcd(wirtinger(p)), "|", alexander_gcd(wirtinger(q)))
