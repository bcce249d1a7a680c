"""Arrow calculus for welded knotted objects.

w-tree presentations, expansion and surgery, local moves, Wirtinger groups,
normalized Alexander polynomials, welded Milnor invariants and the normal
forms for long knots (up to w_k-equivalence) and string links (up to
homotopy).
"""

from .laurent import LaurentPoly
from .model import (
    GaussCode, Leaf, Presentation, PresentationError, Site, StrandDiagram,
    Vertex, WTree, canonical_arrow_presentation, concatenate, gauss_from_string,
    normalize_sides, presentation_from_json, product, to_signed_arrows, validate,
)
from .expand import delete_tail_group, expand_once, full_expand, surgery
from .group import (
    FreeWord, alexander_normalized, alexander_of, alpha_coeffs, alpha_of,
    fox_phi, wirtinger, wtree_word,
)
from .milnor import TruncatedSeries, longitudes, magnus, milnor_mu, milnor_table
from .moves import MoveSpec, applicable, apply, trace
from .classify import (
    decide_homotopy, decide_wk, homotopy_normal_form, homotopy_reduce,
    make_Lk, make_TI, welded_knot_invariants, wk_normal_form,
)
from .ftcheck import alternating_sum, virtualize

__version__ = "0.1.0"
