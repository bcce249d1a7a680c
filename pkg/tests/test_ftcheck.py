import random

import pytest

from warrow.ftcheck import alternating_sum, lookup, virtualize
from warrow.model import PresentationError, gauss_from_string
from warrow.randgen import random_gauss_code

TREFOIL = gauss_from_string("open: O1+ U2+ O3+ U1+ O2+ U3+")


def test_trefoil_alpha2_sums():
    v = lookup("alpha2")
    assert alternating_sum(v, TREFOIL, [1, 2, 3]) == (0,)
    assert alternating_sum(v, TREFOIL, [1, 2]) == (1,)


def test_virtualize_drops_crossings():
    g = virtualize(TREFOIL, [2])
    assert sorted(g.crossings()) == [1, 3]
    with pytest.raises(PresentationError):
        virtualize(TREFOIL, [9])


def test_limit_enforced():
    with pytest.raises(PresentationError):
        alternating_sum(lookup("alpha2"), TREFOIL, [1, 2, 3], limit=2)


def test_lookup_names():
    assert lookup("mu12").__name__ == "mu12"
    with pytest.raises(PresentationError):
        lookup("beta3")


@pytest.mark.parametrize("seed", range(10))
def test_alpha_degree_bound(seed):
    rng = random.Random(seed)
    k = rng.randint(2, 4)
    g = random_gauss_code(rng, rng.randint(k + 1, 8))
    S = rng.sample(sorted(g.crossings()), k + 1)
    assert alternating_sum(lookup(f"alpha{k}"), g, S) == (0,)


def test_parallel_matches_serial():
    g = random_gauss_code(random.Random(3), 6)
    S = sorted(g.crossings())[:4]
    v = lookup("alpha3")
    assert alternating_sum(v, g, S, jobs=4) == alternating_sum(v, g, S)


def test_mu_degree_bound():
    rng = random.Random(11)
    for _ in range(10):
        g = random_gauss_code(rng, 5, ("open",) * 3)
        S = rng.sample(sorted(g.crossings()), 3)
        assert alternating_sum(lookup("mu12"), g, S) == (0,)
