import itertools
from math import gcd

import pytest

from crossed_codes.errors import InvalidAction, NotPrime, Unsupported
from crossed_codes.ffield import FrobAction, frobenius, make_tower, valid_ks
from crossed_codes.groups import (
    CompatAut,
    GroupSpec,
    apply_aut,
    aut_eta,
    aut_eta_cyclic,
    euler_phi,
    general_linear,
)


def js(n, k, r):
    return [a.j for a in aut_eta_cyclic(n, FrobAction(n, k, r))]


def test_aut_eta_examples():
    assert js(4, 1, 1) == [1, 3]
    assert js(4, 1, 2) == [1, 3]
    assert js(6, 1, 3) == [1]
    assert js(8, 1, 2) == [1, 3, 5, 7]
    assert js(8, 1, 4) == [1, 5]


@pytest.mark.parametrize("n", range(1, 13))
@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_aut_eta_is_a_subgroup_of_the_expected_size(n, r):
    for k in valid_ks(n, r):
        units = js(n, k, r)
        m = r // k
        # independent count of units j = 1 mod m
        brute = [j for j in range(n) if gcd(j, n) == 1 and (j - 1) % m == 0] if n > 1 else [1]
        assert units == brute
        assert len(units) == euler_phi(n) // euler_phi(m)
        assert all((a * b) % n in units or n == 1 for a in units for b in units)


@pytest.mark.parametrize("q,r", [(2, 2), (2, 4), (3, 2), (5, 2)])
def test_compatible_units_preserve_the_action(q, r):
    t = make_tower(q, r)
    for n in range(1, 9):
        for k in valid_ks(n, r):
            for j in js(n, k, r):
                assert frobenius(t, t.x0, k * j) == frobenius(t, t.x0, k)


def test_apply_aut_examples():
    G = GroupSpec.cyclic(5)
    assert apply_aut(CompatAut(G, 2), 3) == 1
    E = GroupSpec.elab(2, 2)
    swap = CompatAut(E, ((0, 1), (1, 0)))
    assert apply_aut(swap, (1, 0)) == (0, 1)


@pytest.mark.parametrize("group", [GroupSpec.cyclic(6), GroupSpec.cyclic(8), GroupSpec.elab(2, 2), GroupSpec.elab(3, 2)])
def test_automorphisms_are_bijective_homomorphisms(group):
    for a in aut_eta(group):
        images = [apply_aut(a, g) for g in group.elements]
        assert sorted(images) == sorted(group.elements)
        for g, h in itertools.product(group.elements, repeat=2):
            assert apply_aut(a, group.op(g, h)) == group.op(apply_aut(a, g), apply_aut(a, h))


def test_general_linear_orders():
    assert len(general_linear(2, 2)) == 6
    assert len(general_linear(3, 2)) == 48
    assert len(general_linear(2, 3)) == 168


def test_group_errors_and_json():
    with pytest.raises(NotPrime):
        GroupSpec.elab(4, 2)
    with pytest.raises(Unsupported):
        aut_eta(GroupSpec.elab(2, 2), FrobAction(2, 1, 2))
    with pytest.raises(InvalidAction):
        aut_eta_cyclic(4, FrobAction(2, 1, 2))
    for G in (GroupSpec.cyclic(7), GroupSpec.elab(3, 2), GroupSpec.abelian([2, 4])):
        assert GroupSpec.from_json(G.to_json()) == G


def test_group_law():
    G = GroupSpec.abelian([2, 4])
    assert G.order == 8
    assert G.op((1, 3), (1, 2)) == (0, 1)
    assert G.inverse((1, 3)) == (1, 1)
    e = G.index(G.identity)
    assert all(G.mul_table[e, i] == i for i in range(8))
