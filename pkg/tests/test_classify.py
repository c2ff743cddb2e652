import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crossed_codes.classify import (
    Bicharacter,
    CyclicParams,
    alpha_matrix,
    bichar_from_cocycle,
    classify_cyclic,
    congruence_classes,
    congruent_image,
    count_elab_complex,
    count_elab_finite_field,
    is_classical,
    is_semisimple_cyclic,
    normal_form,
    partition_by_multipliers,
    wedderburn,
)
from crossed_codes.cocycles import (
    CoeffModule,
    add_cocycles,
    bilinear_cocycle,
    coboundary,
    zero_cocycle,
)
from crossed_codes.errors import IndexOutOfRange, InvalidParams, NotAlternating
from crossed_codes.ffield import divisors, valid_ks
from crossed_codes.groups import GroupSpec, general_linear, units_mod

GRID = [(n, q, r, k) for q in (2, 3, 5) for r in (1, 2, 3, 4) for n in range(1, 9) for k in valid_ks(n, r)]


def test_cyclic_examples():
    c = classify_cyclic(CyclicParams(4, 5, 1, 1))
    assert c.m == 4 and c.count == 3
    assert c.classes == [[1, 3], [2], [4]]
    assert c.representatives == [1, 2, 4]
    with pytest.raises(InvalidParams):
        CyclicParams(3, 2, 2, 1)
    with pytest.raises(InvalidParams):
        CyclicParams(3, 4, 1, 1)


@pytest.mark.parametrize("n,q,r,k", GRID)
def test_cyclic_corollaries(n, q, r, k):
    P = CyclicParams(n, q, r, k)
    c = classify_cyclic(P)
    assert sorted(itertools.chain(*c.classes)) == list(range(1, P.m + 1))
    if k == r:
        from math import gcd
        assert c.count == len(divisors(gcd(q**r - 1, n)))
    if (r // k) % P.m == 0:
        assert c.classes == [[a] for a in range(1, P.m + 1)]


def refines(fine, coarse):
    return all(any(set(block) <= set(big) for big in coarse) for block in fine)


@pytest.mark.parametrize("n,q,r,k", GRID)
def test_relation_sits_between_the_extreme_cases(n, q, r, k):
    P = CyclicParams(n, q, r, k)
    m = P.m
    eta = partition_by_multipliers(m, P.compatible_units)
    trivial = partition_by_multipliers(m, units_mod(n))
    singletons = [[a] for a in range(1, m + 1)]
    assert refines(eta, trivial)
    assert refines(singletons, eta)


def test_semisimple_and_classical_flags():
    assert is_semisimple_cyclic(CyclicParams(3, 2, 1, 1))
    for q in (2, 3, 5, 7):
        assert not is_semisimple_cyclic(CyclicParams(q, q, 1, 1))
    P = CyclicParams(2, 3, 2, 1)
    assert is_classical(P) and is_semisimple_cyclic(P)


def test_bicharacter_examples():
    G = GroupSpec.elab(2, 2)
    C = CoeffModule.trivial(2, 2)
    sym = add_cocycles(zero_cocycle(G, C), coboundary(G, C, [0, 1, 1, 0]))
    assert bichar_from_cocycle(sym).matrix == ((0, 0), (0, 0))
    quat = bilinear_cocycle(G, C, [[0, 1], [0, 0]])
    assert quat.value((1, 0), (0, 1)) == 1 and quat.value((0, 1), (1, 0)) == 0
    assert bichar_from_cocycle(quat).matrix == ((0, 1), (1, 0))
    # cohomologous cocycles give identical bicharacters
    shifted = add_cocycles(quat, coboundary(G, C, [0, 1, 0, 1]))
    assert bichar_from_cocycle(shifted) == bichar_from_cocycle(quat)
    with pytest.raises(NotAlternating):
        Bicharacter(3, 2, ((1, 0), (0, 0)))
    # a value of order 4 escapes mu_2
    G3 = GroupSpec.elab(2, 2)
    C4 = CoeffModule.trivial(4, 2)
    T = np.zeros((4, 4), dtype=np.int64)
    T[1, 2] = 1
    from crossed_codes.cocycles import CocycleTable
    with pytest.raises(NotAlternating):
        bichar_from_cocycle(CocycleTable(G3, C4, T))


def test_normal_form_examples():
    nf = normal_form(Bicharacter(2, 3, ((0, 0, 0),) * 3))
    assert nf.i == 0 and np.array_equal(nf.change_of_basis, np.eye(3, dtype=np.int64))
    b = Bicharacter(2, 3, ((0, 1, 0), (1, 0, 0), (0, 0, 0)))
    nf = normal_form(b)
    assert nf.i == 1 and b.radical_rank == 1
    M = np.array([[0, 1, 2, 1], [2, 0, 1, 1], [1, 2, 0, 2], [2, 2, 1, 0]])
    # nonzero Pfaffian a01*a23 - a02*a13 + a03*a12 means full rank
    assert (M[0, 1] * M[2, 3] - M[0, 2] * M[1, 3] + M[0, 3] * M[1, 2]) % 3 != 0
    b = Bicharacter(3, 4, tuple(map(tuple, M.tolist())))
    assert b.rank == 4 and normal_form(b).i == 2


def alternating(p, s):
    return st.lists(st.integers(0, p - 1), min_size=s * s, max_size=s * s).map(
        lambda v: (lambda U: (U - U.T) % p)(np.triu(np.array(v).reshape(s, s), 1)))


@settings(max_examples=120, deadline=None)
@given(st.sampled_from([(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (5, 3), (5, 5)]).flatmap(
    lambda ps: st.tuples(st.just(ps), alternating(*ps), st.randoms(use_true_random=False))))
def test_normal_form_properties(data):
    (p, s), M, rnd = data
    b = Bicharacter(p, s, tuple(map(tuple, M.tolist())))
    nf = normal_form(b)
    assert 2 * nf.i == b.rank
    assert np.array_equal(congruent_image(M, nf.change_of_basis, p), alpha_matrix(nf.i, p, s))
    # rank is a congruence invariant
    gl = general_linear(p, s) if p**(s * s) <= 2**16 else None
    for _ in range(10):
        if gl is not None:
            P = np.array(rnd.choice(gl))
        else:
            P = np.eye(s, dtype=np.int64)
            for _ in range(6):
                i, j = rnd.sample(range(s), 2)
                P[:, i] = (P[:, i] + rnd.randrange(p) * P[:, j]) % p
        N = congruent_image(M, P, p)
        assert Bicharacter(p, s, tuple(map(tuple, N.tolist()))).rank == b.rank


def test_alpha_matrices():
    assert alpha_matrix(0, 3, 2).tolist() == [[0, 0], [0, 0]]
    assert alpha_matrix(1, 3, 2).tolist() == [[0, 1], [2, 0]]
    A = alpha_matrix(2, 2, 5)
    assert A[0, 2] == A[1, 3] == 1 and A.sum() == 4
    with pytest.raises(IndexOutOfRange):
        alpha_matrix(2, 2, 3)


def test_wedderburn_examples():
    w = wedderburn(0, 3, 2)
    assert (w.matrix_size, w.copies) == (1, 9)
    w = wedderburn(2, 2, 4)
    assert w.matrix_size == 4 and w.copies == 1 and w.simple and w.total_codes == 2
    w = wedderburn(1, 2, 3)
    assert (w.matrix_size, w.copies) == (2, 2) and w.matrix_size**2 * w.copies == 8
    assert w.irreducible_codes == 2 and w.total_codes == 4
    with pytest.raises(IndexOutOfRange):
        wedderburn(2, 2, 3)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("s", range(1, 8))
def test_wedderburn_dimension(p, s):
    for i in range(s // 2 + 1):
        w = wedderburn(i, p, s)
        assert w.matrix_size**2 * w.copies == p**s


def test_finite_field_counts():
    assert count_elab_finite_field(2, 1, 2, 1) == 1
    assert count_elab_finite_field(2, 2, 3, 1) == 4
    assert count_elab_finite_field(3, 2, 7, 1) == 4
    assert count_elab_finite_field(3, 2, 3, 2) == 1
    assert count_elab_finite_field(2, 3, 5, 1) == 5


@pytest.mark.parametrize("p,s", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_congruence_class_count(p, s):
    classes = congruence_classes(p, s)
    assert len(classes) == count_elab_complex(s)
    ranks = sorted(Bicharacter(p, s, tuple(map(tuple, c[0].tolist()))).rank for c in classes)
    assert ranks == list(range(0, s + 1, 2))
