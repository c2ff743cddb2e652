import itertools
import json
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crossed_codes.cocycles import (
    CocycleTable,
    CoeffModule,
    add_cocycles,
    beta_of,
    bilinear_cocycle,
    coboundary,
    cohomologous,
    cohomologous_bruteforce,
    mu_coefficients,
    pullback,
    standard_cocycle,
    validate,
    zero_cocycle,
)
from crossed_codes.errors import Incompatible, NotCyclic, NotInvariant
from crossed_codes.ffield import FrobAction, make_tower, norm_exponent, valid_ks
from crossed_codes.groups import CompatAut, GroupSpec, aut_eta, aut_eta_cyclic

SMALL = [(q, r, n, k) for q, r in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1), (2, 3)]
         for n in range(1, 9) for k in valid_ks(n, r)]


def field_module(q, r, n, k):
    t = make_tower(q, r)
    return t, CoeffModule.from_field(t, FrobAction(n, k, r))


def naive_cocycle_ok(f):
    # straight from the definition, one triple at a time
    G, N = f.group, f.N
    mult = f.mult
    for g, h, l in itertools.product(G.elements, repeat=3):
        gi = G.index(g)
        lhs = mult[gi] * f.value(h, l) - f.value(G.op(g, h), l) + f.value(g, G.op(h, l)) - f.value(g, h)
        if lhs % N:
            return False
    e = G.identity
    return all(f.value(e, g) == 0 and f.value(g, e) == 0 for g in G.elements)


def test_zero_and_standard_cocycles_validate():
    G = GroupSpec.cyclic(4)
    C = CoeffModule.trivial(4)
    assert validate(zero_cocycle(G, C))
    for b in range(4):
        assert validate(standard_cocycle(4, C, b))


def test_standard_table_n2():
    f = standard_cocycle(2, CoeffModule.trivial(2), 1)
    assert f.table.tolist() == [[0, 0], [0, 1]]
    assert np.array_equal(standard_cocycle(3, CoeffModule.trivial(5), 0).table, np.zeros((3, 3)))


def test_perturbed_table_reports_a_violating_triple():
    C = CoeffModule.trivial(4)
    f = standard_cocycle(3, C, 1)
    T = f.table.copy()
    T[1, 2] += 1
    bad = CocycleTable(f.group, C, T)
    v = validate(bad)
    assert not v
    g, h, l = v.violation
    G = bad.group
    d = bad.value(h, l) - bad.value(G.op(g, h), l) + bad.value(g, G.op(h, l)) - bad.value(g, h)
    assert d % 4 != 0
    T = f.table.copy()
    T[0, 1] = 2
    v = validate(CocycleTable(f.group, C, T))
    assert not v and v.reason == "not normalized"


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([GroupSpec.cyclic(3), GroupSpec.cyclic(4), GroupSpec.elab(2, 2)]),
       st.sampled_from([2, 3, 4]), st.data())
def test_validate_matches_naive_check(G, N, data):
    C = CoeffModule.trivial(N, len(G.factors))
    n = G.order
    # mostly coboundaries (valid) with an occasional random entry flip
    r = [0] + data.draw(st.lists(st.integers(0, N - 1), min_size=n - 1, max_size=n - 1))
    T = coboundary(G, C, r).table.copy()
    if data.draw(st.booleans()):
        i, j = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
        T[i, j] += data.draw(st.integers(1, N - 1))
    f = CocycleTable(G, C, T)
    assert bool(validate(f)) == naive_cocycle_ok(f)


def test_standard_cocycle_needs_an_invariant_beta():
    t, C = field_module(2, 2, 2, 1)  # sigma acts by squaring on F_4^*
    with pytest.raises(NotInvariant):
        standard_cocycle(2, C, 1)
    assert validate(standard_cocycle(2, C, 0))


@pytest.mark.parametrize("q,r,n,k", SMALL)
def test_standard_cocycles_validate_and_recover_beta(q, r, n, k):
    t, C = field_module(q, r, n, k)
    G = GroupSpec.cyclic(n)
    for b in range(t.N):
        if not C.is_invariant(G, b):
            continue
        f = standard_cocycle(n, C, b)
        assert validate(f)
        if n > 1:
            assert beta_of(f) == b % t.N


def test_beta_of_requires_cyclic():
    with pytest.raises(NotCyclic):
        beta_of(zero_cocycle(GroupSpec.elab(2, 2), CoeffModule.trivial(2, 2)))
    assert beta_of(zero_cocycle(GroupSpec.cyclic(5), CoeffModule.trivial(4))) == 0


def test_pullback_identity_and_compatibility():
    t, C = field_module(5, 1, 4, 1)
    f = standard_cocycle(4, C, 1)
    G = f.group
    assert pullback(CompatAut.identity(G), f) == f
    assert beta_of(pullback(CompatAut(G, 3), f)) == 3
    # on F_8 with sigma acting as Frobenius, j = 2 sends the action to Frobenius^2
    t8, C8 = field_module(2, 3, 3, 1)
    with pytest.raises(Incompatible):
        pullback(CompatAut(GroupSpec.cyclic(3), 2), zero_cocycle(GroupSpec.cyclic(3), C8))


@pytest.mark.parametrize("q,r,n,k", SMALL)
def test_pullback_preserves_cocycles_and_coboundaries(q, r, n, k):
    t, C = field_module(q, r, n, k)
    G = GroupSpec.cyclic(n)
    rng = random.Random(n * 100 + q)
    rr = [0] + [rng.randrange(max(t.N, 1)) for _ in range(n - 1)]
    b = coboundary(G, C, rr)
    zero = zero_cocycle(G, C)
    for psi in aut_eta_cyclic(n, FrobAction(n, k, r)):
        pb = pullback(psi, b)
        assert validate(pb)
        assert cohomologous(pb, zero) is not None


def test_cohomologous_examples():
    t, C = field_module(3, 1, 2, 1)
    f1, f2 = standard_cocycle(2, C, 1), zero_cocycle(GroupSpec.cyclic(2), C)
    assert cohomologous(f1, f2) is None
    assert cohomologous_bruteforce(f1, f2) is None
    w = cohomologous(f1, f1)
    assert w is not None and set(w.r) == {0}


@pytest.mark.parametrize("q,r,n,k", SMALL)
def test_cohomologous_iff_beta_difference_is_a_norm(q, r, n, k):
    t, C = field_module(q, r, n, k)
    G = GroupSpec.cyclic(n)
    act = FrobAction(n, k, r)
    N = max(t.N, 1)
    invariant = [b for b in range(N) if C.is_invariant(G, b)]
    norms = {norm_exponent(t, act, e) % N for e in range(N)}
    for b1, b2 in itertools.product(invariant, repeat=2):
        f1, f2 = standard_cocycle(n, C, b1), standard_cocycle(n, C, b2)
        w = cohomologous(f1, f2)
        expected = n == 1 or (b1 - b2) % N in norms
        assert (w is not None) == expected
        if w is not None:
            assert add_cocycles(f2, coboundary(G, C, w.r)) == f1


@pytest.mark.parametrize("G,N", [(GroupSpec.cyclic(4), 2), (GroupSpec.cyclic(3), 3), (GroupSpec.elab(2, 2), 2),
                                 (GroupSpec.elab(2, 2), 4), (GroupSpec.abelian([2, 4]), 2), (GroupSpec.cyclic(6), 2)])
def test_solver_agrees_with_exhaustive_search(G, N):
    C = CoeffModule.trivial(N, len(G.factors))
    rng = random.Random(7)
    from crossed_codes.cohomology import compute_h2
    h2 = compute_h2(G, C)
    reps = [h2.rep(c) for c in h2.classes()]
    for _ in range(12):
        f1 = add_cocycles(rng.choice(reps), coboundary(G, C, [0] + [rng.randrange(N) for _ in range(G.order - 1)]))
        f2 = rng.choice(reps)
        fast, slow = cohomologous(f1, f2), cohomologous_bruteforce(f1, f2)
        assert (fast is None) == (slow is None)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_cohomologous_is_an_equivalence(params, data):
    q, r, n, k = params
    t, C = field_module(q, r, n, k)
    G = GroupSpec.cyclic(n)
    N = max(t.N, 1)
    invariant = [b for b in range(N) if C.is_invariant(G, b)]
    fs = []
    for _ in range(3):
        b = data.draw(st.sampled_from(invariant))
        rr = [0] + data.draw(st.lists(st.integers(0, N - 1), min_size=n - 1, max_size=n - 1))
        fs.append(add_cocycles(standard_cocycle(n, C, b), coboundary(G, C, rr)))
    rel = lambda a, b: cohomologous(a, b) is not None
    assert all(rel(f, f) for f in fs)
    for a, b in itertools.permutations(fs, 2):
        assert rel(a, b) == rel(b, a)
    for a, b, c in itertools.permutations(fs, 3):
        if rel(a, b) and rel(b, c):
            assert rel(a, c)


def test_bilinear_cocycles_on_elementary_abelian_groups():
    G = GroupSpec.elab(3, 2)
    C = mu_coefficients(3, 2)
    assert C.N == 3 and mu_coefficients(2, 3).N == 4
    f = bilinear_cocycle(G, C, [[0, 1], [0, 0]])
    assert validate(f)
    assert f.value((1, 0), (0, 1)) == 1 and f.value((0, 1), (1, 0)) == 0


def test_cocycle_json_roundtrip():
    t, C = field_module(3, 2, 4, 1)
    f = standard_cocycle(4, C, 4)
    data = json.loads(json.dumps(f.to_json()))
    assert set(data) == {"group", "N", "action_multipliers", "table"}
    assert CocycleTable.from_json(data) == f
    with pytest.raises(ValueError):
        CocycleTable.from_json({**data, "table": [[9] * 4] * 4})
