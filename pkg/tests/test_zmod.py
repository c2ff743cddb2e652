import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from crossed_codes.zmod import Subquotient, invariant_factors, smith_mod, solve_mod


def matrices(max_rows=4, max_cols=4):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols), st.sampled_from([2, 4, 6, 8, 9, 12])).flatmap(
        lambda t: st.tuples(
            st.lists(st.integers(0, t[2] - 1), min_size=t[0] * t[1], max_size=t[0] * t[1]).map(
                lambda v: np.array(v, dtype=np.int64).reshape(t[0], t[1])),
            st.just(t[2])))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_smith_form_diagonalizes(data):
    A, N = data
    sf = smith_mod(A, N, track_left=True)
    D = sf.P @ A @ sf.Q % N
    expect = np.zeros_like(D)
    for i, d in enumerate(sf.diag):
        expect[i, i] = d
    assert np.array_equal(D, expect)
    assert np.array_equal(sf.P @ sf.Pinv % N, np.eye(A.shape[0], dtype=np.int64) % N)
    assert np.array_equal(sf.Q @ sf.Qinv % N, np.eye(A.shape[1], dtype=np.int64) % N)
    nonzero = [d for d in sf.diag if d]
    assert all(N % d == 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@settings(max_examples=100, deadline=None)
@given(matrices(3, 3), st.data())
def test_solve_mod_matches_exhaustive_search(data, draw):
    A, N = data
    b = np.array(draw.draw(st.lists(st.integers(0, N - 1), min_size=A.shape[0], max_size=A.shape[0])))
    x = solve_mod(A, b, N)
    solvable = any(np.array_equal(A @ np.array(c) % N, b % N)
                   for c in itertools.product(range(N), repeat=A.shape[1]))
    assert (x is not None) == solvable
    if x is not None:
        assert np.array_equal(A @ x % N, b % N)


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3), st.data())
def test_subquotient_order_matches_counting(data, draw):
    D_out, N = data
    m = D_out.shape[1]
    cols = draw.draw(st.integers(1, 3))
    D_in = np.array(draw.draw(st.lists(st.integers(0, N - 1), min_size=m * cols, max_size=m * cols))).reshape(m, cols)
    D_in = D_in % N
    # only meaningful when im(D_in) lies in ker(D_out)
    kernel = [v for v in itertools.product(range(N), repeat=m) if not np.any(D_out @ np.array(v) % N)]
    image = {tuple(D_in @ np.array(c) % N) for c in itertools.product(range(N), repeat=cols)}
    if not image <= set(kernel):
        D_in = np.zeros((m, cols), dtype=np.int64)
        image = {(0,) * m}
    sub = Subquotient(D_out, D_in, N)
    assert sub.order == len(kernel) // len(image)
    for z in itertools.product(*(range(o) for o in sub.orders)):
        assert sub.coords(sub.lift(z)) == z


def test_invariant_factors():
    assert invariant_factors([4, 6]) == [2, 12]
    assert invariant_factors([2, 2, 2]) == [2, 2, 2]
    assert invariant_factors([3, 4]) == [12]
    assert invariant_factors([]) == []
