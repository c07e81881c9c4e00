import numpy as np
import pytest

from kktlab.logic.exactnum import (NO_SOLUTION, ONE, ZERO, SpanReducer,
                                   is_integer, mat_apply, mat_det,
                                   mat_from_rows, mat_identity, mat_kernel,
                                   mat_rank, mat_solve, random_vector, rat,
                                   rat_to_str, span_basis, vec_add, vec_iadd,
                                   vec_scale, vec_sub)


def test_rat_parses_and_prints_fractions():
    assert rat("3/6") == rat(1, 2)
    assert rat("-4") == rat(-4)
    assert rat_to_str(rat(-6, 4)) == "-3/2"
    assert rat_to_str(rat(5)) == "5"
    assert is_integer(rat(6, 3))
    assert not is_integer(rat(1, 3))


def test_sparse_vectors_drop_zeros():
    u = {0: ONE, 1: rat(2)}
    v = {1: rat(2), 2: rat(1, 3)}
    assert vec_sub(u, u) == {}
    assert vec_add(u, v, -ONE) == {0: ONE, 2: rat(-1, 3)}
    assert vec_scale(v, ZERO) == {}
    w = dict(u)
    vec_iadd(w, u, rat(-1))
    assert w == {}


def test_random_vector_is_reproducible():
    a = random_vector(np.random.default_rng(7), 12)
    b = random_vector(np.random.default_rng(7), 12)
    assert a == b
    assert all(x for x in a.values())


def test_rank_det_and_kernel():
    m = mat_from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert mat_rank(m) == 2
    assert mat_det(m) == ZERO
    kernel = mat_kernel(m)
    assert len(kernel) == 1
    assert mat_apply(m, kernel[0]) == {}
    assert mat_det(mat_identity(4)) == ONE


def test_kernel_of_empty_matrix_is_everything():
    assert mat_kernel(mat_from_rows([], cols=3)) == [{0: ONE}, {1: ONE}, {2: ONE}]


def test_solve_consistent_and_inconsistent():
    m = mat_from_rows([[1, 1], [1, -1]])
    assert mat_solve(m, [rat(3), rat(1)]) == [rat(2), ONE]
    singular = mat_from_rows([[1, 1], [2, 2]])
    assert mat_solve(singular, [ONE, ONE]) is NO_SOLUTION
    with pytest.raises(ValueError):
        mat_solve(m, [ONE])


def test_span_reducer_coordinates():
    reducer = SpanReducer()
    assert reducer.add({0: ONE, 1: ONE}) == 0
    assert reducer.add({1: ONE}) == 1
    assert reducer.add({0: rat(2)}) is None
    assert len(reducer) == 2
    assert reducer.coordinates({0: rat(3), 1: rat(5)}) == {0: rat(3), 1: rat(2)}
    assert reducer.coordinates({2: ONE}) is None
    assert reducer.normal_form({2: ONE, 0: ONE}) == {2: ONE}


def test_span_basis_keeps_first_independent_vectors():
    kept, reducer = span_basis([{0: ONE}, {0: rat(5)}, {1: ONE}, {0: ONE, 1: ONE}])
    assert kept == [0, 2]
    assert reducer.contains({0: rat(7), 1: rat(-1)})
