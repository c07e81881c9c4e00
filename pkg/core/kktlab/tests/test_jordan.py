import numpy as np
import pytest

from kktlab.exceptions import AlgebraMismatchError, UsageError
from kktlab.logic.exactnum import ONE, ZERO, rat, random_vector
from kktlab.logic.jordan import (build_jordan, check_jordan_identity,
                                 jordan_defect, jordan_product, jts_product,
                                 trace_form)


@pytest.mark.parametrize("n,tag,dim", [(2, "R", 3), (2, "C", 4), (2, "H", 6), (2, "O", 10),
                                       (3, "R", 6), (3, "C", 9), (3, "H", 15), (3, "O", 27)])
def test_dimensions(n, tag, dim):
    assert build_jordan(n, tag).dim == dim


def test_unsupported_size():
    with pytest.raises(UsageError):
        build_jordan(5, "R")


@pytest.mark.parametrize("tag", ["R", "C", "H", "O"])
def test_unit_and_commutativity(tag):
    J = build_jordan(3, tag)
    unit = J.unit()
    for i in range(J.dim):
        assert J.mul(unit, {i: ONE}) == {i: ONE}
        for j in range(J.dim):
            assert J.mul_basis(i, j) == J.mul_basis(j, i)


def test_trace_form_values():
    J = build_jordan(3, "O")
    e1, f12 = J.index_of("E1"), J.index_of("F12(e0)")
    assert J.trace({e1: ONE}, {e1: ONE}) == ONE
    assert J.trace({f12: ONE}, {f12: ONE}) == rat(2)
    assert J.trace({e1: ONE}, {f12: ONE}) == ZERO
    x, y = J.basis_element(e1), J.basis_element(f12)
    assert trace_form(x, y) == trace_form(y, x)


@pytest.mark.parametrize("n,tag", [(2, "R"), (2, "O"), (3, "R"), (3, "C"), (3, "H")])
def test_jordan_identity_holds(n, tag):
    report = check_jordan_identity(build_jordan(n, tag), trials=5, seed=3)
    assert report.passed
    assert report.witness is None


@pytest.mark.slow
def test_albert_algebra_is_jordan():
    assert check_jordan_identity(build_jordan(3, "O"), trials=5, seed=3).passed


@pytest.mark.slow
def test_four_by_four_octonions_are_not_jordan():
    report = check_jordan_identity(build_jordan(4, "O"), trials=3, seed=3, stop_at_first=True)
    assert not report.passed
    assert report.witness is not None


def test_perturbed_product_is_caught():
    J = build_jordan(3, "R")
    bad = J.perturbed(J.index_of("E1"), J.index_of("E2"), J.index_of("E3"))
    report = check_jordan_identity(bad, trials=2, seed=5, stop_at_first=True)
    assert not report.passed
    assert "basis" in report.witness or "trial" in report.witness


def test_random_elements_satisfy_identity():
    J = build_jordan(3, "H")
    rng = np.random.default_rng(17)
    for _ in range(5):
        assert jordan_defect(J, random_vector(rng, J.dim), random_vector(rng, J.dim)) == {}


def test_triple_product_is_outer_symmetric():
    J = build_jordan(3, "C")
    rng = np.random.default_rng(19)
    x, y, z = (J.element(random_vector(rng, J.dim)) for _ in range(3))
    assert jts_product(x, y, z) == jts_product(z, y, x)
    one = J.element(J.unit())
    assert jts_product(x, one, z) == jordan_product(x, z)


def test_elements_of_different_algebras_do_not_mix():
    a = build_jordan(2, "R").basis_element(0)
    b = build_jordan(3, "R").basis_element(0)
    with pytest.raises(AlgebraMismatchError):
        jordan_product(a, b)
