import json
from pathlib import Path

import pytest

from kktlab.exceptions import (AlgebraMismatchError, DegreeOverflowError,
                               MissingStructureError, UsageError)
from kktlab.logic.jordan import build_jordan
from kktlab.logic.kantorvf import (CoordinateSpace, KantorPairSpace,
                                   PolyVectorField, check_five_grading,
                                   conformal_algebra, conformal_fields,
                                   expected_generalized_dims,
                                   generalized_algebra, generalized_fields,
                                   kantor_operators, signature_metric,
                                   vf_bracket)
from kktlab.logic.liealg import (check_graded_involution, check_grading,
                                 check_jacobi, fingerprint, so3)
from kktlab.logic.triplesys import jts_tensor, slotted_jordan_tensor

GOLDEN = Path(__file__).resolve().parents[3] / "data" / "golden"


def golden(name):
    return json.loads((GOLDEN / "fingerprints.json").read_text(encoding="utf-8"))["fingerprints"][name]


def test_bracket_of_translation_and_dilatation():
    fields = {f.label: f for f in conformal_fields(1, 1)}
    assert vf_bracket(fields["P0"], fields["D"]) == fields["P0"]
    assert vf_bracket(fields["D"], fields["D"]).is_zero()
    assert fields["K1"].weighted_degree() == 1
    assert fields["P1"].weighted_degree() == -1


def test_fields_on_different_spaces_do_not_mix():
    a = conformal_fields(1, 1)[0]
    b = conformal_fields(1, 2)[0]
    with pytest.raises(AlgebraMismatchError):
        vf_bracket(a, b)


def test_degree_cap_and_homogeneity():
    space = CoordinateSpace(["x", "y"])
    x, y = space.gens
    with pytest.raises(DegreeOverflowError):
        PolyVectorField(space, {0: x ** 5})
    with pytest.raises(ValueError):
        PolyVectorField(space, {0: x + x * y}).weighted_degree()
    assert PolyVectorField(space, {}).weighted_degree() is None


def test_signatures_are_validated():
    assert signature_metric(1, 2) == [-1, 1, 1]
    with pytest.raises(UsageError):
        signature_metric(0, 0)
    with pytest.raises(UsageError):
        generalized_fields(1, 1, 0)


@pytest.mark.parametrize("p,q,dims", [(1, 1, [2, 2, 2]), (1, 2, [3, 4, 3]), (2, 2, [4, 7, 4])])
def test_conformal_algebras(p, q, dims):
    L = conformal_algebra(p, q)
    assert L.graded_dims() == dims
    assert check_jacobi(L).passed
    assert check_grading(L).passed


def test_conformal_matches_con_of_real_spin_factor():
    assert fingerprint(conformal_algebra(1, 2)).to_dict() == golden("con H2:R")


@pytest.mark.parametrize("p,q,n", [(1, 1, 1), (1, 1, 2), (0, 2, 2)])
def test_generalized_algebras(p, q, n):
    L = generalized_algebra(p, q, n)
    assert L.graded_dims() == expected_generalized_dims(p + q, n)
    assert check_jacobi(L).passed
    assert check_grading(L).passed


def test_generalized_with_one_copy_is_conformal():
    assert fingerprint(generalized_algebra(1, 2, 1)).to_dict() == fingerprint(conformal_algebra(1, 2)).to_dict()


def test_five_grading():
    assert check_five_grading(generalized_algebra(1, 1, 2)).passed
    report = check_five_grading(conformal_algebra(1, 1))
    assert not report.passed
    assert report.witness["empty"] == [-2, 2]
    with pytest.raises(MissingStructureError):
        check_five_grading(so3())


def test_jordan_triple_has_no_pair_space():
    ks = KantorPairSpace(jts_tensor(build_jordan(2, "R")), "H2:R")
    assert ks.k_dim == 0


def test_kantor_operators_of_jordan_triple_give_con():
    L = kantor_operators(jts_tensor(build_jordan(2, "R")), name="con H2:R", max_dim=10)
    assert fingerprint(L).to_dict() == golden("con H2:R")
    assert check_graded_involution(L).passed


def test_kantor_operators_of_two_slots():
    J = build_jordan(2, "R")
    K = kantor_operators(slotted_jordan_tensor(J, 2), name="kantor H2:R^2")
    assert K.graded_dims() == [1, 6, 7, 6, 1]
    assert check_jacobi(K).passed
    assert check_grading(K).passed
    assert check_graded_involution(K).passed
    assert check_five_grading(K).passed
    assert fingerprint(K).to_dict() == fingerprint(generalized_algebra(1, 2, 2)).to_dict()


def test_fields_serialize_by_coordinate_name():
    field = conformal_fields(1, 1)[0]
    assert field.to_json() == {"label": "P0", "components": {"x0": "1"}}


@pytest.mark.parametrize("field,n,p,q,dims", [("C", 2, 1, 3, [1, 8, 10, 8, 1]),
                                              ("R", 3, 1, 2, [3, 9, 12, 9, 3])])
def test_kantor_operators_match_generalized_fields(field, n, p, q, dims):
    K = kantor_operators(slotted_jordan_tensor(build_jordan(2, field), n), name=f"kantor H2:{field}^{n}")
    G = generalized_algebra(p, q, n)
    assert K.dim == G.dim == sum(dims)
    assert K.graded_dims() == G.graded_dims() == dims
    assert fingerprint(K).to_dict() == fingerprint(G).to_dict()
