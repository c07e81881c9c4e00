import pytest

from kktlab.exceptions import (AlgebraMismatchError, MissingStructureError,
                               NotAnIdealError)
from kktlab.logic.exactnum import ONE, ZERO, mat_from_rows, mat_to_rows, rat
from kktlab.logic.liealg import (Fingerprint, StructureLieAlgebra, abelian,
                                 basis_change, center, check_graded_involution,
                                 check_grading, check_jacobi,
                                 derived_series_dims, fingerprint,
                                 fingerprint_equal, killing_form, lie_closure,
                                 quotient_by_ideal, so3)
from kktlab.logic.report import Mode


def heisenberg():
    return StructureLieAlgebra(3, {(0, 1): {2: ONE}}, name="heis")


def sl2():
    # e, f, h
    return StructureLieAlgebra(3, {(0, 1): {2: ONE}, (0, 2): {0: rat(-2)}, (1, 2): {1: rat(2)}},
                               labels=["e", "f", "h"], grading=[1, -1, 0],
                               involution=[{1: -ONE}, {0: -ONE}, {2: -ONE}], name="sl2")


def test_jacobi_holds_and_perturbation_breaks_it():
    assert check_jacobi(so3()).passed
    report = check_jacobi(so3().perturbed(0, 1, 0))
    assert not report.passed
    assert report.witness["triple"] == [0, 1, 2]


def test_sampled_jacobi():
    report = check_jacobi(sl2(), mode=Mode(full=False, samples=100), seed=4)
    assert report.passed
    assert report.checked == 100
    assert report.mode == "sampled=100"


def test_antisymmetry_is_stored_once():
    L = StructureLieAlgebra(2, {(1, 0): {0: ONE}})
    assert L.bracket_basis(0, 1) == {0: -ONE}
    assert L.bracket_basis(1, 0) == {0: ONE}


def test_killing_form_of_so3():
    rows = mat_to_rows(killing_form(so3()))
    assert rows == [[rat(-2), ZERO, ZERO], [ZERO, rat(-2), ZERO], [ZERO, ZERO, rat(-2)]]


def test_fingerprints():
    assert fingerprint(so3()).to_dict() == {"dim": 3, "graded_dims": None, "killing_rank": 3,
                                            "killing_det": "nonzero", "derived_dims": [3], "center_dim": 0}
    flat = fingerprint(abelian(2))
    assert (flat.killing_rank, flat.killing_det, flat.derived_dims, flat.center_dim) == (0, "zero", [0], 2)
    heis = fingerprint(heisenberg())
    assert heis.derived_dims == [1, 0]
    assert heis.center_dim == 1


def test_gl2_from_matrices_is_reductive():
    units = [mat_from_rows(m) for m in ([[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]])]
    gl2 = lie_closure(units, name="gl2")
    assert gl2.dim == 4
    assert len(gl2.matrices) == 4
    assert derived_series_dims(gl2) == [3]
    assert len(center(gl2)) == 1
    assert check_jacobi(gl2).passed


def test_fingerprint_survives_permutation():
    L = sl2()
    P = L.permuted([2, 0, 1])
    assert P.labels == ["h", "e", "f"]
    assert P.grading == [0, 1, -1]
    assert fingerprint_equal(fingerprint(L), fingerprint(P))
    assert check_graded_involution(P).passed
    assert Fingerprint.from_dict(fingerprint(L).to_dict()) == fingerprint(L)


def test_grading_check():
    good = heisenberg().with_grading([1, 1, 2])
    assert check_grading(good).passed
    assert good.graded_dims() == [2, 1]
    assert good.degrees() == (1, 2)
    bad = check_grading(heisenberg().with_grading([1, 1, 1]))
    assert not bad.passed
    assert bad.witness["degrees"] == [1, 1, 1]
    with pytest.raises(MissingStructureError):
        check_grading(heisenberg())


def test_graded_involution_check():
    assert check_graded_involution(sl2()).passed
    swapped = sl2().with_involution([{1: ONE}, {0: ONE}, {2: ONE}])
    report = check_graded_involution(swapped)
    assert not report.passed
    assert report.witness["property"] == "automorphism"
    with pytest.raises(MissingStructureError):
        check_graded_involution(so3())


def test_quotient_by_center():
    Q = quotient_by_ideal(heisenberg(), [{2: ONE}])
    assert Q.dim == 2
    assert Q.brackets == {}
    with pytest.raises(NotAnIdealError):
        quotient_by_ideal(so3(), [{0: ONE}])


def test_basis_change():
    L = basis_change(so3(), [{0: rat(2)}, {1: ONE}, {2: ONE}])
    assert L.bracket_basis(0, 1) == {2: rat(2)}
    assert fingerprint_equal(fingerprint(L), fingerprint(so3()))
    with pytest.raises(AlgebraMismatchError):
        basis_change(so3(), [{0: ONE}, {0: rat(2)}, {2: ONE}])


def test_json_form_keeps_structure(tmp_path):
    L = sl2()
    back = StructureLieAlgebra.from_json(L.to_json())
    assert back.brackets == L.brackets
    assert back.grading == L.grading
    assert back.involution == L.involution
    L.dump(str(tmp_path / "sl2.json"))
    assert (tmp_path / "sl2.json").exists()
