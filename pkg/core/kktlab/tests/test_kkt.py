import json
from pathlib import Path

import pytest

from kktlab.logic.jordan import build_jordan
from kktlab.logic.kkt import (derivation_algebra, expected_h2_dims,
                              kkt_construct, reduced_structure,
                              structure_algebra)
from kktlab.logic.liealg import check_jacobi, fingerprint

GOLDEN = Path(__file__).resolve().parents[3] / "data" / "golden"


@pytest.fixture(scope="module")
def golden():
    return json.loads((GOLDEN / "fingerprints.json").read_text(encoding="utf-8"))["fingerprints"]


@pytest.mark.parametrize("tag", ["R", "C", "H"])
def test_spin_factor_towers(tag, golden):
    J = build_jordan(2, tag)
    tower = kkt_construct(J)
    dims = tower.dims()
    expected = expected_h2_dims(tag)
    assert (dims["der"], dims["str_reduced"], dims["con"]) == (expected["der"], expected["str_reduced"],
                                                               expected["con"])
    assert dims["str"] == dims["str_reduced"] + 1
    assert all(check.passed for check in tower.checks), [c.name for c in tower.checks if not c.passed]
    for L in (tower.der, tower.str_reduced, tower.str, tower.con):
        assert fingerprint(L).to_dict() == golden[L.name]


@pytest.mark.parametrize("tag,der,reduced,con", [("R", 3, 8, 21), ("C", 8, 16, 35)])
def test_three_by_three_towers(tag, der, reduced, con):
    tower = kkt_construct(build_jordan(3, tag))
    assert tower.dims() == {"jordan": tower.jordan.dim, "der": der, "str_reduced": reduced,
                            "str": reduced + 1, "con": con}
    assert tower.con.graded_dims() == [tower.jordan.dim, reduced + 1, tower.jordan.dim]
    assert all(check.passed for check in tower.checks)


@pytest.mark.slow
def test_albert_algebra_tower(golden):
    tower = kkt_construct(build_jordan(3, "O"))
    assert tower.dims()["con"] == 133
    assert fingerprint(tower.der).to_dict() == golden["der H3:O"]
    assert fingerprint(tower.str_reduced).to_dict() == golden["str' H3:O"]


def test_pieces_can_be_built_separately():
    J = build_jordan(2, "C")
    S = structure_algebra(J)
    assert S.dim == 7
    assert len(S.matrices) == 7
    assert reduced_structure(J, S).name == "str' H2:C"
    D = derivation_algebra(J)
    assert D.dim == 3
    assert check_jacobi(D).passed


def test_expected_spin_factor_dims():
    assert expected_h2_dims("O") == {"der": 36, "str_reduced": 45, "con": 66}
    assert expected_h2_dims("R") == {"der": 1, "str_reduced": 3, "con": 10}
