import gc
import weakref
from types import SimpleNamespace

import pytest

from kktlab.exceptions import SlotError
from kktlab.logic.exactnum import ONE, rat
from kktlab.logic.jordan import build_jordan
from kktlab.logic.report import Mode
from kktlab.logic.triplesys import (SlottedBasisIndex, TripleTensor,
                                    check_gjts, check_outer_symmetry,
                                    jts_tensor, slotted_jordan_product,
                                    slotted_jordan_tensor,
                                    slotted_slice_product, tensor_from_product)


@pytest.fixture(scope="module")
def h2r():
    return build_jordan(2, "R")


def test_jordan_triple_system_passes(h2r):
    t = jts_tensor(h2r)
    assert t.dim == 3
    assert check_gjts(t).passed
    assert check_outer_symmetry(t).passed


def test_sampled_mode_records_seed(h2r):
    report = check_gjts(jts_tensor(h2r), mode=Mode(full=False, samples=200), seed=9)
    assert report.passed
    assert report.mode == "sampled=200"
    assert report.seed == 9
    assert report.checked == 200


def test_perturbed_tensor_is_caught(h2r):
    bad = jts_tensor(h2r).perturbed(0, 0, 0, 1, rat(3))
    report = check_gjts(bad)
    assert not report.passed
    assert len(report.witness["tuple"]) == 5
    assert report.witness["defect"]


def test_single_slot_is_twice_the_jordan_triple(h2r):
    assert slotted_jordan_tensor(h2r, 1) == jts_tensor(h2r).scaled(rat(2))


def test_two_slots_satisfy_identity_without_outer_symmetry(h2r):
    t = slotted_jordan_tensor(h2r, 2)
    assert t.dim == 6
    assert t.labels[3] == "E1^2"
    assert check_gjts(t).passed
    assert not check_outer_symmetry(t).passed


def test_unrelated_slots_vanish(h2r):
    x, y, z = SlottedBasisIndex(1, 0), SlottedBasisIndex(2, 0), SlottedBasisIndex(3, 0)
    assert slotted_jordan_product(h2r, 3, x, y, z) == {}


def test_slots_are_checked(h2r):
    with pytest.raises(SlotError):
        slotted_jordan_product(h2r, 2, SlottedBasisIndex(0, 0), SlottedBasisIndex(1, 0), SlottedBasisIndex(1, 0))
    with pytest.raises(SlotError):
        slotted_jordan_product(h2r, 0, SlottedBasisIndex(1, 0), SlottedBasisIndex(1, 0), SlottedBasisIndex(1, 0))


def test_slice_product_uses_the_form():
    # one-dimensional slice with (e e e) = 2e and (e, e) = 1
    hdata = SimpleNamespace(triple=TripleTensor(1, {(0, 0, 0): {0: rat(2)}}), form={0: {0: ONE}})
    e1, e2 = SlottedBasisIndex(1, 0), SlottedBasisIndex(2, 0)
    assert slotted_slice_product(hdata, 2, e1, e1, e1) == {0: rat(2)}
    assert slotted_slice_product(hdata, 2, e1, e1, e2) == {1: ONE}
    assert slotted_slice_product(hdata, 2, e2, e1, e1) == {1: ONE}


def test_tensor_from_product_validates_shape():
    with pytest.raises(ValueError):
        tensor_from_product(2, lambda i, j, k: [ONE])
    with pytest.raises(ValueError):
        tensor_from_product(2, lambda i, j, k: {5: ONE})


def test_json_form_preserves_entries(h2r, tmp_path):
    t = jts_tensor(h2r)
    assert TripleTensor.from_json(t.to_json()) == t
    t.dump(str(tmp_path / "t.json"))
    assert (tmp_path / "t.json").read_text(encoding="utf-8").startswith("{")


@pytest.mark.parametrize("field", ["R", "C"])
def test_two_copies_of_h3_sampled(field):
    t = slotted_jordan_tensor(build_jordan(3, field), 2)
    assert t.dim == 2 * build_jordan(3, field).dim
    report = check_gjts(t, mode=Mode(full=False, samples=2000), seed=11)
    assert report.passed, report.witness
    assert report.checked == 2000


def test_slotted_memo_releases_its_algebra():
    alg = build_jordan(2, "C")
    tensor = slotted_jordan_tensor(alg, 2)
    ref = weakref.ref(alg)
    del alg
    gc.collect()
    assert ref() is None
    assert tensor.dim == 8
