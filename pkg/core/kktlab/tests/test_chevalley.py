import pytest

from kktlab.config.settings import CON_BLACK_NODES
from kktlab.exceptions import GCMError, NotFiniteTypeError, UsageError
from kktlab.logic.chevalley import (AFFINE, FINITE, GCM, HYPERBOLIC,
                                    INDEFINITE, build_chevalley, cartan_type,
                                    check_serre, chevalley_involution,
                                    classify_gcm, extend_diagram,
                                    gcm_components, gcm_corank,
                                    gcm_determinant, gcm_isomorphism,
                                    graded_chevalley, graded_slice,
                                    grading_depth, identify_type, node_grading,
                                    resolve_node, verify_extension_isomorphism)
from kktlab.logic.chevalley import _solve_magnitudes
from kktlab.logic.exactnum import ONE, rat
from kktlab.logic.liealg import (check_graded_involution, check_grading,
                                 check_jacobi, fingerprint)
from kktlab.logic.triplesys import check_gjts, check_outer_symmetry


@pytest.mark.parametrize("entries", [[[2, 1], [0, 2]], [[2, -1], [0, 2]], [[3, -1], [-1, 2]], [[2, -1]]])
def test_invalid_matrices_are_rejected(entries):
    with pytest.raises(GCMError):
        GCM(entries)


def test_named_types_follow_bourbaki():
    b2 = cartan_type("B2")
    assert b2.key() == ((2, -1), (-2, 2))
    assert b2.symmetrizer() == [ONE, rat(1, 2)]
    assert cartan_type("C2").symmetrizer() == [rat(1, 2), ONE]
    assert cartan_type("a2xa1").name == "A2xA1"
    with pytest.raises(UsageError):
        cartan_type("E9")


@pytest.mark.parametrize("name,dim", [("A1", 3), ("A2", 8), ("B2", 10), ("G2", 14), ("C3", 21),
                                      ("D4", 28), ("F4", 52), ("E6", 78)])
def test_chevalley_algebras(name, dim):
    L, rd = build_chevalley(cartan_type(name))
    assert L.dim == dim
    assert check_jacobi(L).passed
    assert check_serre(rd).passed
    fp = fingerprint(L)
    assert fp.killing_det == "nonzero"
    assert fp.center_dim == 0


@pytest.mark.slow
def test_e8_jacobi():
    L, _ = build_chevalley(cartan_type("E8"))
    assert L.dim == 248
    assert check_jacobi(L).passed


def test_classification():
    assert classify_gcm(cartan_type("E8")) == FINITE
    assert classify_gcm(GCM([[2, -2], [-2, 2]])) == AFFINE
    assert classify_gcm(GCM([[2, -3], [-3, 2]])) == HYPERBOLIC
    assert classify_gcm(GCM([[2, -2, 0], [-2, 2, 0], [0, 0, 2]])) == AFFINE
    two_affine = GCM([[2, -2, 0, 0], [-2, 2, 0, 0], [0, 0, 2, -2], [0, 0, -2, 2]])
    assert classify_gcm(two_affine) == INDEFINITE
    assert gcm_determinant(cartan_type("A2")) == rat(3)


@pytest.mark.parametrize("name,last", [("C3", "F4"), ("A5", "E6"), ("D6", "E7"), ("E7", "E8")])
def test_con_row_extensions(name, last):
    h = cartan_type(name)
    black = CON_BLACK_NODES[name]
    kinds = [classify_gcm(extend_diagram(h, black, n)) for n in (2, 3, 4)]
    assert kinds == [FINITE, AFFINE, HYPERBOLIC]
    assert identify_type(extend_diagram(h, black, 2)) == last
    assert gcm_determinant(cartan_type("E8")) == ONE
    assert gcm_corank(GCM([[2, -2], [-2, 2]])) == 1


def test_components_and_isomorphism():
    gcm = cartan_type("A2xA1")
    assert gcm_components(gcm) == [[0, 1], [2]]
    assert identify_type(gcm) == "A1xA2"
    f4 = cartan_type("F4")
    reversed_f4 = GCM([[f4.a(3 - i, 3 - j) for j in range(4)] for i in range(4)])
    assert gcm_isomorphism(reversed_f4, f4) == [3, 2, 1, 0]
    assert gcm_isomorphism(cartan_type("B3"), cartan_type("C3")) is None
    assert identify_type(GCM([[2, -2], [-2, 2]])) is None


def test_named_nodes():
    assert resolve_node(cartan_type("E7"), "black") == 7
    assert resolve_node(cartan_type("C3"), "black") == 3
    assert resolve_node(cartan_type("A5"), "middle") == 3
    assert resolve_node(cartan_type("E6"), "2") == 2
    with pytest.raises(UsageError):
        resolve_node(cartan_type("G2"), "black")
    with pytest.raises(UsageError):
        resolve_node(GCM([[2, -1], [-1, 2]]), "end")
    with pytest.raises(GCMError):
        resolve_node(cartan_type("A2"), 3)


def test_extend_diagram():
    e8 = extend_diagram(cartan_type("E7"), 7, 2)
    assert e8.rank == 8
    assert identify_type(e8) == "E8"
    assert e8.labels[-1] == "c1"
    assert identify_type(extend_diagram(cartan_type("A2"), 1, 3)) == "A4"
    assert identify_type(extend_diagram(cartan_type("C3"), 3, 2)) == "F4"
    a2 = cartan_type("A2")
    assert extend_diagram(a2, 1, 1) is a2
    with pytest.raises(UsageError):
        extend_diagram(a2, 1, 0)


@pytest.mark.parametrize("name,node,dims", [("B2", 1, [3, 4, 3]), ("A3", 2, [4, 7, 4]), ("A2", 1, [2, 4, 2])])
def test_node_gradings(name, node, dims):
    _, rd = build_chevalley(cartan_type(name))
    grading = node_grading(rd, node)
    assert grading.graded_dims == dims
    assert grading.depth == 3


def test_trivalent_node_of_e6_has_depth_seven():
    _, rd = build_chevalley(cartan_type("E6"))
    assert grading_depth(rd, 4) == 7
    assert node_grading(rd, 4).graded_dims == [2, 9, 18, 20, 18, 9, 2]


@pytest.mark.parametrize("name,node,depth,dims", [
    ("F4", 2, 7, [2, 6, 12, 12, 12, 6, 2]),
    ("E7", 3, 7, [2, 15, 30, 39, 30, 15, 2]),
    pytest.param("E8", 7, 7, [2, 27, 54, 82, 54, 27, 2], marks=pytest.mark.slow),
    ("B4", 2, 5, None),
    ("D5", 2, 5, None),
])
def test_grading_depths(name, node, depth, dims):
    _, rd = build_chevalley(cartan_type(name))
    assert grading_depth(rd, node) == depth
    if dims is not None:
        assert node_grading(rd, node).graded_dims == dims


@pytest.mark.parametrize("name", sorted(CON_BLACK_NODES))
def test_con_row_black_nodes_give_three_gradings(name):
    _, rd = build_chevalley(cartan_type(name))
    assert grading_depth(rd, CON_BLACK_NODES[name]) == 3


def test_e7_names_both_black_nodes():
    e7 = cartan_type("E7")
    assert resolve_node(e7, "black") == resolve_node(e7, "con") == 7
    assert resolve_node(e7, "last") == 3


def test_graded_algebra_carries_involution():
    L, rd = graded_chevalley(cartan_type("A3"), 2)
    assert check_grading(L).passed
    assert check_graded_involution(L).passed
    npos = len(rd.positive)
    assert chevalley_involution(rd)[0] == {npos: -ONE}
    # e-part sits in negative degree
    assert L.grading[rd.e_index(rd.positive[1])] == -1


def test_graded_slice_of_a2():
    _, rd = build_chevalley(cartan_type("A2"))
    hdata = graded_slice(rd, 1)
    assert hdata.dim == 2
    assert [list(root) for root in hdata.roots] == [[1, 0], [1, 1]]
    assert hdata.pairing == {0: {0: ONE}, 1: {1: ONE}}


def test_con_row_slice_is_a_jordan_triple_system():
    _, rd = build_chevalley(cartan_type("A5"))
    triple = graded_slice(rd, resolve_node(rd.gcm, "middle")).triple
    assert triple.dim == 9
    assert check_gjts(triple).passed
    assert check_outer_symmetry(triple).passed


def test_trivalent_slice_of_e6_is_not_symmetric():
    _, rd = build_chevalley(cartan_type("E6"))
    triple = graded_slice(rd, 4).triple
    assert triple.dim == 9
    assert check_gjts(triple).passed
    report = check_outer_symmetry(triple)
    assert not report.passed
    assert report.witness is not None


def test_coupled_scales_are_solved_together():
    triangle = [({0: 1, 1: 1}, rat(4)), ({1: 1, 2: 1}, rat(4)), ({2: 1, 0: 1}, rat(4))]
    scales, bad = _solve_magnitudes(triangle, 3)
    assert bad is None
    assert scales == [rat(2), rat(2), rat(2)]
    mixed = [({0: 1, 1: 1}, rat(4)), ({1: 1, 2: 1}, rat(4)), ({2: 1, 0: 1}, rat(9))]
    scales, _ = _solve_magnitudes(mixed, 3)
    assert scales == [rat(3), rat(4, 3), rat(3)]


def test_irrational_scales_fail():
    scales, bad = _solve_magnitudes([({0: 1, 1: 1}, rat(2)), ({1: 1, 2: 1}, rat(2)), ({2: 1, 0: 1}, rat(2))], 3)
    assert scales is None
    assert bad is not None


@pytest.mark.parametrize("name,node,n,expected", [("A1", 1, 2, "A2"), ("A2", 1, 3, "A4"), ("A3", 2, 2, "D4"),
                                             ("A2", "end", 2, "A3"), ("A5", "middle", 2, "E6"),
                                             ("D6", "black", 2, "E7"), ("B3", "vector", 2, "B4")])
def test_extension_isomorphism(name, node, n, expected):
    gcm = cartan_type(name)
    report = verify_extension_isomorphism(gcm, resolve_node(gcm, node), n)
    assert report.passed, report.witness
    assert report.details["g"] == expected
    assert len(report.details["isomorphism"]) == report.details["dim_g_minus1"]


@pytest.mark.slow
def test_e7_extends_to_e8():
    report = verify_extension_isomorphism(cartan_type("E7"), 7, 2)
    assert report.passed
    assert report.details["dim_h_minus1"] == 27
    assert report.details["dim_g_minus1"] == 54


def test_extension_isomorphism_needs_finite_diagrams():
    with pytest.raises(NotFiniteTypeError):
        verify_extension_isomorphism(cartan_type("E8"), 8, 2)


def test_gcm_json_forms(tmp_path):
    gcm = cartan_type("G2")
    assert GCM.from_json(gcm.to_json()) == gcm
    assert GCM.from_json([[2, -1], [-1, 2]]) == cartan_type("A2")
    path = tmp_path / "g.json"
    path.write_text('{"matrix": [[2, -3], [-1, 2]], "name": "mine"}', encoding="utf-8")
    assert GCM.load(str(path)).name == "mine"
    with pytest.raises(UsageError):
        GCM.from_json({"rows": []})
