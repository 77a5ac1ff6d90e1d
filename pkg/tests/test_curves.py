"""Model branches, orbit curves, and the exact intersection tables."""

import pytest

from e8nash.curves import (
    DIVISOR_CLASSES, RESOLUTION_GRAPH_EDGES, graph_adjacent,
    frame, model_branch, branch_stabilizer, orbit_curve,
    tangent_line_of_class, generic_line, per_branch_tangent_order,
    intersection_matrix, table_multiplicities, intersect_with_line,
    invariant_equation, tangent_cone_class, form_contacts,
)

EXPONENTS = {1: (1, 1), 2: (1, 3), 3: (1, 5), 4: (1, 2),
             5: (1, 9), 6: (1, 4), 7: (3, 7), 8: (2, 3)}
DICRITICALS = {1: 1, 2: 30, 3: 20, 4: 20, 5: 12, 6: 12, 7: 12, 8: 12}
COVERING = {1: 60, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 2}
BRANCHES = {1: 60, 2: 30, 3: 20, 4: 40, 5: 12, 6: 24, 7: 12, 8: 24}
MULTS = {1: 60, 2: 30, 3: 20, 4: 40, 5: 12, 6: 24, 7: 36, 8: 48}
DIAG = {1: 60, 2: 32, 3: 24, 4: 42, 5: 20, 6: 30, 7: 40, 8: 50}


def test_class_exponents_and_orbits():
    for k, cd in DIVISOR_CLASSES.items():
        assert (cd.a, cd.b) == EXPONENTS[k]
        assert cd.dicriticals == DICRITICALS[k]
        assert cd.covering_degree == COVERING[k]
    assert DIVISOR_CLASSES[2].orbit == "E"
    assert DIVISOR_CLASSES[3].orbit == DIVISOR_CLASSES[4].orbit == "F"
    for k in (5, 6, 7, 8):
        assert DIVISOR_CLASSES[k].orbit == "V"


def test_resolution_graph_shape():
    assert len(RESOLUTION_GRAPH_EDGES) == 7
    degree = {k: 0 for k in range(1, 9)}
    for e in RESOLUTION_GRAPH_EDGES:
        for v in e:
            degree[v] += 1
    assert degree[1] == 3  # central vertex with three arms
    assert sorted(degree.values()) == [1, 1, 1, 2, 2, 2, 2, 3]
    assert graph_adjacent(1, 2) and graph_adjacent(6, 5)
    assert not graph_adjacent(2, 3)


def test_branch_counts_and_multiplicities():
    tm = table_multiplicities()
    for k in range(1, 9):
        assert tm[k]["branches"] == BRANCHES[k]
        assert tm[k]["multiplicity"] == MULTS[k]
        assert tm[k]["branches"] == DICRITICALS[k] * COVERING[k]


def test_stabilizer_covering_consistency():
    for k in range(1, 9):
        # orbit-stabilizer: branches x stabilizer size = group order
        assert BRANCHES[k] * len(branch_stabilizer(k)) == 120


def test_self_tangent_intersections():
    imat = intersection_matrix()
    for k in range(1, 9):
        assert imat[(k, k)] == DIAG[k]


def test_generic_line_column_equals_multiplicity():
    imat = intersection_matrix()
    for k in range(1, 9):
        assert imat[(k, 0)] == MULTS[k]


def test_shared_tangent_directions_exceed_multiplicity():
    # classes 5..8 share the vertex tangent directions, so off-diagonal
    # entries there exceed the bare multiplicity
    imat = intersection_matrix()
    assert imat[(7, 5)] == 40
    assert imat[(7, 5)] > MULTS[7]
    assert imat[(8, 5)] > MULTS[8]
    # distinct tangent cones drop to the multiplicity
    assert imat[(2, 3)] == MULTS[2]


def test_per_branch_tangent_order():
    assert per_branch_tangent_order(1) is None
    for k in range(2, 9):
        assert per_branch_tangent_order(k) == DIVISOR_CLASSES[k].b


def test_branch_lies_over_tangent_point():
    for k in (2, 3, 5, 7):
        b = model_branch(k, "m")
        # t = 0 is sent to the tangent direction of the frame
        assert b.us.coefficient(0).is_zero() or b.vs.coefficient(0).is_zero()


def test_frames_are_unimodular():
    for k in range(1, 9):
        assert frame(k).det() == 1


def test_tangent_cones_are_form_monomials():
    # tangent cone of each orbit curve is a monomial in the three forms
    expected = {2: (1, 0, 0), 3: (0, 1, 0), 5: (0, 0, 1)}
    for k, efv in expected.items():
        assert tangent_cone_class([orbit_curve(k, "q%d" % k)]) == efv


def test_invariant_equation_head_is_nonempty():
    eq = invariant_equation([orbit_curve(5, "h")], width=8)
    assert eq
    lead = min(eq, key=lambda ijk: 30 * ijk[0] + 20 * ijk[1] + 12 * ijk[2])
    assert lead == (0, 0, 1)


def test_form_contacts_on_model_branch():
    # class 5 model branch (t, m t^9) at a vertex: the vertex factor of the
    # V-form meets it to order 9, the other 11 vertex factors to order 1
    e, f, v = form_contacts(model_branch(5, "m"))
    assert (e, f, v) == (30, 20, 20)
    assert v == 11 + DIVISOR_CLASSES[5].b
