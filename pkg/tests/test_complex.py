import pytest

from orbichi.complex import (
    SimplicialComplex,
    barycentric_subdivision,
    boundary_facets,
    build_complex,
    canonical_cell,
    connected_components,
    euler_char_top,
    topological_boundary,
)
from orbichi.errors import DuplicateVertexInCell, NotPseudomanifold

from oracles import EDGE_SD, TETRA_BOUNDARY_CELLS, TRIANGLE_SD

TETRA_BOUNDARY = [["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]]


def counts(K):
    return {d: len(K.cells_of_dim(d)) for d in range(K.dim + 1)}


def test_build_triangle():
    K = build_complex([["a", "b", "c"]])
    assert len(K) == 7
    assert counts(K) == {0: 3, 1: 3, 2: 1}


def test_build_single_vertex():
    assert len(build_complex([["a"]])) == 1


def test_build_tetra_boundary():
    assert len(build_complex(TETRA_BOUNDARY)) == TETRA_BOUNDARY_CELLS


def test_build_is_idempotent():
    K = build_complex(TETRA_BOUNDARY)
    assert build_complex([list(c) for c in K.cells]) == K


def test_duplicate_vertex_rejected():
    with pytest.raises(DuplicateVertexInCell):
        build_complex([["a", "b", "a"]])


def test_canonical_cell_orders_ints_before_strings():
    assert canonical_cell(["x", 2, 1]) == (1, 2, "x")


@pytest.mark.parametrize("cells,chi", [
    (TETRA_BOUNDARY, 2),
    ([["a", "b"], ["b", "c"], ["a", "c"]], 0),
    ([["a", "b", "c"]], 1),
])
def test_euler_char_top(cells, chi):
    assert euler_char_top(build_complex(cells)) == chi


def test_topological_boundary_triangle():
    bd = topological_boundary(build_complex([["a", "b", "c"]]))
    assert counts(bd) == {0: 3, 1: 3}


def test_topological_boundary_closed_surface_is_empty():
    assert topological_boundary(build_complex(TETRA_BOUNDARY)).is_empty()


def test_topological_boundary_interval():
    bd = topological_boundary(build_complex([["a", "b"], ["b", "c"]]))
    assert bd.cells == {("a",), ("c",)}


def test_boundary_of_boundary_is_empty():
    K = build_complex([[0, 1, 2, 3], [1, 2, 3, 4]])
    assert topological_boundary(topological_boundary(K)).is_empty()


def test_not_pseudomanifold_three_cofaces():
    K = build_complex([["a", "b", "c"], ["a", "b", "d"], ["a", "b", "e"]])
    with pytest.raises(NotPseudomanifold):
        topological_boundary(K)


def test_not_pseudomanifold_impure():
    K = build_complex([["a", "b", "c"], ["c", "d"]])
    with pytest.raises(NotPseudomanifold):
        boundary_facets(K)


def test_subdivide_edge():
    sd, _ = barycentric_subdivision(build_complex([["a", "b"]]))
    assert counts(sd) == EDGE_SD


def test_subdivide_triangle():
    sd, _ = barycentric_subdivision(build_complex([["a", "b", "c"]]))
    assert counts(sd) == TRIANGLE_SD


def test_subdivision_preserves_chi():
    K = build_complex(TETRA_BOUNDARY)
    sd, _ = barycentric_subdivision(K)
    assert euler_char_top(sd) == euler_char_top(K) == 2


def test_cell_map_surjective_and_maximal():
    K = build_complex([["a", "b", "c"], ["b", "c", "d"]])
    sd, cmap = barycentric_subdivision(K)
    assert set(cmap.values()) == set(K.cells)
    assert set(cmap) == set(sd.cells)
    for new, old in cmap.items():
        # the largest cell of the flag is the one whose token sorts last in length
        assert "[" + ",".join(map(str, old)) + "]" in new
        assert all(len(v.split(",")) <= len(old) for v in new)


def test_subdivision_vertex_ids_are_cell_tokens():
    sd, _ = barycentric_subdivision(build_complex([["a", "b"]]))
    assert sd.vertices == {"[a]", "[b]", "[a,b]"}


def test_iterated_subdivision():
    K = build_complex([["a", "b", "c"]])
    sd1, _ = barycentric_subdivision(K)
    sd2, _ = barycentric_subdivision(sd1)
    assert len(sd2.cells_of_dim(2)) == 36
    assert euler_char_top(sd2) == 1


def test_components_disjoint_triangles():
    K = build_complex([["a", "b", "c"], ["x", "y", "z"]])
    assert len(connected_components(K.cells)) == 2


def test_components_connected():
    K = build_complex(TETRA_BOUNDARY)
    assert len(connected_components(K.cells)) == 1


def test_components_vertices_only():
    K = build_complex([["a", "b"], ["b", "c"], ["a", "c"]])
    assert len(connected_components(K.cells_of_dim(0))) == 3


def test_empty_complex():
    K = SimplicialComplex()
    assert K.is_empty() and K.dim == -1 and euler_char_top(K) == 0
    assert topological_boundary(K).is_empty()


def test_is_full():
    K = build_complex([["a", "b", "c"]])
    ring = topological_boundary(K)
    assert not K.is_full(ring)
    assert K.is_full(SimplicialComplex.closure_of([("a", "b")]))
