from pebblegames.buildk3 import (base_edges, boundary_constants, build,
                                 deletion_pass, lattice_vertices,
                                 shifted_vertices)
from pebblegames.params import FULL_K3, REDUCED_K3, Params


def test_reduced_pair_shape(reduced3, reduced_pair):
    a, b = reduced_pair
    assert len(a) == len(b) == 3 * reduced3.width == 96
    assert a.vertices == b.vertices
    assert b.edges < a.edges
    assert len(a.edges) == len(b.edges) + 1


def test_extra_edge_is_the_critical_edge(reduced3, reduced_pair):
    a, b = reduced_pair
    (extra,) = a.edges - b.edges
    assert extra == frozenset({(reduced3.mid, 0), (reduced3.mid, 2)})


def test_triangle_census(reduced3, reduced_pair):
    a, b = reduced_pair
    mid = reduced3.mid
    assert b.count_triangles() == 0
    assert ((mid, 0), (mid, 1), (mid, 2)) in a.triangles()
    assert a.count_triangles() == 8


def test_girths(reduced_pair):
    a, b = reduced_pair
    assert a.girth() == 3
    assert b.girth() == 4


def test_full_pair(full3):
    a, b = build(full3)
    assert len(a) == 3 * 384
    assert len(a.edges) == len(b.edges) + 1
    assert b.count_triangles() == 0
    assert a.count_triangles() == 48
    assert a.girth() == 3 and b.girth() == 4


def test_shift_preserves_edge_counts(reduced3, reduced_pair, shifted_pair):
    a, b = reduced_pair
    sa, sb = shifted_pair
    assert len(sa.edges) == len(a.edges)
    assert len(sb.edges) == len(b.edges)
    assert sa.vertices == sb.vertices
    # row 1 is rotated right by tr(1), rows 0 and 2 are unchanged
    tr = reduced3.tr(1)
    row1 = [v for v in sa.vertices if v[1] == 1]
    assert row1[0] == ((reduced3.width - tr) % reduced3.width, 1)
    assert [v for v in sa.vertices if v[1] == 0] == \
        [v for v in lattice_vertices(reduced3) if v[1] == 0]


def test_boundary_constants(reduced3, constants_pair):
    ca, cb = constants_pair
    expected = boundary_constants(reduced3)
    assert len(expected) == 6
    assert ca.constants == cb.constants == tuple(expected)
    w = reduced3.width
    for b_row in range(3):
        tr = reduced3.tr(b_row)
        assert ((w - tr) % w, b_row) in expected
        assert ((w - tr - 1) % w, b_row) in expected


def test_deletion_pass_idempotent():
    p = Params(3, 3, REDUCED_K3)
    once = deletion_pass(p, base_edges(p))
    assert deletion_pass(p, set(once)) == once


def test_shifted_vertices_are_a_permutation(reduced3):
    assert sorted(shifted_vertices(reduced3)) == \
        sorted(lattice_vertices(reduced3))


def test_full_variant_girths_not_asserted():
    # the full m=3 structures repeat the reduced sanity facts at width 384
    p = Params(3, 3, FULL_K3)
    a, b = build(p)
    assert frozenset({(p.mid, 0), (p.mid, 2)}) in a.edges
    assert frozenset({(p.mid, 0), (p.mid, 2)}) not in b.edges
