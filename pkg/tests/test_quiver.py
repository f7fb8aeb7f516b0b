import pytest

from grassmann_lg.invariants import check_decomposition, sweep_specs
from grassmann_lg.quiver import (InvalidSpecError, ModelSpec, Vertex, block_size, build_quiver,
                                 decompose, horizontal, identify_block, make_block, vertical,
                                 weight_variable, weight_vertex)

G36 = ModelSpec(3, 3)


@pytest.mark.parametrize("n, k, nv, na", [(3, 3, 11, 14), (2, 2, 6, 6), (4, 2, 10, 12)])
def test_quiver_counts(n, k, nv, na):
    q = build_quiver(ModelSpec(n, k))
    assert len(q.vertices) == nv == n * k + 2
    assert len(q.arrows) == na == (k - 1) * n + k * (n - 1) + 2
    assert q.arrows.count(vertical(0, 1)) == 1
    assert q.arrows.count(horizontal(k, n)) == 1


@pytest.mark.parametrize("n, k, degrees", [(1, 3, ()), (3, 1, ()), (2, 2, (5,)), (2, 2, (2, 2)),
                                           (3, 3, (0, 1))])
def test_invalid_specs(n, k, degrees):
    with pytest.raises(InvalidSpecError):
        ModelSpec(n, k, degrees)


def test_blocks_from_definitions():
    assert make_block(G36, "HB", 0, 1).arrows == {vertical(0, 1)}
    q = build_quiver(G36)
    assert make_block(G36, "MB", 0, 3).arrows == set(q.arrows) - {horizontal(3, 3)}
    assert make_block(G36, "VB", 2, 3).arrows == {horizontal(i, 2) for i in (1, 2, 3)}
    assert make_block(G36, "HB", 1, 3).arrows == {vertical(i, j) for i in (1, 2) for j in (1, 2, 3)}


@pytest.mark.parametrize("kind, r, s", [("HB", 1, 1), ("HB", 2, 4), ("VB", 0, 2), ("VB", 2, 5),
                                        ("MB", 4, 1), ("MB", 0, 0), ("XB", 0, 1)])
def test_block_range_errors(kind, r, s):
    with pytest.raises(ValueError):
        make_block(G36, kind, r, s)


def test_block_sizes():
    assert block_size(make_block(G36, "HB", 1, 2)) == 1
    assert block_size(make_block(G36, "MB", 2, 2)) == 2
    assert block_size(make_block(G36, "VB", 1, 3)) == 2


def test_block_size_counts_steps():
    # a block's size is the drop in "distance to the end" along any path through it
    for r in range(0, 4):
        for s in range(1, 4):
            b = make_block(G36, "MB", r, s)
            assert block_size(b) == (3 - r) + (s - 1)


def test_decompose_1121():
    dec = decompose(ModelSpec(3, 3, (1, 1, 2, 1)))
    assert [str(b) for b in dec.blocks] == ["HB(0,1)", "HB(1,2)", "MB(2,2)", "VB(2,3)"]
    assert [weight_vertex(b) for b in dec.blocks] == [(0, 1), (1, 1), (3, 1), (3, 2)]
    assert [weight_variable(b) for b in dec.blocks] == ["a", "a_1_1", "a_3_1", "a_3_2"]
    assert dec.complement == {horizontal(3, 3)}


def test_decompose_1112():
    dec = decompose(ModelSpec(3, 3, (1, 1, 1, 2)))
    assert [str(b) for b in dec.blocks] == ["HB(0,1)", "HB(1,2)", "HB(2,3)", "VB(1,3)"]
    assert [weight_variable(b) for b in dec.blocks] == ["a", "a_1_1", "a_2_1", "a_3_2"]


def test_decompose_hyperplane_in_g24():
    dec = decompose(ModelSpec(2, 2, (1,)))
    assert [str(b) for b in dec.blocks] == ["HB(0,1)"]
    assert len(dec.complement) == 5


def test_decompose_bare_grassmannian():
    dec = decompose(ModelSpec(2, 3))
    assert dec.blocks == ()
    assert dec.complement == set(dec.quiver.arrows)


def test_weight_vertices():
    assert weight_vertex(make_block(G36, "HB", 0, 1)) == Vertex(0, 1)
    assert weight_variable(make_block(G36, "HB", 0, 1)) == "a"
    assert weight_vertex(make_block(G36, "VB", 1, 3)) == Vertex(3, 2)
    assert weight_variable(make_block(G36, "VB", 1, 3)) == "a_3_2"


def test_identify_block():
    b = make_block(G36, "MB", 1, 2)
    found = identify_block(3, 3, b.arrows)
    assert found is not None and found.arrows == b.arrows
    assert identify_block(3, 3, {vertical(1, 1)}) is None


def test_degree_order_is_kept():
    a = decompose(ModelSpec(3, 3, (2, 1, 1, 1)))
    b = decompose(ModelSpec(3, 3, (1, 1, 1, 2)))
    assert [str(x) for x in a.blocks] != [str(x) for x in b.blocks]


@pytest.mark.parametrize("spec", list(sweep_specs()), ids=str)
def test_decomposition_sweep(spec):
    dec = decompose(spec)
    assert check_decomposition(dec) == ""
    assert sum(block_size(b) for b in dec.blocks) == sum(spec.degrees)
    union = set(dec.complement)
    for b in dec.blocks:
        union |= b.arrows
    assert union == set(dec.quiver.arrows)
