import json

import pytest

from pathspace import algebra, samples
from pathspace.errors import (
    BadBasepoint,
    BadHomTarget,
    BadShape,
    DanglingEdge,
    NotHomomorphism,
    NotInjective,
    ValidationError,
)
from pathspace.span import (
    Multigraph,
    WedgeSpec,
    dump_graph_of_groups,
    edge,
    graph_of_groups,
    load_graph_of_groups,
    load_multigraph,
    load_wedge,
    parse_basepoint,
    underlying_multigraph,
    vertex,
    wedge_as_graph,
)

Z2, Z3, Z4, Z6 = (algebra.cyclic(n) for n in (2, 3, 4, 6))


def test_dangling_edge():
    with pytest.raises(DanglingEdge):
        graph_of_groups([Z2], [(0, 1, algebra.trivial(), [0], [0])])
    with pytest.raises(DanglingEdge):
        Multigraph(2, ((0, 2),))


def test_legs_must_be_injective_homs():
    with pytest.raises(NotInjective):
        graph_of_groups([Z4, Z4], [(0, 1, Z2, [0, 0], [0, 2])])
    with pytest.raises(NotHomomorphism):
        graph_of_groups([Z4, Z4], [(0, 1, Z2, [0, 1], [0, 2])])
    with pytest.raises(BadHomTarget):
        graph_of_groups([Z4, Z4], [(0, 1, Z2, [0, 5], [0, 2])])


def test_letters_and_orientation():
    g = samples.sl2z()
    # t0 runs tgt -> src, its inverse src -> tgt
    assert g.departure(0) == 1 and g.arrival(0) == 0
    assert g.departure(1) == 0 and g.arrival(1) == 1
    assert g.edge_sign(g.letter(0, -1)) == (0, -1)


def test_transfer_relation():
    for g in samples.shipped_specs().values():
        for e in range(g.n_edges):
            for h in g.egroups[e].elements():
                a, b = g.alpha[e](h), g.beta[e](h)
                assert g.transfer(2 * e, a) == b
                assert g.transfer(2 * e + 1, b) == a
                assert g.in_edge_subgroup(2 * e, a) and g.in_edge_subgroup(2 * e + 1, b)


def test_transversals_match_legs():
    g = samples.sl2z()
    assert g.letter_transversal(0).subgroup == (0, 2)
    assert g.letter_transversal(1).subgroup == (0, 3)


def test_wedge_shape():
    g = wedge_as_graph(WedgeSpec((Z2, Z3)))
    assert g.n_vertices == 3 and g.vgroups[0].order == 1
    assert g.src == (1, 2) and g.tgt == (0, 0)


def test_basepoints():
    assert parse_basepoint("3") == vertex(3)
    assert parse_basepoint("v2") == vertex(2)
    assert parse_basepoint("e1") == edge(1)
    with pytest.raises(BadBasepoint):
        parse_basepoint("x")
    with pytest.raises(BadBasepoint):
        vertex(5).check(samples.sl2z())
    assert str(edge(1)) == "e1"


def test_load_all_kinds():
    raw = {"schema": 1, "kind": "amalgam", "G": {"cyclic": 4}, "H": {"cyclic": 6},
           "N": {"cyclic": 2}, "iG": [0, 2], "iH": [0, 3]}
    assert load_graph_of_groups(raw) == samples.sl2z()
    raw = {"kind": "hnn", "G": {"cyclic": 3}, "alpha": [0, 1, 2], "beta": [0, 2, 1]}
    assert load_graph_of_groups(raw) == samples.z3_by_z()
    raw = {"kind": "wedge", "factors": [{"cyclic": 2}, {"cyclic": 3}]}
    assert load_graph_of_groups(raw) == wedge_as_graph(samples.psl2z_wedge())
    assert load_wedge(raw) == samples.psl2z_wedge()
    raw = {"kind": "multigraph", "vertices": 2, "edges": [[0, 1], [0, 1]]}
    assert load_graph_of_groups(raw) == samples.circle()
    raw = {"kind": "graph_of_groups", "groups": {"Z2": [[0, 1], [1, 0]]},
           "vertices": ["Z2", {"cyclic": 4}],
           "edges": [{"src": 0, "tgt": 1, "group": "Z2", "alpha": [0, 1], "beta": [0, 2]}]}
    g = load_graph_of_groups(raw)
    assert g.n_edges == 1 and g.beta[0].image == (0, 2)


def test_dump_roundtrip():
    for g in samples.shipped_specs().values():
        d = dump_graph_of_groups(g)
        assert load_graph_of_groups(json.loads(json.dumps(d))) == g


@pytest.mark.parametrize("raw", [
    [],
    {"kind": "nope"},
    {"schema": 2, "kind": "hnn"},
    {"kind": "amalgam", "G": {"cyclic": 2}},
    {"kind": "graph_of_groups", "vertices": ["missing"]},
    {"kind": "multigraph", "vertices": 0},
    {"kind": "wedge"},
    {"kind": "hnn", "G": {"cyclic": 3}, "alpha": "x", "beta": [0, 1, 2]},
])
def test_load_rejects(raw):
    with pytest.raises(ValidationError):
        load_graph_of_groups(raw)


def test_bad_group_table_in_file():
    raw = {"kind": "graph_of_groups", "vertices": [[[1, 0], [0, 1]]]}
    with pytest.raises(ValidationError):
        load_graph_of_groups(raw)


def test_underlying_multigraph():
    g = samples.sl2z()
    assert underlying_multigraph(g) == Multigraph(2, ((0, 1),))
    raw = {"kind": "hnn", "G": {"cyclic": 3}, "alpha": [0, 1, 2], "beta": [0, 2, 1]}
    assert load_multigraph(raw) == Multigraph(1, ((0, 0),))
    with pytest.raises(BadShape):
        load_wedge({"kind": "hnn"})
