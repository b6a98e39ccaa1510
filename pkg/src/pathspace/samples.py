"""Shipped example specs, their concrete models, and random generators for tests."""
from __future__ import annotations

import random

from . import algebra, engine
from .algebra import cyclic, cyclic_embedding, trivial
from .oracle import ConcreteModel
from .span import (
    GraphOfGroups,
    Multigraph,
    WedgeSpec,
    amalgam,
    graph_of_groups,
    hnn,
    wedge_as_graph,
)

S = (0, -1, 1, 0)
U = (1, -1, 1, 0)  # order 6, cube is -I
ID2 = (1, 0, 0, 1)


def _powers(mul, g, n, one):
    out, x = [], one
    for _ in range(n):
        out.append(x)
        x = mul(x, g)
    return out


def _mat_powers(g, n):
    from .oracle import _matrix_mul
    return _powers(_matrix_mul, g, n, ID2)


def circle() -> GraphOfGroups:
    """Two points joined by two edges: the suspension of a two-point set."""
    return Multigraph(2, ((0, 1), (0, 1))).as_graph_of_groups()


def d_infinity() -> WedgeSpec:
    return WedgeSpec((cyclic(2), cyclic(2)))


def psl2z_wedge() -> WedgeSpec:
    return WedgeSpec((cyclic(2), cyclic(3)))


def psl2z_amalgam() -> GraphOfGroups:
    return amalgam(cyclic(2), cyclic(3), trivial(), [0], [0])


def sl2z() -> GraphOfGroups:
    """Z/4 *_{Z/2} Z/6."""
    Z4, Z6 = cyclic(4), cyclic(6)
    return amalgam(Z4, Z6, cyclic(2), cyclic_embedding(2, Z4, 2), cyclic_embedding(2, Z6, 3))


def z3_by_z() -> GraphOfGroups:
    """HNN extension of Z/3 along the identity and inversion."""
    Z3 = cyclic(3)
    return hnn(Z3, Z3, [0, 1, 2], [0, 2, 1])


def shipped_specs() -> dict:
    return {
        "circle": circle(),
        "d_infinity": wedge_as_graph(d_infinity()),
        "psl2z": psl2z_amalgam(),
        "psl2z_wedge": wedge_as_graph(psl2z_wedge()),
        "sl2z": sl2z(),
        "z3_by_z": z3_by_z(),
    }


# -- models ------------------------------------------------------------------------

def d_infinity_model(spec: GraphOfGroups | None = None) -> ConcreteModel:
    spec = spec or wedge_as_graph(d_infinity())
    one = (1, 0)
    return ConcreteModel(spec, "affine", [[one], [one, (-1, 0)], [one, (-1, 1)]],
                         [one, one], name="d_infinity")


def sl2z_model(spec: GraphOfGroups | None = None) -> ConcreteModel:
    spec = spec or sl2z()
    return ConcreteModel(spec, "matrix", [_mat_powers(S, 4), _mat_powers(U, 6)], [ID2],
                         name="sl2z")


def z3_by_z_model(spec: GraphOfGroups | None = None) -> ConcreteModel:
    spec = spec or z3_by_z()
    return ConcreteModel(spec, "semidirect", [[(a, 0) for a in range(3)]], [(0, 1)],
                         params={"n": 3, "u": 2}, name="z3_by_z")


def psl2z_model(spec: GraphOfGroups | None = None) -> ConcreteModel:
    spec = spec or psl2z_amalgam()
    return ConcreteModel(spec, "projective", [_mat_powers(S, 2), _mat_powers(U, 3)], [ID2],
                         name="psl2z")


def psl2z_wedge_model(spec: GraphOfGroups | None = None) -> ConcreteModel:
    spec = spec or wedge_as_graph(psl2z_wedge())
    return ConcreteModel(spec, "projective", [[ID2], _mat_powers(S, 2), _mat_powers(U, 3)],
                         [ID2, ID2], name="psl2z_wedge")


def registered_models() -> dict:
    """The three classical faithful models."""
    return {"d_infinity": d_infinity_model(), "sl2z": sl2z_model(), "z3_by_z": z3_by_z_model()}


def all_models() -> dict:
    out = registered_models()
    out["psl2z"] = psl2z_model()
    out["psl2z_wedge"] = psl2z_wedge_model()
    return out


# -- random data ---------------------------------------------------------------------

def _small_groups():
    return [cyclic(1), cyclic(2), cyclic(3), cyclic(4), cyclic(5), cyclic(6),
            algebra.direct_product(cyclic(2), cyclic(2)), algebra.symmetric(3)]


def _common_cyclic_edge(rng, A, B):
    """A cyclic edge group with injective legs into both ``A`` and ``B``."""
    orders = [d for d in range(1, min(A.order, B.order) + 1)
              if algebra.elements_of_order(A, d) and algebra.elements_of_order(B, d)]
    d = rng.choice(orders)
    a = rng.choice(algebra.elements_of_order(A, d))
    b = rng.choice(algebra.elements_of_order(B, d))
    return cyclic(d), cyclic_embedding(d, A, a).image, cyclic_embedding(d, B, b).image


def random_graph_of_groups(rng: random.Random, max_vertices: int = 3,
                           max_edges: int = 3) -> GraphOfGroups:
    groups = _small_groups()
    n_v = rng.randint(1, max_vertices)
    vg = [rng.choice(groups) for _ in range(n_v)]
    edges = []
    for _ in range(rng.randint(1, max_edges)):
        s, t = rng.randrange(n_v), rng.randrange(n_v)
        N, a, b = _common_cyclic_edge(rng, vg[s], vg[t])
        edges.append((s, t, N, a, b))
    return graph_of_groups(vg, edges)


def random_amalgam(rng: random.Random) -> GraphOfGroups:
    groups = _small_groups()
    G, H = rng.choice(groups), rng.choice(groups)
    N, a, b = _common_cyclic_edge(rng, G, H)
    return amalgam(G, H, N, a, b)


def random_connected_multigraph(rng: random.Random, max_vertices: int = 50,
                                max_extra: int = 10) -> Multigraph:
    n = rng.randint(1, max_vertices)
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((u, v) if rng.random() < 0.5 else (v, u))
    for _ in range(rng.randint(0, max_extra)):
        edges.append((rng.randrange(n), rng.randrange(n)))
    rng.shuffle(edges)
    return Multigraph(n, tuple(edges))


def random_word(spec: GraphOfGroups, start: int, n: int, rng: random.Random,
                pinch_bias: float = 0.3, end: int | None = None):
    """A random word with ``n`` crossings.

    With probability ``pinch_bias`` a letter undoes the previous one through
    an edge-subgroup element, so pinches are common.  With ``end`` given the
    word is forced to finish there, and ``None`` is returned if it cannot.
    """
    reach = None
    if end is not None:
        # reach[k] = vertices that can get to ``end`` in exactly k crossings
        reach = [{end}]
        for _ in range(n):
            prev = reach[-1]
            reach.append({v for v in range(spec.n_vertices)
                          if any(spec.arrival(L) in prev for L in spec.out_letters(v))})
        if start not in reach[n]:
            return None
    head = rng.randrange(spec.vgroups[start].order)
    syl = []
    v = start
    for k in range(n):
        left = n - k - 1
        options = [L for L in spec.out_letters(v) if reach is None or spec.arrival(L) in reach[left]]
        if not options:
            return None
        L = None
        if syl and rng.random() < pinch_bias:
            e, s, g = syl[-1]
            back = spec.letter(e, s) ^ 1
            if back in options:
                prevL = spec.letter(e, s)
                sub = spec.letter_transversal(prevL).subgroup
                syl[-1] = (e, s, rng.choice(sorted(sub)))
                L = back
        if L is None:
            L = rng.choice(options)
        w = spec.arrival(L)
        e, s = spec.edge_sign(L)
        syl.append((e, s, rng.randrange(spec.vgroups[w].order)))
        v = w
    return engine.GoGWord(spec, start, head, tuple(syl))
