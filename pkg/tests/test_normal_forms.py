import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathspace import algebra, engine, normal_forms as nf, oracle, samples
from pathspace.errors import BadLetter, BrokenChain, BudgetExceeded
from pathspace.span import Multigraph, WedgeSpec, vertex, wedge_as_graph

DINF = samples.d_infinity()
PSL = samples.psl2z_wedge()
THETA = Multigraph(2, ((0, 1), (0, 1), (0, 1)))


def test_canonical_form_identity():
    spec = samples.sl2z()
    w = engine.parse_word(spec, "@0 0")
    assert nf.canonical_form(w) == w


def test_canonical_form_collapses_edge_subgroup_word():
    spec = samples.sl2z()
    w = engine.parse_word(spec, "@0 2 t0- 3 t0+ 2")
    assert nf.canonical_form(w).crossings == 0


def test_canonical_forms_distinct_under_oracle():
    spec = samples.psl2z_amalgam()
    m = samples.psl2z_model(spec)
    for start in range(2):
        seen = {}
        for n in range(4):
            for w in oracle.raw_words(spec, start, n):
                c = nf.canonical_form(w)
                val = (c.end, oracle.eval_word(m, w))
                if c.key() in seen:
                    assert seen[c.key()] == val
                seen[c.key()] = val
        assert len(set(seen.values())) == len(seen)


def test_free_product_examples():
    assert nf.free_product_normal_form([(0, 1), (0, 1)], DINF) == ()
    assert nf.free_product_normal_form([(0, 1), (1, 1), (0, 1)], DINF) == ((0, 1), (1, 1), (0, 1))
    assert nf.free_product_normal_form([(1, 1), (0, 0), (1, 1)], PSL) == ((1, 2),)
    assert nf.free_product_normal_form([(1, 1), (0, 0), (1, 2)], PSL) == ()


@pytest.mark.parametrize("bad", [[(2, 1)], [(0, 5)], [3], [(0,)]])
def test_free_product_bad_letters(bad):
    with pytest.raises(BadLetter):
        nf.free_product_normal_form(bad, PSL)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 2)), max_size=12))
def test_free_product_form_invariants(raw):
    raw = [(i, g % PSL.groups[i].order) for i, g in raw]
    w = nf.free_product_normal_form(raw, PSL)
    assert all(g != 0 for _, g in w)
    assert all(a[0] != b[0] for a, b in zip(w, w[1:]))
    assert nf.free_product_normal_form(list(w), PSL) == w


def test_free_product_words_are_distinct_matrices():
    m = samples.psl2z_wedge_model()
    imgs = [m.vertex_images[1], m.vertex_images[2]]
    seen = set()
    for n in range(7):
        for w in nf.free_product_words(PSL, n):
            x = m.identity
            for i, g in w:
                x = m.mul(x, imgs[i][g])
            assert x not in seen
            seen.add(x)


def test_un_count():
    assert nf.un_count(2, 5) == 2
    assert nf.un_count(7, 0) == 1
    assert nf.un_count(3, 2) == 6
    for size in range(1, 5):
        for n in range(6):
            brute = sum(1 for idx in itertools.product(range(size), repeat=n)
                        if all(a != b for a, b in zip(idx, idx[1:])))
            assert nf.un_count(size, n) == brute == len(list(nf.enumerate_un(size, n)))


def test_splitting_examples():
    assert nf.splitting_census(DINF, 0) == 1
    assert [nf.splitting_census(DINF, n) for n in range(1, 6)] == [2] * 5
    assert nf.splitting_census(PSL, 3) == 6


def test_splitting_budget():
    with pytest.raises(BudgetExceeded):
        nf.splitting_census(WedgeSpec((algebra.cyclic(2),) * 5), 12, budget=100)


def test_splitting_matches_wedge_filtration():
    for w in (DINF, PSL, WedgeSpec((algebra.cyclic(2), algebra.cyclic(2), algebra.cyclic(3)))):
        f = engine.filtration(wedge_as_graph(w), vertex(0), vertex(0), 8)
        assert [f.stages[2 * n].new_reduced for n in range(5)] == \
            [nf.splitting_census(w, n) for n in range(5)]
        assert all(f.stages[2 * n + 1].new_reduced == 0 for n in range(4))


def test_reduce_path_examples():
    g = Multigraph(1, ((0, 0),))
    assert nf.reduce_path(0, [(0, 1), (0, -1)], g).steps == ()
    p = nf.reduce_path(0, [(0, 1), (1, -1), (1, 1), (2, -1)], THETA)
    assert p.steps == ((0, 1), (2, -1))
    q = nf.reduce_path(0, [(0, 1), (1, -1)], THETA)
    assert q.steps == ((0, 1), (1, -1))


def test_reduce_path_broken_chain():
    with pytest.raises(BrokenChain):
        nf.reduce_path(0, [(0, 1), (1, 1)], THETA)
    with pytest.raises(BrokenChain):
        nf.reduce_path(0, [(5, 1)], THETA)


def _raw_path(g, rng, start, n):
    steps, v = [], start
    for _ in range(n):
        opts = [(e, 1) for e, (a, _) in enumerate(g.edges) if a == v]
        opts += [(e, -1) for e, (_, b) in enumerate(g.edges) if b == v]
        if not opts:
            break
        e, s = rng.choice(opts)
        if steps and rng.random() < 0.4:
            e, s = steps[-1][0], -steps[-1][1]
        steps.append((e, s))
        a, b = g.edges[e]
        v = b if s > 0 else a
    return steps


def _reduce_at_random(steps, rng):
    steps = list(steps)
    while True:
        spots = [i for i in range(len(steps) - 1)
                 if steps[i][0] == steps[i + 1][0] and steps[i][1] == -steps[i + 1][1]]
        if not spots:
            return tuple(steps)
        i = rng.choice(spots)
        del steps[i:i + 2]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_reduce_path_confluent_and_idempotent(seed):
    rng = random.Random(seed)
    g = samples.random_connected_multigraph(rng, max_vertices=6, max_extra=4)
    steps = _raw_path(g, rng, 0, rng.randint(0, 12))
    p = nf.reduce_path(0, steps, g)
    assert nf.reduce_path(0, p.steps, g) == p
    assert _reduce_at_random(steps, rng) == p.steps
    assert p.end(g) == nf.path_end(g, 0, steps)


def test_pi1_examples():
    assert nf.pi1_rank(Multigraph(1, ()), 0) == 0
    assert nf.pi1_rank(Multigraph(1, ((0, 0),)), 0) == 1
    assert nf.pi1_rank(THETA, 0) == 2
    two = Multigraph(3, ((0, 1), (0, 1)))
    assert nf.pi1_rank(two) is nf.DISCONNECTED
    assert nf.pi1_rank(two, 0) == 1 and nf.pi1_rank(two, 2) == 0


def test_is_tree_examples():
    assert nf.is_tree(Multigraph(1, ()))
    assert not nf.is_tree(Multigraph(2, ((0, 1), (0, 1))))
    assert nf.is_tree(Multigraph(5, ((0, 1), (1, 2), (2, 3), (3, 4))))
    assert not nf.is_tree(Multigraph(2, ()))


def test_loop_growth_matches_rank():
    # a bouquet of r circles has 2r(2r-1)^(l-1) reduced words of length l,
    # of which the closed ones are all of them
    for r in range(1, 4):
        g = Multigraph(1, tuple((0, 0) for _ in range(r)))
        for length in range(1, 6):
            assert nf.count_reduced_loops(g, 0, length) == 2 * r * (2 * r - 1) ** (length - 1)


def test_shortest_loop():
    assert nf.shortest_reduced_loop(Multigraph(3, ((0, 1), (1, 2))), 0) is None
    p = nf.shortest_reduced_loop(THETA, 0)
    assert len(p.steps) == 2 and p.end(THETA) == 0
    tri = Multigraph(4, ((0, 1), (1, 2), (2, 3), (3, 1)))
    assert len(nf.shortest_reduced_loop(tri, 0).steps) == 5
