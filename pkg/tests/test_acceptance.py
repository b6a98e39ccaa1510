"""Exit criteria.  Each test prints one PASS/FAIL line; the lines are collected
again in the terminal summary under "acceptance criteria"."""
import random
import time

import pytest

from pathspace import connectivity as conn
from pathspace import engine, normal_forms, oracle, samples
from pathspace.errors import BudgetExceeded
from pathspace.span import Multigraph, edge, vertex, wedge_as_graph

pytestmark = pytest.mark.acceptance

SHIPPED = samples.shipped_specs()


def _random_specs(k=20, seed=2024):
    rng = random.Random(seed)
    return [samples.random_graph_of_groups(rng) for _ in range(k)]


# 1 ---------------------------------------------------------------------------------

def test_circle_example(criterion):
    t0 = time.perf_counter()
    g = samples.circle()
    free = engine.filtration(g, vertex(0), None, 12)
    loops = engine.filtration(g, vertex(0), vertex(0), 12)
    to_edge = engine.filtration(g, vertex(0), edge(0), 12)
    elapsed = time.perf_counter() - t0
    fails = []
    for s in free.stages[1:]:
        if s.z_count != 2**s.n or s.new_reduced != 2:
            fails.append(f"free stage {s.n}: z={s.z_count} new={s.new_reduced}")
    odd = [s.r_count for s in loops.stages if s.n % 2 == 0]
    if odd != [2 * j + 1 for j in range(7)]:
        fails.append(f"loop r-counts {odd}")
    if any(s.new_reduced for s in loops.stages if s.n % 2):
        fails.append("odd loop stages add classes")
    if [s.new_reduced for s in to_edge.stages[1:]] != [1] * 12:
        fails.append(f"edge fibre adds {[s.new_reduced for s in to_edge.stages]}")
    if elapsed >= 1.0:
        fails.append(f"took {elapsed:.2f}s")
    ok = not fails
    criterion(1, ok, f"circle stages 1..12, loop r = {odd}, {elapsed:.3f}s"
              + ("" if ok else f"; {fails[:3]}"))
    assert ok, fails


# 2 ---------------------------------------------------------------------------------

def _independent_r(spec, b, n_max, word_budget):
    """r per end vertex from distinct normal forms of every Z_k word, k <= n, same parity."""
    classes = {}  # (end, parity) -> set of normal-form keys, cumulative
    out = []
    for n in range(n_max + 1):
        if engine._z_count(engine._Fibre(spec, b, None), n) > word_budget:
            break
        Z, _ = engine.enumerate_stage(spec, b, None, n)
        for w in Z:
            classes.setdefault((w.end, n % 2), set()).add(engine.normalize(w).key())
        out.append({v: len(classes.get((v, n % 2), ())) for v in range(spec.n_vertices)})
    return out


def _filtration_within_budget(g, b, c, n_max, budget=2 * 10**5):
    for n in range(n_max, -1, -1):
        try:
            return engine.filtration(g, b, c, n, budget=budget)
        except BudgetExceeded:
            continue


def test_census_recurrence(criterion):
    specs = list(SHIPPED.items()) + [(f"random{i}", g) for i, g in enumerate(_random_specs())]
    fails, checked_stages, independent = [], 0, 0
    for name, g in specs:
        for b in range(g.n_vertices):
            targets = [None] + [vertex(c) for c in range(g.n_vertices)]
            fibres = {}
            for c in targets:
                f = _filtration_within_budget(g, vertex(b), c, 6)
                fibres[c] = f
                r = [s.r_count for s in f.stages]
                for s in f.stages:
                    prev = r[s.n - 2] if s.n >= 2 else 0
                    checked_stages += 1
                    if s.r_count != prev + s.z_count - s.j_count:
                        fails.append(f"{name} v{b}->{c} stage {s.n}")
            indep = _independent_r(g, vertex(b), 6, 10**4)
            for n, per_end in enumerate(indep):
                for c in range(g.n_vertices):
                    f = fibres[vertex(c)]
                    if n < len(f.stages):
                        independent += 1
                        if f.stages[n].r_count != per_end[c]:
                            fails.append(f"{name} v{b}->v{c} stage {n}: r={f.stages[n].r_count}"
                                         f" but {per_end[c]} distinct classes")
    ok = not fails
    criterion(2, ok, f"{len(specs)} specs, {checked_stages} stage rows, "
              f"{independent} rows recounted from normal forms" + ("" if ok else f"; {fails[:3]}"))
    assert ok, fails


def test_edge_fibre_recurrence(criterion):
    # fibres ending at an edge object step by one crossing; reported with criterion 2
    fails = []
    for name, g in SHIPPED.items():
        for e in range(g.n_edges):
            for b in range(g.n_vertices):
                f = engine.filtration(g, vertex(b), edge(e), 5)
                r = [s.r_count for s in f.stages]
                for s in f.stages:
                    if s.r_count != (r[s.n - 1] if s.n else 0) + s.z_count - s.j_count:
                        fails.append(f"{name} v{b}->e{e} stage {s.n}")
    assert not fails, fails


# 3 ---------------------------------------------------------------------------------

def test_oracle_agreement(criterion):
    t0 = time.perf_counter()
    reports = [oracle.agreement_check(m, 5) for m in samples.registered_models().values()]
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in reports) and elapsed < 60
    desc = ", ".join(f"{r.model}: {r.mode} {r.words} words" for r in reports)
    criterion(3, ok, f"radius 5; {desc}; {elapsed:.1f}s"
              + ("" if ok else f"; {[r.mismatches[:2] for r in reports]}"))
    assert ok


# 4 ---------------------------------------------------------------------------------

def test_confluence(criterion):
    rng = random.Random(4)
    failures, total = [], 0
    for name, g in SHIPPED.items():
        n = 0
        while n < 10**4:
            w = samples.random_word(g, rng.randrange(g.n_vertices), rng.randint(0, 6), rng,
                                    pinch_bias=0.5)
            if w is None:
                continue
            n += 1
            if not oracle.reduction_order_oracle(w):
                failures.append(f"{name}: {w}")
        total += n
    ok = not failures
    criterion(4, ok, f"{total} random words over {len(SHIPPED)} specs, "
              f"{len(failures)} disagreeing reduction orders")
    assert ok, failures[:5]


# 5 ---------------------------------------------------------------------------------

def test_gap_map(criterion):
    rng = random.Random(5)
    specs = [("sl2z", samples.sl2z())] + [(f"amalgam{i}", samples.random_amalgam(rng))
                                          for i in range(10)]
    bad = []
    for name, g in specs:
        rep = engine.gap_map_check(g)
        if not rep.passed:
            bad.append((name, rep.counterexample))
    ok = not bad
    criterion(5, ok, f"{len(specs)} amalgams checked exhaustively, {len(bad)} counterexamples")
    assert ok, bad


# 6 ---------------------------------------------------------------------------------

def test_splitting_census(criterion):
    cases = [("d_infinity", samples.d_infinity(), samples.d_infinity_model()),
             ("psl2z", samples.psl2z_wedge(), samples.psl2z_wedge_model())]
    fails, rows = [], {}
    for name, w, m in cases:
        g = wedge_as_graph(w)
        split = [normal_forms.splitting_census(w, n) for n in range(9)]
        syl = oracle.syllable_ball([m.vertex_images[i + 1] for i in range(len(w.groups))],
                                   m.mul, m.identity, 8)
        ball = oracle.ball_enumerate(m, g, vertex(0), 16).counts_at(0)
        filt = engine.filtration(g, vertex(0), vertex(0), 16)
        hub = [filt.stages[2 * n].new_reduced for n in range(9)]
        rows[name] = split
        if not (split == syl == [ball[2 * n] for n in range(9)] == hub):
            fails.append(f"{name}: split={split} syllable={syl} ball={ball} hub={hub}")
        if any(ball[2 * n + 1] for n in range(8)):
            fails.append(f"{name}: odd crossing counts reach the hub")
    if rows.get("d_infinity", [])[1:] != [2] * 8:
        fails.append("D_inf is not 2 per length")
    if rows.get("psl2z", [])[1:4] != [3, 4, 6]:
        fails.append("PSL(2,Z) lengths 1..3 are not 3, 4, 6")
    ok = not fails
    criterion(6, ok, f"lengths 0..8: D_inf {rows.get('d_infinity')}, PSL {rows.get('psl2z')}"
              + ("" if ok else f"; {fails}"))
    assert ok, fails


# 7 ---------------------------------------------------------------------------------

def _connected(g):
    return normal_forms.pi1_rank(g) is not normal_forms.DISCONNECTED


def test_pi1_and_trees(criterion):
    rng = random.Random(7)
    fails = []
    trees = 0
    for i in range(100):
        g = samples.random_connected_multigraph(rng, max_vertices=50,
                                                max_extra=rng.choice([0, 0, 1, 3, 10]))
        v = rng.randrange(g.n_vertices)
        formula = g.n_edges - g.n_vertices + 1
        a, b = normal_forms.pi1_rank(g, v), oracle.spanning_tree_pi1(g, v)
        if not a == b == formula == normal_forms.pi1_rank(g):
            fails.append(f"graph {i}: rank {a}, tree {b}, formula {formula}")
        tree = normal_forms.is_tree(g)
        trees += tree
        if tree != (g.n_edges == g.n_vertices - 1):
            fails.append(f"graph {i}: is_tree={tree}")
        loops = sum(normal_forms.count_reduced_loops(g, v, n) for n in range(1, 2 * g.n_edges + 1))
        if (loops == 0) != tree:
            fails.append(f"graph {i}: {loops} closed reduced loops, is_tree={tree}")
        short = normal_forms.shortest_reduced_loop(g, v)
        if (short is None) != tree:
            fails.append(f"graph {i}: shortest loop {short}")
    # disconnected graphs are never trees
    for i in range(30):
        n = rng.randint(2, 20)
        g = Multigraph(n, tuple((rng.randrange(n), rng.randrange(n))
                                for _ in range(rng.randint(0, n))))
        if normal_forms.is_tree(g) != (_connected(g) and g.n_edges == n - 1):
            fails.append(f"extra graph {i}")
    ok = not fails
    criterion(7, ok, f"100 connected multigraphs ({trees} trees) + 30 arbitrary; "
              f"{len(fails)} discrepancies")
    assert ok, fails[:5]


# 8 ---------------------------------------------------------------------------------

def test_connectivity_calculator(criterion):
    grid = range(-2, 9)
    fails = []
    for k in grid:
        for l in grid:
            if conn.jz_conn(3, k, l, -2) != k + l + 2 or conn.join_conn(k, l) != k + l + 2:
                fails.append(("blakers-massey", k, l))
    for n in range(2, 12):
        for k in grid:
            for l in grid:
                for m in grid:
                    v = conn.jz_conn(n, k, l, m)
                    if k < 8 and conn.jz_conn(n, k + 1, l, m) < v:
                        fails.append(("k", n, k, l, m))
                    if l < 8 and conn.jz_conn(n, k, l + 1, m) < v:
                        fails.append(("l", n, k, l, m))
                    if m < 8 and conn.jz_conn(n, k, l, m + 1) < v:
                        fails.append(("m", n, k, l, m))
                    if n + 2 < 14:
                        nxt = conn.jz_conn(n + 2, k, l, m)
                        if nxt < v or (k > -2 and l > -2 and nxt <= v):
                            fails.append(("stage", n, k, l, m))
                    if conn.tail_conn(n, k, l, m) != conn.tail_conn_explicit(n, k, l, m):
                        fails.append(("tail", n, k, l, m))
    ok = not fails
    criterion(8, ok, "jz_conn(3,k,l,-2)=k+l+2 on [-2,8]^2, monotone in k,l,m and stage, "
              f"tail = 10-stage minimum; {len(fails)} failures")
    assert ok, fails[:5]


# 9 ---------------------------------------------------------------------------------

def test_filtration_symmetry(criterion):
    """Informational: compare the census of paths b -> c built from the b side
    with the inverses of paths c -> b built from the c side.  Never fails."""
    lines = []
    agree_all = True
    specs = list(SHIPPED.items())
    rng = random.Random(9)
    specs += [(f"amalgam{i}", samples.random_amalgam(rng)) for i in range(5)]
    for name, g in specs:
        b, c = 0, g.n_vertices - 1
        fb = _filtration_within_budget(g, vertex(b), vertex(c), 6)
        fc = _filtration_within_budget(g, vertex(c), vertex(b), 6)
        same = True
        for n in range(min(len(fb.stages), len(fc.stages))):
            left = {engine.normalize(w).key() for w in fb.representatives[n]}
            right = {engine.normalize(engine.inverse(w)).key() for w in fc.representatives[n]}
            same &= left == right
        agree_all &= same
        lines.append(f"{name}:{'same' if same else 'differ'}")
    criterion(9, True, "B-side vs C-side stage sets " + ", ".join(lines)
              + (" (all agree)" if agree_all else ""), informational=True)
