"""Brute-force ground truth that never calls the engine's reduction.

A :class:`ConcreteModel` sends every vertex-group element and every stable
letter of a graph of groups into a concrete group (integer affine maps,
2x2 integer matrices, matrices up to sign, or twisted pairs).  Balls are
grown by breadth-first search over concrete values, so counts and equalities
computed here are independent of the normal-form code.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import engine
from .errors import BadBasepoint, BudgetExceeded, ModelError, SpecMismatch
from .span import Basepoint, GraphOfGroups, Multigraph

KINDS = ("affine", "matrix", "projective", "semidirect")


# -- concrete group operations --------------------------------------------------
# affine (s, k) is x -> s*x + k; the product a*b is the composite "b then a"

def _affine_ops(_params):
    def mul(a, b):
        return (a[0] * b[0], a[0] * b[1] + a[1])

    def inv(a):
        return (a[0], -a[0] * a[1])

    return mul, inv, (1, 0)


def _matrix_mul(a, b):
    return (a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3])


def _matrix_inv(a):
    det = a[0] * a[3] - a[1] * a[2]
    if det not in (1, -1):
        raise ModelError(f"matrix {a} is not invertible over the integers")
    return (a[3] * det, -a[1] * det, -a[2] * det, a[0] * det)


def _matrix_ops(_params):
    return _matrix_mul, _matrix_inv, (1, 0, 0, 1)


def _sign_normal(a):
    for x in a:
        if x:
            return a if x > 0 else tuple(-y for y in a)
    return a


def _projective_ops(_params):
    def mul(a, b):
        return _sign_normal(_matrix_mul(a, b))

    def inv(a):
        return _sign_normal(_matrix_inv(a))

    return mul, inv, (1, 0, 0, 1)


def _semidirect_ops(params):
    # pairs (a, k) in Z/n x Z with (a, k)(b, l) = (a + u^k b, k + l)
    n, u = params["n"], params["u"]

    def mul(a, b):
        return ((a[0] + pow(u, a[1], n) * b[0]) % n, a[1] + b[1])

    def inv(a):
        return ((-pow(u, -a[1], n) * a[0]) % n, -a[1])

    return mul, inv, (0, 0)


_OPS = {"affine": _affine_ops, "matrix": _matrix_ops, "projective": _projective_ops,
        "semidirect": _semidirect_ops}


def _norm_value(kind, x):
    x = tuple(x)
    if kind == "projective":
        x = _sign_normal(x)
    return x


@dataclass
class ConcreteModel:
    spec: GraphOfGroups = field(repr=False)
    kind: str
    vertex_images: tuple  # per vertex, the image of each element
    letter_images: tuple  # per edge, the image of t_e
    params: dict = field(default_factory=dict)
    name: str = ""
    faithful_radius: int = 0
    mul: Callable = field(init=False, repr=False)
    inv: Callable = field(init=False, repr=False)
    identity: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ModelError(f"unknown model kind {self.kind!r}")
        self.mul, self.inv, self.identity = _OPS[self.kind](self.params)
        self.vertex_images = tuple(tuple(_norm_value(self.kind, x) for x in imgs)
                                   for imgs in self.vertex_images)
        self.letter_images = tuple(_norm_value(self.kind, x) for x in self.letter_images)
        check_model(self)

    def letter(self, e: int, sign: int):
        t = self.letter_images[e]
        return t if sign > 0 else self.inv(t)


def check_model(m: ConcreteModel) -> None:
    """Every group law and every edge relation must hold exactly."""
    spec = m.spec
    if len(m.vertex_images) != spec.n_vertices or len(m.letter_images) != spec.n_edges:
        raise ModelError("model does not match the shape of its graph of groups")
    for v, G in enumerate(spec.vgroups):
        img = m.vertex_images[v]
        if len(img) != G.order:
            raise ModelError(f"vertex {v}: need {G.order} images, got {len(img)}")
        if img[0] != m.identity:
            raise ModelError(f"vertex {v}: identity does not map to the identity")
        for a in G.elements():
            for b in G.elements():
                if m.mul(img[a], img[b]) != img[G.mul[a][b]]:
                    raise ModelError(f"vertex {v}: images of {a}*{b} disagree")
    for e in range(spec.n_edges):
        t = m.letter_images[e]
        ti = m.inv(t)
        if m.mul(t, ti) != m.identity:
            raise ModelError(f"edge {e}: stable letter image has no inverse")
        src, tgt = spec.src[e], spec.tgt[e]
        for h in spec.egroups[e].elements():
            a = m.vertex_images[src][spec.alpha[e](h)]
            b = m.vertex_images[tgt][spec.beta[e](h)]
            if m.mul(m.mul(t, a), ti) != b:
                raise ModelError(f"edge {e}: relation fails for edge-group element {h}")


def load_model(spec: GraphOfGroups, raw: dict) -> ConcreteModel:
    """Model block of a spec file: ``{"kind", "vertices": [[value, ...], ...],
    "letters": [value, ...], "params": {...}}``."""
    if not isinstance(raw, dict):
        raise ModelError("model block must be an object")
    try:
        return ConcreteModel(spec, raw["kind"], raw["vertices"], raw["letters"],
                             dict(raw.get("params", {})), raw.get("name", ""))
    except (KeyError, TypeError, IndexError) as exc:
        raise ModelError(f"malformed model block: {exc}") from None


def eval_word(m: ConcreteModel, w: engine.GoGWord):
    if w.spec is not m.spec and w.spec != m.spec:
        raise SpecMismatch("word and model belong to different graphs of groups")
    x = m.vertex_images[w.start][w.head]
    for e, s, g in w.syllables:
        v = m.spec.arrival(m.spec.letter(e, s))
        x = m.mul(m.mul(x, m.letter(e, s)), m.vertex_images[v][g])
    return x


# -- balls -----------------------------------------------------------------------

@dataclass
class BallCensus:
    radius: int
    counts: list[int]  # new (end vertex, value) states first reached at each crossing count
    table: dict = field(repr=False)  # (end vertex, value) -> crossing count

    def counts_at(self, v: int) -> list[int]:
        out = [0] * (self.radius + 1)
        for (w, _), k in self.table.items():
            if w == v:
                out[k] += 1
        return out


def ball_enumerate(m: ConcreteModel, spec: GraphOfGroups, b: Basepoint, radius: int,
                   budget: int = engine.DEFAULT_BUDGET) -> BallCensus:
    """Breadth-first closure from vertex ``b``: each step crosses one edge and
    then multiplies by an arbitrary element of the vertex group reached."""
    if spec is not m.spec and spec != m.spec:
        raise SpecMismatch("model belongs to a different graph of groups")
    if b.side != "vertex":
        raise BadBasepoint("balls are grown from vertices")
    b.check(spec)
    table = {}
    frontier = []
    for x in set(m.vertex_images[b.id]):
        table[(b.id, x)] = 0
        frontier.append((b.id, x))
    counts = [len(frontier)]
    steps = {v: [] for v in range(spec.n_vertices)}
    for e in range(spec.n_edges):
        for s in (1, -1):
            L = spec.letter(e, s)
            steps[spec.departure(L)].append((m.letter(e, s), spec.arrival(L)))
    for k in range(1, radius + 1):
        nxt = []
        for v, x in frontier:
            for t, w in steps[v]:
                y = m.mul(x, t)
                for g in m.vertex_images[w]:
                    state = (w, m.mul(y, g))
                    if state not in table:
                        table[state] = k
                        nxt.append(state)
                        if len(table) > budget:
                            raise BudgetExceeded(f"ball of radius {radius}", len(table), budget)
        counts.append(len(nxt))
        frontier = nxt
    return BallCensus(radius, counts, table)


def syllable_ball(factors, mul, identity, radius: int, budget: int = engine.DEFAULT_BUDGET):
    """Per-length counts in a free product given concrete images of each factor.

    Length is the number of syllables: each step multiplies by a
    non-identity element of some factor.
    """
    seen = {identity}
    frontier = [identity]
    counts = [1]
    gens = [g for imgs in factors for g in imgs if g != identity]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > budget:
                        raise BudgetExceeded(f"ball of radius {radius}", len(seen), budget)
        counts.append(len(nxt))
        frontier = nxt
    return counts


# -- reduction orders --------------------------------------------------------------

def reduction_leaves(w: engine.GoGWord, budget: int = 10**5) -> set:
    """Decorated keys of every word reachable by a maximal reduction sequence."""
    memo: dict = {}
    entered = 0

    def visit(u):
        nonlocal entered
        k = (u.head, u.syllables)
        if k in memo:
            return memo[k]
        entered += 1
        if entered > budget:
            raise BudgetExceeded("reduction search", entered, budget)
        pinches = engine.find_pinches(u)
        if not pinches:
            out = frozenset([engine.decorate(u).key()])
        else:
            acc = set()
            for p in pinches:
                acc |= visit(engine.reduce_once(u, p))
            out = frozenset(acc)
        memo[k] = out
        return out

    return set(visit(w))


def reduction_order_oracle(w: engine.GoGWord, budget: int = 10**5) -> bool:
    return len(reduction_leaves(w, budget)) == 1


# -- graphs ----------------------------------------------------------------------------

def spanning_tree_pi1(g: Multigraph, v: int) -> int:
    """Grow a BFS tree from ``v``; the rank is the number of edges of the
    component left out of the tree."""
    incident = {x: [] for x in range(g.n_vertices)}
    for e, (a, b) in enumerate(g.edges):
        incident[a].append((e, b))
        if a != b:
            incident[b].append((e, a))
    seen = {v}
    tree = set()
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for e, y in incident[x]:
            if y not in seen:
                seen.add(y)
                tree.add(e)
                queue.append(y)
    return sum(1 for e, (a, _) in enumerate(g.edges) if a in seen and e not in tree)


# -- agreement between engine equality and concrete evaluation ------------------------

def raw_words(spec: GraphOfGroups, start: int, n: int):
    """Every word from ``start`` with exactly ``n`` crossings, any syllable elements."""
    def rec(v, syl, k):
        if k == 0:
            yield tuple(syl)
            return
        for L in spec.out_letters(v):
            e, s = spec.edge_sign(L)
            w = spec.arrival(L)
            for g in spec.vgroups[w].elements():
                syl.append((e, s, g))
                yield from rec(w, syl, k - 1)
                syl.pop()

    for syl in rec(start, [], n):
        for h in spec.vgroups[start].elements():
            yield engine.GoGWord._trusted(spec, start, h, syl)


def raw_word_count(spec: GraphOfGroups, start: int, n: int) -> int:
    ways = [0] * spec.n_vertices
    ways[start] = spec.vgroups[start].order
    for _ in range(n):
        nxt = [0] * spec.n_vertices
        for v, c in enumerate(ways):
            for L in spec.out_letters(v):
                w = spec.arrival(L)
                nxt[w] += c * spec.vgroups[w].order
        ways = nxt
    return sum(ways)


@dataclass
class AgreementReport:
    model: str
    radius: int
    mode: str  # "exhaustive" or "sampled"
    words: int
    pairs: int
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def agreement_check(m: ConcreteModel, radius: int, exhaustive_limit: int = 10**5,
                    samples: int = 10**4, seed: int = 0) -> AgreementReport:
    """word_equal versus concrete evaluation on words with at most ``radius`` crossings.

    Exhaustive mode groups every word by (endpoints, normal form) and by
    (endpoints, value); agreement on all pairs is the same as the two
    partitions coinciding.  Past ``exhaustive_limit`` words, random pairs are
    drawn instead, half of them equal by construction.
    """
    spec = m.spec
    total = sum(raw_word_count(spec, v, n) for v in range(spec.n_vertices)
                for n in range(radius + 1))
    name = m.name or m.kind
    if total <= exhaustive_limit:
        by_nf: dict = {}
        by_val: dict = {}
        for v in range(spec.n_vertices):
            for n in range(radius + 1):
                for w in raw_words(spec, v, n):
                    ends = (w.start, w.end)
                    nf = (ends, engine.normalize(w).key())
                    val = (ends, eval_word(m, w))
                    if by_nf.setdefault(nf, val) != val:
                        return _mismatch(name, radius, total, w, by_nf[nf], val)
                    if by_val.setdefault(val, nf) != nf:
                        return _mismatch(name, radius, total, w, by_val[val], nf)
        pairs = total * (total - 1) // 2
        return AgreementReport(name, radius, "exhaustive", total, pairs)
    from .samples import random_word

    rng = random.Random(seed)
    report = AgreementReport(name, radius, "sampled", 2 * samples, samples)
    for i in range(samples):
        v = rng.randrange(spec.n_vertices)
        w1 = random_word(spec, v, rng.randint(0, radius), rng)
        if w1 is None:
            continue
        if i % 2:
            k = rng.randint(0, radius)
            u = random_word(spec, w1.end, k, rng) or random_word(spec, w1.end, 0, rng)
            w2 = engine.concat(engine.concat(w1, u), engine.inverse(u))
        else:
            w2 = random_word(spec, v, rng.randint(0, radius), rng, end=w1.end)
            if w2 is None:
                continue
        eq = engine.word_equal(w1, w2)
        same = eval_word(m, w1) == eval_word(m, w2)
        if eq != same:
            report.mismatches.append((str(w1), str(w2), eq, same))
    return report


def _mismatch(name, radius, total, w, a, b):
    return AgreementReport(name, radius, "exhaustive", total, 0,
                           [(str(w), repr(a), repr(b))])


def verify_faithful(m: ConcreteModel, b: Basepoint, radius: int,
                    budget: int = engine.DEFAULT_BUDGET) -> Optional[str]:
    """Canonical forms of the loops at ``b`` must evaluate to distinct values.

    On success ``m.faithful_radius`` is raised to ``radius`` and ``None`` is
    returned; otherwise a description of the collision.
    """
    f = engine.filtration(m.spec, b, b, radius, budget=budget)
    seen = {}
    for reps in f.representatives:
        for w in reps:
            val = eval_word(m, w)
            if val in seen:
                return f"{seen[val]} and {w} both evaluate to {val}"
            seen[val] = str(w)
    m.faithful_radius = max(m.faithful_radius, radius)
    return None
