"""Canonical forms built on the engine, free products, and plain graph paths."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from math import prod

from . import engine
from .errors import BadLetter, BrokenChain, BudgetExceeded, InvariantViolation
from .span import Multigraph, WedgeSpec


def canonical_form(w: engine.GoGWord) -> engine.GoGWord:
    nf = engine.normalize(w)
    spec = nf.spec
    for i, (e, s, g) in enumerate(nf.syllables):
        L = spec.letter(e, s)
        if spec.letter_transversal(L).rep(g) != g:
            raise InvariantViolation(f"syllable {i + 1} of {nf} is not a transversal representative")
    if engine.find_pinches(nf):
        raise InvariantViolation(f"{nf} still has a pinch")
    return nf


# -- free products -------------------------------------------------------------

FreeProductWord = tuple  # of (factor index, non-identity element) with no equal neighbours


def free_product_normal_form(letters, spec: WedgeSpec) -> FreeProductWord:
    """Multiply out adjacent letters from the same factor and drop identities."""
    out: list[tuple[int, int]] = []
    for item in letters:
        try:
            i, g = item
        except (TypeError, ValueError):
            raise BadLetter(f"letter {item!r} is not an (index, element) pair") from None
        if not 0 <= i < len(spec.groups) or not 0 <= g < spec.groups[i].order:
            raise BadLetter(f"letter ({i}, {g}) does not name an element of a factor")
        if g == 0:
            continue
        if out and out[-1][0] == i:
            g = spec.groups[i].mul[out.pop()[1]][g]
            if g == 0:
                continue
        out.append((i, g))
    return tuple(out)


def free_product_multiply(a: FreeProductWord, b: FreeProductWord, spec: WedgeSpec):
    return free_product_normal_form(list(a) + list(b), spec)


def enumerate_un(I_size: int, n: int):
    """Index lists of length ``n`` with no two adjacent entries equal."""
    if n == 0:
        yield ()
        return
    for first in range(I_size):
        yield from _un_from((first,), I_size, n - 1)


def _un_from(prefix, I_size, k):
    if k == 0:
        yield prefix
        return
    for i in range(I_size):
        if i != prefix[-1]:
            yield from _un_from(prefix + (i,), I_size, k - 1)


def un_count(I_size: int, n: int) -> int:
    if n == 0:
        return 1
    return I_size * (I_size - 1) ** (n - 1)


def splitting_census(spec: WedgeSpec, n: int, budget: int = engine.DEFAULT_BUDGET) -> int:
    """Elements of the free product with exactly ``n`` syllables, summed over U_n."""
    I_size = len(spec.groups)
    if un_count(I_size, n) > budget:
        raise BudgetExceeded(f"U_{n}", un_count(I_size, n), budget)
    sizes = [G.order - 1 for G in spec.groups]
    return sum(prod(sizes[i] for i in idx) for idx in enumerate_un(I_size, n))


def free_product_words(spec: WedgeSpec, n: int):
    """Every reduced free-product word with ``n`` syllables."""
    for idx in enumerate_un(len(spec.groups), n):
        choices = [range(1, spec.groups[i].order) for i in idx]
        for gs in itertools.product(*choices):
            yield tuple(zip(idx, gs))


# -- paths in a multigraph -------------------------------------------------------
# A path is a start vertex plus steps (edge, sign); sign +1 runs src -> tgt.

@dataclass(frozen=True)
class ReducedPath:
    start: int
    steps: tuple[tuple[int, int], ...]

    def end(self, g: Multigraph) -> int:
        return path_end(g, self.start, self.steps)


def path_end(g: Multigraph, start: int, steps) -> int:
    v = start
    for i, (e, s) in enumerate(steps):
        if not 0 <= e < g.n_edges or s not in (1, -1):
            raise BrokenChain(f"step {i}: bad edge letter ({e}, {s})")
        a, b = g.edges[e]
        if s < 0:
            a, b = b, a
        if a != v:
            raise BrokenChain(f"step {i}: edge {e} does not leave vertex {v}")
        v = b
    return v


def reduce_path(start: int, steps, g: Multigraph) -> ReducedPath:
    steps = tuple(steps)
    path_end(g, start, steps)
    out: list[tuple[int, int]] = []
    for e, s in steps:
        if out and out[-1] == (e, -s):
            out.pop()
        else:
            out.append((e, s))
    return ReducedPath(start, tuple(out))


def _components(g: Multigraph):
    parent = list(range(g.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in g.edges:
        parent[find(a)] = find(b)
    return [find(v) for v in range(g.n_vertices)]


class _Disconnected:
    def __repr__(self):
        return "DISCONNECTED"


DISCONNECTED = _Disconnected()


def pi1_rank(g: Multigraph, v: int | None = None):
    """Rank of the free fundamental group of the component of ``v``.

    With ``v=None`` the whole graph is meant, and a disconnected graph gives
    :data:`DISCONNECTED`.
    """
    comp = _components(g)
    if v is None:
        if len(set(comp)) > 1:
            return DISCONNECTED
        v = 0
    c = comp[v]
    n_v = sum(1 for x in comp if x == c)
    n_e = sum(1 for a, _ in g.edges if comp[a] == c)
    return n_e - n_v + 1


def is_tree(g: Multigraph) -> bool:
    return pi1_rank(g) == 0


def shortest_reduced_loop(g: Multigraph, v: int, max_len: int | None = None):
    """A shortest non-empty closed reduced path at ``v``, or ``None``.

    Breadth-first search over directed edge letters, never stepping straight
    back along the letter just used.
    """
    if max_len is None:
        max_len = 2 * g.n_edges
    out = {}
    for e, (a, b) in enumerate(g.edges):
        out.setdefault(a, []).append((e, 1, b))
        out.setdefault(b, []).append((e, -1, a))
    prev = {}
    queue = deque()
    for e, s, w in out.get(v, []):
        state = (e, s)
        prev[state] = None
        queue.append((state, w, 1))
    while queue:
        state, w, d = queue.popleft()
        if w == v:
            path = []
            while state is not None:
                path.append(state)
                state = prev[state]
            return ReducedPath(v, tuple(reversed(path)))
        if d >= max_len:
            continue
        for e, s, x in out.get(w, []):
            nxt = (e, s)
            if nxt == (state[0], -state[1]) or nxt in prev:
                continue
            prev[nxt] = state
            queue.append((nxt, x, d + 1))
    return None


def count_reduced_loops(g: Multigraph, v: int, length: int) -> int:
    """Number of closed reduced paths of exactly ``length`` steps at ``v``."""
    out = {}
    for e, (a, b) in enumerate(g.edges):
        out.setdefault(a, []).append((e, 1, b))
        out.setdefault(b, []).append((e, -1, a))
    # counts keyed by (current vertex, last step)
    layer = {(v, None): 1}
    for _ in range(length):
        nxt: dict = {}
        for (w, last), c in layer.items():
            for e, s, x in out.get(w, []):
                if last == (e, -s):
                    continue
                k = (x, (e, s))
                nxt[k] = nxt.get(k, 0) + c
        layer = nxt
    return sum(c for (w, _), c in layer.items() if w == v)
