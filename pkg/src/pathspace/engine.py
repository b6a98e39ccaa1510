"""Words in the fundamental groupoid of a graph of groups, their reduction, and
the stage-by-stage census of a path space.

A word ``g0 t_{e1}^{s1} g1 ... t_{en}^{sn} gn`` is stored as a head ``g0`` and a
tuple of syllables ``(edge, sign, element)``; ``n`` is its number of crossings.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from . import kernels
from .errors import (
    BadBasepoint,
    BudgetExceeded,
    EndpointMismatch,
    InvalidWord,
    InvariantViolation,
    NotAPinch,
    NotAnAmalgam,
    SpecMismatch,
    WordSyntaxError,
)
from .span import Basepoint, GraphOfGroups

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class GoGWord:
    spec: GraphOfGroups = field(compare=False, repr=False)
    start: int
    head: int
    syllables: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        spec = self.spec
        if not 0 <= self.start < spec.n_vertices:
            raise InvalidWord(f"start vertex {self.start} out of range")
        if not 0 <= self.head < spec.vgroups[self.start].order:
            raise InvalidWord(f"head {self.head} is not an element of G_{self.start}")
        v = self.start
        for i, syl in enumerate(self.syllables):
            e, sign, g = syl
            if not 0 <= e < spec.n_edges or sign not in (1, -1):
                raise InvalidWord(f"syllable {i + 1}: bad letter t{e}^{sign}")
            L = spec.letter(e, sign)
            if spec.departure(L) != v:
                raise InvalidWord(f"syllable {i + 1}: t{e}{'+' if sign > 0 else '-'} "
                                  f"does not leave vertex {v}")
            v = spec.arrival(L)
            if not 0 <= g < spec.vgroups[v].order:
                raise InvalidWord(f"syllable {i + 1}: {g} is not an element of G_{v}")

    @classmethod
    def _trusted(cls, spec, start, head, syllables) -> "GoGWord":
        w = object.__new__(cls)
        object.__setattr__(w, "spec", spec)
        object.__setattr__(w, "start", start)
        object.__setattr__(w, "head", head)
        object.__setattr__(w, "syllables", tuple(syllables))
        return w

    @classmethod
    def from_letters(cls, spec, start, head, letters, elems, check=True) -> "GoGWord":
        syl = tuple((L >> 1, 1 if L & 1 == 0 else -1, g) for L, g in zip(letters, elems))
        if check:
            return cls(spec, start, head, syl)
        return cls._trusted(spec, start, head, syl)

    @property
    def crossings(self) -> int:
        return len(self.syllables)

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(2 * e + (0 if s > 0 else 1) for e, s, _ in self.syllables)

    @property
    def elems(self) -> tuple[int, ...]:
        return tuple(g for _, _, g in self.syllables)

    @property
    def end(self) -> int:
        if not self.syllables:
            return self.start
        e, s, _ = self.syllables[-1]
        return self.spec.src[e] if s > 0 else self.spec.tgt[e]

    def key(self):
        return (self.head, self.letters, self.elems)

    def __str__(self):
        return format_word(self)


class Pinch(NamedTuple):
    position: int  # syllables position and position+1 (1-based) cancel
    witness: int  # edge-group element h


# -- word syntax -------------------------------------------------------------

def format_word(w: GoGWord) -> str:
    parts = []
    if not w.syllables and w.spec.n_vertices > 1:
        parts.append(f"@{w.start}")
    parts.append(str(w.head))
    for e, s, g in w.syllables:
        parts.append(f"t{e}{'+' if s > 0 else '-'}")
        parts.append(str(g))
    return " ".join(parts)


def parse_word(spec: GraphOfGroups, text: str, start: Optional[int] = None) -> GoGWord:
    """Parse ``[@v] g0 (t<edge><+|-> g)*``.

    Without ``@v`` the start vertex is read off the first stable letter, or is
    vertex 0 for a word with no crossings.
    """
    tokens = text.split()
    if tokens and tokens[0].startswith("@"):
        try:
            start = int(tokens.pop(0)[1:])
        except ValueError:
            raise WordSyntaxError(f"bad start marker in {text!r}") from None
    if not tokens:
        raise WordSyntaxError("empty word")
    try:
        head = int(tokens[0])
    except ValueError:
        raise WordSyntaxError(f"expected a group element, got {tokens[0]!r}") from None
    rest = tokens[1:]
    if len(rest) % 2:
        raise WordSyntaxError(f"dangling token {rest[-1]!r}: every stable letter needs an element")
    syllables = []
    for i in range(0, len(rest), 2):
        tok, elem = rest[i], rest[i + 1]
        if not (tok.startswith("t") and tok[-1] in "+-" and tok[1:-1].isdigit()):
            raise WordSyntaxError(f"expected a stable letter like t0+, got {tok!r}")
        try:
            g = int(elem)
        except ValueError:
            raise WordSyntaxError(f"expected a group element, got {elem!r}") from None
        syllables.append((int(tok[1:-1]), 1 if tok[-1] == "+" else -1, g))
    if start is None:
        if syllables:
            e, s, _ = syllables[0]
            if e >= spec.n_edges:
                raise InvalidWord(f"no edge {e}")
            start = spec.departure(spec.letter(e, s))
        else:
            start = 0
    return GoGWord(spec, start, head, tuple(syllables))


# -- algebra of words ----------------------------------------------------------

def _same_spec(a: GraphOfGroups, b: GraphOfGroups):
    if a is not b and a != b:
        raise SpecMismatch("words belong to different graphs of groups")


def concat(w1: GoGWord, w2: GoGWord) -> GoGWord:
    _same_spec(w1.spec, w2.spec)
    if w1.end != w2.start:
        raise EndpointMismatch(f"cannot compose: {w1.end} != {w2.start}")
    G = w1.spec.vgroups[w2.start]
    if w1.syllables:
        e, s, g = w1.syllables[-1]
        syl = w1.syllables[:-1] + ((e, s, G.mul[g][w2.head]),) + w2.syllables
        return GoGWord._trusted(w1.spec, w1.start, w1.head, syl)
    return GoGWord._trusted(w1.spec, w1.start, G.mul[w1.head][w2.head], w2.syllables)


def inverse(w: GoGWord) -> GoGWord:
    spec = w.spec
    elems = [w.head] + [g for _, _, g in w.syllables]
    verts = [w.start]
    for e, s, _ in w.syllables:
        verts.append(spec.arrival(spec.letter(e, s)))
    inv = [spec.vgroups[v].inv[g] for v, g in zip(verts, elems)]
    syl = tuple((e, -s, inv[i]) for i, (e, s, _) in reversed(list(enumerate(w.syllables))))
    return GoGWord._trusted(spec, w.end, inv[-1], syl)


def find_pinches(w: GoGWord) -> list[Pinch]:
    """Positions where ``t alpha(h) t^-1`` or ``t^-1 beta(h) t`` occurs.

    Empty exactly when the word is reduced.
    """
    spec = w.spec
    letters = w.letters
    out = []
    for i in range(len(letters) - 1):
        L = letters[i]
        if letters[i + 1] != L ^ 1:
            continue
        g = w.syllables[i][2]
        if spec.in_edge_subgroup(L, g):
            e = L >> 1
            into = spec.alpha[e] if L & 1 == 0 else spec.beta[e]
            out.append(Pinch(i + 1, into.image.index(g)))
    return out


def reduce_once(w: GoGWord, p: Pinch) -> GoGWord:
    if p not in find_pinches(w):
        raise NotAPinch(f"{p} is not a pinch of {w}")
    spec = w.spec
    i = p.position - 1
    L = w.letters[i]
    v = spec.departure(L)
    G = spec.vgroups[v]
    carried = G.mul[spec.transfer(L, w.syllables[i][2])][w.syllables[i + 1][2]]
    syl = list(w.syllables)
    head = w.head
    if i == 0:
        head = G.mul[head][carried]
    else:
        e, s, g = syl[i - 1]
        syl[i - 1] = (e, s, G.mul[g][carried])
    del syl[i:i + 2]
    return GoGWord._trusted(spec, w.start, head, syl)


def decorate(w: GoGWord) -> GoGWord:
    """Transversal-canonical form without cancelling anything: every syllable
    element becomes its coset representative, subgroup parts slide into the head."""
    elems = list(w.elems)
    head = kernels.slide(w.spec.tables, w.start, w.head, w.letters, elems)
    return GoGWord.from_letters(w.spec, w.start, head, w.letters, elems, check=False)


def normalize(w: GoGWord) -> GoGWord:
    head, letters, elems, _ = kernels.normalize(w.spec.tables, w.start, w.head,
                                                w.letters, w.elems)
    return GoGWord.from_letters(w.spec, w.start, head, letters, elems, check=False)


def _check_comparable(w1, w2):
    _same_spec(w1.spec, w2.spec)
    if w1.start != w2.start or w1.end != w2.end:
        raise EndpointMismatch(
            f"words run {w1.start}->{w1.end} and {w2.start}->{w2.end}")


def word_equal(w1: GoGWord, w2: GoGWord, method: str = "normal_form") -> bool:
    """Equality in the fundamental groupoid.

    ``method="recursive"`` instead compares the decorated forms and, failing
    that, reduces both words and recurses; the two methods must agree.
    """
    _check_comparable(w1, w2)
    if method == "recursive":
        return _equal_recursive(w1, w2)
    return normalize(w1).key() == normalize(w2).key()


def _equal_recursive(w1, w2):
    while True:
        if w1.crossings == w2.crossings:
            if decorate(w1).key() == decorate(w2).key():
                return True
            p1, p2 = find_pinches(w1), find_pinches(w2)
            if not (p1 and p2):
                return False
            w1, w2 = reduce_once(w1, p1[0]), reduce_once(w2, p2[0])
        else:
            if w1.crossings < w2.crossings:
                w1, w2 = w2, w1
            p1 = find_pinches(w1)
            if not p1:
                return False
            w1 = reduce_once(w1, p1[0])


# -- fibres and their census ---------------------------------------------------

@dataclass(frozen=True)
class FibrePath:
    """A path between a vertex or edge object and another one.

    ``start_side``/``end_side`` are ``None`` at a vertex, or ``0``/``1`` when
    the path begins/ends at the edge object, attached through its source or
    target vertex respectively.
    """

    word: GoGWord
    start_edge: Optional[int] = None
    start_side: Optional[int] = None
    end_edge: Optional[int] = None
    end_side: Optional[int] = None

    @property
    def crossings(self) -> int:
        return self.word.crossings

    def key(self):
        return (self.start_side, *self.word.key(), self.end_side)

    def __str__(self):
        s = str(self.word)
        if self.start_edge is not None:
            s = f"[e{self.start_edge}.{'st'[self.start_side]}] " + s
        if self.end_edge is not None:
            s = s + f" [e{self.end_edge}.{'st'[self.end_side]}]"
        return s


class StageCensus(NamedTuple):
    n: int
    z_count: int
    j_count: int
    new_reduced: int
    r_count: int
    zigzag_length: int  # number of half-edge traversals at this stage


@dataclass
class Filtration:
    spec: GraphOfGroups = field(repr=False)
    b: Basepoint
    c: Optional[Basepoint]
    step: int
    stages: list[StageCensus]
    representatives: list[list]

    def table(self) -> list[tuple]:
        return [(s.n, s.z_count, s.j_count, s.new_reduced, s.r_count) for s in self.stages]


class _Fibre:
    """Boundary bookkeeping for the fibre over ``(b, c)``; ``c=None`` means any vertex."""

    def __init__(self, spec: GraphOfGroups, b: Basepoint, c: Optional[Basepoint]):
        b.check(spec)
        if c is not None:
            c.check(spec)
        if b.side == "edge" and c is not None and c.side == "edge":
            raise BadBasepoint("edge-to-edge fibres are not supported")
        if b.side == "edge" and c is None:
            raise BadBasepoint("a fibre starting at an edge needs an explicit target")
        self.spec, self.b, self.c = spec, b, c
        if b.side == "vertex":
            self.starts = [(None, b.id)]
        else:
            e = b.id
            self.starts = [(0, spec.src[e]), (1, spec.tgt[e])]
        if c is None:
            self.ends = {v: [None] for v in range(spec.n_vertices)}
        elif c.side == "vertex":
            self.ends = {c.id: [None]}
        else:
            e = c.id
            self.ends = {}
            self.ends.setdefault(spec.src[e], []).append(0)
            self.ends.setdefault(spec.tgt[e], []).append(1)
        self.mask = [1 if v in self.ends else 0 for v in range(spec.n_vertices)]
        self.step = 1 if "edge" in (b.side, c.side if c else None) else 2

    def boundary_reduce(self, key):
        """Cancel pinches against the edge objects at either end (canonical input)."""
        ss, h, letters, elems, es = key
        spec = self.spec
        while True:
            if es is not None and letters:
                enter = 2 * self.c.id + es
                if letters[-1] == enter and elems[-1] == 0:
                    letters, elems, es = letters[:-1], elems[:-1], es ^ 1
                    continue
            if ss is not None and letters:
                e = self.b.id
                leave = 2 * e + (1 - ss)
                own = 2 * e + ss  # letter whose arrival subgroup is this side's edge image
                if letters[0] == leave and spec.in_edge_subgroup(own, h):
                    v = spec.arrival(leave)
                    h = spec.vgroups[v].mul[spec.transfer(own, h)][elems[0]]
                    letters, elems, ss = letters[1:], elems[1:], ss ^ 1
                    continue
            return (ss, h, letters, elems, es)

    def wrap(self, key):
        ss, h, letters, elems, es = key
        x0 = self.starts[0][1] if ss is None else self.starts[ss][1]
        w = GoGWord.from_letters(self.spec, x0, h, letters, elems, check=False)
        if ss is None and es is None:
            return w
        return FibrePath(w, self.b.id if ss is not None else None, ss,
                         self.c.id if es is not None else None, es)

    def zigzag_length(self, m: int) -> int:
        extra = (self.b.side == "edge") + (self.c is not None and self.c.side == "edge")
        return 2 * m + extra


def stage_size(spec: GraphOfGroups, x0: int, m: int) -> list[int]:
    """Number of ``m``-crossing skeletons from ``x0`` ending at each vertex."""
    T = spec.tables
    ways = [0] * spec.n_vertices
    ways[x0] = 1
    for _ in range(m):
        nxt = [0] * spec.n_vertices
        for v, c in enumerate(ways):
            if c:
                for idx in range(T.out_off[v], T.out_off[v + 1]):
                    L = T.out_letters[idx]
                    nxt[T.arr[L]] += c * (T.reps_off[L + 1] - T.reps_off[L])
        ways = nxt
    return ways


def _z_count(fibre: _Fibre, m: int) -> int:
    spec = fibre.spec
    total = 0
    for _, x0 in fibre.starts:
        ways = stage_size(spec, x0, m)
        heads = spec.vgroups[x0].order
        total += heads * sum(ways[x] * len(sides) for x, sides in fibre.ends.items())
    return total


def enumerate_stage(spec: GraphOfGroups, b: Basepoint, c: Optional[Basepoint], n: int,
                    budget: int = DEFAULT_BUDGET):
    """All ``n``-crossing classes of the fibre in decorated form, and the reducible ones.

    Independent of the compiled kernels: words are generated directly and
    reducibility is read off with :func:`find_pinches` plus the boundary rules.
    """
    fibre = _Fibre(spec, b, c)
    size = _z_count(fibre, n)
    if size > budget:
        raise BudgetExceeded(f"stage {n}", size, budget)
    Z, J = [], []
    for ss, x0 in fibre.starts:
        for letters, elems, x in _skeletons(spec, x0, n):
            for es in fibre.ends.get(x, ()):
                for h in spec.vgroups[x0].elements():
                    key = (ss, h, letters, elems, es)
                    obj = fibre.wrap(key)
                    w = obj if isinstance(obj, GoGWord) else obj.word
                    if find_pinches(w) or fibre.boundary_reduce(key) != key:
                        J.append((key, obj))
                    Z.append((key, obj))
    order = lambda item: _sort_key(item[0])  # noqa: E731
    return [o for _, o in sorted(Z, key=order)], [o for _, o in sorted(J, key=order)]


def _sort_key(key):
    ss, h, letters, elems, es = key
    return (-1 if ss is None else ss, h, letters, elems, -1 if es is None else es)


def _skeletons(spec, v, m, letters=(), elems=()):
    if m == 0:
        yield letters, elems, v
        return
    for L in spec.out_letters(v):
        for r in spec.letter_transversal(L).reps:
            yield from _skeletons(spec, spec.arrival(L), m - 1, letters + (L,), elems + (r,))


def filtration(spec: GraphOfGroups, b: Basepoint, c: Optional[Basepoint], n_max: int,
               budget: int = DEFAULT_BUDGET, verify: bool = True) -> Filtration:
    """Census of the fibre over ``(b, c)`` for crossing counts ``0..n_max``.

    Each stage adds the reduced classes with exactly ``n`` crossings; the
    reducible ones are glued onto earlier stages.  With ``verify`` every
    reducible class is normalized and checked to land on an earlier
    representative.  Vertex-to-vertex fibres step by two (crossing parity is
    invariant); fibres touching an edge object step by one.
    """
    fibre = _Fibre(spec, b, c)
    T = spec.tables
    step = fibre.step
    seen: list[set] = []
    stages: list[StageCensus] = []
    reps_out: list[list] = []
    r_hist: list[int] = []
    for m in range(n_max + 1):
        z = _z_count(fibre, m)
        if z > budget:
            raise BudgetExceeded(f"stage {m}", z, budget)
        new_keys = set()
        reduced_targets = set()
        for ss, x0 in fibre.starts:
            heads = spec.vgroups[x0].elements()
            ways = stage_size(spec, x0, m)
            count, free, nfs = kernels.stage_scan(T, x0, m, fibre.mask)
            expected = sum(ways[x] for x in fibre.ends)
            if count != expected:
                raise InvariantViolation(f"stage {m}: scanned {count} skeletons, expected {expected}")
            for letters, elems in free:
                x = T.arr[letters[-1]] if letters else x0
                for es in fibre.ends[x]:
                    for h in heads:
                        key = (ss, h, letters, elems, es)
                        red = fibre.boundary_reduce(key)
                        if red == key:
                            new_keys.add(key)
                        elif verify:
                            reduced_targets.add(red)
            if verify:
                G = spec.vgroups[x0]
                for nh, letters, elems in nfs:
                    x = T.arr[letters[-1]] if letters else x0
                    for es in fibre.ends[x]:
                        for h in heads:
                            reduced_targets.add(
                                fibre.boundary_reduce((ss, G.mul[h][nh], letters, elems, es)))
        if verify:
            for key in reduced_targets:
                k = len(key[2])
                if k >= m or (m - k) % step or key not in seen[k]:
                    raise InvariantViolation(
                        f"stage {m}: reducible class normalizes to {key}, not an earlier class")
        new = len(new_keys)
        j = z - new
        r = (r_hist[m - step] if m >= step else 0) + new
        r_hist.append(r)
        seen.append(new_keys)
        stages.append(StageCensus(m, z, j, new, r, fibre.zigzag_length(m)))
        reps_out.append([fibre.wrap(k) for k in sorted(new_keys, key=_sort_key)])
    return Filtration(spec, b, c, step, stages, reps_out)


# -- intersection of factors in an amalgam ---------------------------------------

@dataclass
class GapReport:
    passed: bool
    identified: list[tuple[int, int]]
    counterexample: Optional[tuple[int, int]] = None


def gap_map_check(spec: GraphOfGroups) -> GapReport:
    """Check that ``g`` in G equals ``h`` in H inside the amalgam exactly when
    both come from the same element of the edge group."""
    if spec.n_vertices != 2 or spec.n_edges != 1 or (spec.src[0], spec.tgt[0]) != (0, 1):
        raise NotAnAmalgam("expected two vertices joined by edge 0 from vertex 0 to vertex 1")
    G, H = spec.vgroups
    common = set(zip(spec.alpha[0].image, spec.beta[0].image))
    identified = []
    for g in G.elements():
        lhs = GoGWord._trusted(spec, 0, g, ())
        for h in H.elements():
            rhs = GoGWord._trusted(spec, 0, 0, ((0, -1, h), (0, 1, 0)))
            eq = word_equal(lhs, rhs)
            if eq:
                identified.append((g, h))
            if eq != ((g, h) in common):
                return GapReport(False, identified, (g, h))
    return GapReport(True, identified)
