"""Graphs of groups, multigraphs and wedges, plus their JSON-style descriptions.

Orientation convention: reading a word left to right, the stable letter
``t_e`` moves from ``tgt(e)`` to ``src(e)``, so ``alpha_e`` lands in the source
group, ``beta_e`` in the target group, and ``t alpha(h) t^-1 = beta(h)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from . import algebra
from .algebra import CosetTransversal, FiniteGroup, GroupHom, right_transversal
from .errors import BadBasepoint, BadHomTarget, BadShape, DanglingEdge, ValidationError

SCHEMA_VERSION = 1
KINDS = ("graph_of_groups", "multigraph", "wedge", "amalgam", "hnn")


@dataclass(frozen=True)
class GraphOfGroups:
    vgroups: tuple[FiniteGroup, ...]
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    egroups: tuple[FiniteGroup, ...]
    alpha: tuple[GroupHom, ...]
    beta: tuple[GroupHom, ...]
    # per edge: (transversal of alpha(H) in G_src, transversal of beta(H) in G_tgt)
    transversals: tuple[tuple[CosetTransversal, CosetTransversal], ...] = field(repr=False)
    kind: str = field(default="graph_of_groups", compare=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vgroups)

    @property
    def n_edges(self) -> int:
        return len(self.src)

    # letters: 2e is t_e (tgt -> src), 2e+1 is t_e^-1 (src -> tgt)
    @staticmethod
    def letter(edge: int, sign: int) -> int:
        return 2 * edge + (0 if sign > 0 else 1)

    @staticmethod
    def edge_sign(letter: int) -> tuple[int, int]:
        return letter >> 1, (1 if letter & 1 == 0 else -1)

    def departure(self, letter: int) -> int:
        e = letter >> 1
        return self.tgt[e] if letter & 1 == 0 else self.src[e]

    def arrival(self, letter: int) -> int:
        e = letter >> 1
        return self.src[e] if letter & 1 == 0 else self.tgt[e]

    def letter_transversal(self, letter: int) -> CosetTransversal:
        return self.transversals[letter >> 1][letter & 1]

    def transfer(self, letter: int, u: int) -> int:
        """Move a subgroup element ``u`` (in the arrival group) leftward across the letter.

        For ``t``: ``t alpha(h) = beta(h) t``; for ``t^-1``: ``t^-1 beta(h) = alpha(h) t^-1``.
        """
        return self._transfer_tables[letter][u]

    def in_edge_subgroup(self, letter: int, g: int) -> bool:
        return self._transfer_tables[letter][g] >= 0

    @cached_property
    def _transfer_tables(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for e in range(self.n_edges):
            a, b = self.alpha[e], self.beta[e]
            for into, other, arrival in ((a, b, self.src[e]), (b, a, self.tgt[e])):
                tab = [-1] * self.vgroups[arrival].order
                for h in range(self.egroups[e].order):
                    tab[into.image[h]] = other.image[h]
                out.append(tuple(tab))
        return tuple(out)

    def out_letters(self, v: int) -> list[int]:
        return [L for L in range(2 * self.n_edges) if self.departure(L) == v]

    @cached_property
    def tables(self):
        from ._tables import KernelTables

        return KernelTables.build(self)


def graph_of_groups(vgroups, edges, kind="graph_of_groups") -> GraphOfGroups:
    """Validate and assemble a graph of groups.

    ``edges`` is a sequence of ``(src, tgt, edge_group, alpha_image, beta_image)``.
    """
    vgroups = tuple(vgroups)
    if not vgroups:
        raise BadShape("a graph of groups needs at least one vertex")
    src, tgt, egroups, alphas, betas, transversals = [], [], [], [], [], []
    for i, (s, t, h, a, b) in enumerate(edges):
        for end in (s, t):
            if not isinstance(end, int) or not 0 <= end < len(vgroups):
                raise DanglingEdge(f"edge {i} has endpoint {end!r} outside 0..{len(vgroups) - 1}")
        try:
            alpha = algebra.make_hom(h, vgroups[s], a, injective=True)
            beta = algebra.make_hom(h, vgroups[t], b, injective=True)
        except ValidationError as exc:
            raise type(exc)(f"edge {i}: {exc}") from None
        src.append(s)
        tgt.append(t)
        egroups.append(h)
        alphas.append(alpha)
        betas.append(beta)
        transversals.append(
            (right_transversal(vgroups[s], alpha.image), right_transversal(vgroups[t], beta.image))
        )
    return GraphOfGroups(
        vgroups, tuple(src), tuple(tgt), tuple(egroups), tuple(alphas), tuple(betas),
        tuple(transversals), kind,
    )


@dataclass(frozen=True)
class Multigraph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for i, (s, t) in enumerate(self.edges):
            if not (0 <= s < self.n_vertices and 0 <= t < self.n_vertices):
                raise DanglingEdge(f"edge {i} = ({s}, {t}) has an endpoint out of range")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def as_graph_of_groups(self) -> GraphOfGroups:
        one = algebra.trivial()
        return graph_of_groups(
            [one] * self.n_vertices,
            [(s, t, one, [0], [0]) for s, t in self.edges],
            kind="multigraph",
        )


@dataclass(frozen=True)
class WedgeSpec:
    groups: tuple[FiniteGroup, ...]


class Basepoint(NamedTuple):
    side: str  # "vertex" or "edge"
    id: int

    def check(self, spec: GraphOfGroups) -> "Basepoint":
        limit = spec.n_vertices if self.side == "vertex" else spec.n_edges
        if self.side not in ("vertex", "edge") or not 0 <= self.id < limit:
            raise BadBasepoint(f"basepoint {self.side} {self.id} out of range")
        return self

    def __str__(self):
        return f"{self.side[0]}{self.id}"


def vertex(i: int) -> Basepoint:
    return Basepoint("vertex", i)


def edge(i: int) -> Basepoint:
    return Basepoint("edge", i)


def parse_basepoint(text: str) -> Basepoint:
    """``"3"`` or ``"v3"`` is vertex 3, ``"e1"`` is edge 1."""
    t = text.strip().lower()
    try:
        if t.startswith("v"):
            return vertex(int(t[1:]))
        if t.startswith("e"):
            return edge(int(t[1:]))
        return vertex(int(t))
    except ValueError:
        raise BadBasepoint(f"cannot parse basepoint {text!r}") from None


# -- constructors ------------------------------------------------------------

def amalgam(G: FiniteGroup, H: FiniteGroup, N: FiniteGroup, iG, iH) -> GraphOfGroups:
    """G *_N H: vertex 0 carries G, vertex 1 carries H, edge 0 runs from 0 to 1."""
    iG = iG.image if isinstance(iG, GroupHom) else iG
    iH = iH.image if isinstance(iH, GroupHom) else iH
    return graph_of_groups([G, H], [(0, 1, N, iG, iH)], kind="amalgam")


def hnn(G: FiniteGroup, H: FiniteGroup, alpha, beta) -> GraphOfGroups:
    alpha = alpha.image if isinstance(alpha, GroupHom) else alpha
    beta = beta.image if isinstance(beta, GroupHom) else beta
    return graph_of_groups([G], [(0, 0, H, alpha, beta)], kind="hnn")


def wedge_as_graph(w: WedgeSpec) -> GraphOfGroups:
    """Star graph: hub 0 with trivial group, leaf i+1 carrying G_i, edge i from leaf to hub."""
    one = algebra.trivial()
    return graph_of_groups(
        [one, *w.groups],
        [(i + 1, 0, one, [0], [0]) for i in range(len(w.groups))],
        kind="wedge",
    )


# -- raw descriptions --------------------------------------------------------

def _group(ref, named):
    if isinstance(ref, str):
        if ref in named:
            return named[ref]
        raise BadShape(f"unknown group {ref!r}")
    if isinstance(ref, dict) and "cyclic" in ref:
        return algebra.cyclic(int(ref["cyclic"]))
    if isinstance(ref, list):
        return algebra.validate_group(ref)
    raise BadShape(f"cannot interpret group reference {ref!r}")


def _named_groups(raw):
    groups = raw.get("groups", {})
    if not isinstance(groups, dict):
        raise BadShape('"groups" must be an object mapping names to tables')
    return {name: algebra.validate_group(table, name) if isinstance(table, list)
            else _group(table, {}) for name, table in groups.items()}


def _int_list(value, what):
    if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
        raise BadHomTarget(f"{what} must be an array of integers")
    return value


def load_graph_of_groups(raw: dict) -> GraphOfGroups:
    """Build a validated graph of groups from any supported description kind."""
    if not isinstance(raw, dict):
        raise BadShape("spec must be a JSON object")
    schema = raw.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise BadShape(f"unsupported schema version {schema!r}")
    kind = raw.get("kind")
    if kind not in KINDS:
        raise BadShape(f"kind must be one of {', '.join(KINDS)}; got {kind!r}")
    if kind == "multigraph":
        return load_multigraph(raw).as_graph_of_groups()
    named = _named_groups(raw)
    try:
        if kind == "wedge":
            return wedge_as_graph(load_wedge(raw))
        if kind == "amalgam":
            return amalgam(
                _group(raw["G"], named), _group(raw["H"], named), _group(raw["N"], named),
                _int_list(raw["iG"], "iG"), _int_list(raw["iH"], "iH"),
            )
        if kind == "hnn":
            G = _group(raw["G"], named)
            return hnn(G, _group(raw.get("H", raw["G"]), named),
                       _int_list(raw["alpha"], "alpha"), _int_list(raw["beta"], "beta"))
        vgroups = [_group(v, named) for v in raw["vertices"]]
        edges = []
        for i, e in enumerate(raw.get("edges", [])):
            edges.append((e["src"], e["tgt"], _group(e["group"], named),
                          _int_list(e["alpha"], f"edge {i} alpha"),
                          _int_list(e["beta"], f"edge {i} beta")))
    except KeyError as exc:
        raise BadShape(f"missing field {exc.args[0]!r} in {kind} spec") from None
    except (TypeError, IndexError) as exc:
        raise BadShape(f"malformed {kind} spec: {exc}") from None
    return graph_of_groups(vgroups, edges)


def load_multigraph(raw: dict) -> Multigraph:
    if raw.get("kind") == "multigraph":
        try:
            n = raw["vertices"]
            edges = tuple((int(s), int(t)) for s, t in raw.get("edges", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise BadShape(f"malformed multigraph spec: {exc}") from None
        if not isinstance(n, int) or n < 1:
            raise BadShape('"vertices" must be a positive vertex count')
        return Multigraph(n, edges)
    g = load_graph_of_groups(raw)
    return underlying_multigraph(g)


def underlying_multigraph(g: GraphOfGroups) -> Multigraph:
    return Multigraph(g.n_vertices, tuple(zip(g.src, g.tgt)))


def load_wedge(raw: dict) -> WedgeSpec:
    if raw.get("kind") != "wedge":
        raise BadShape("expected a wedge spec")
    named = _named_groups(raw)
    factors = raw.get("factors")
    if not isinstance(factors, list):
        raise BadShape('wedge spec needs a "factors" array')
    return WedgeSpec(tuple(_group(f, named) for f in factors))


def dump_graph_of_groups(g: GraphOfGroups) -> dict:
    """Normalized description: kind graph_of_groups, groups deduplicated by table."""
    names: dict = {}
    groups: dict = {}

    def ref(grp):
        key = grp.mul
        if key not in names:
            names[key] = f"g{len(names)}"
            groups[names[key]] = [list(row) for row in grp.mul]
        return names[key]

    vertices = [ref(G) for G in g.vgroups]
    edges = [
        {"src": g.src[e], "tgt": g.tgt[e], "group": ref(g.egroups[e]),
         "alpha": list(g.alpha[e].image), "beta": list(g.beta[e].image)}
        for e in range(g.n_edges)
    ]
    return {"schema": SCHEMA_VERSION, "kind": "graph_of_groups", "groups": groups,
            "vertices": vertices, "edges": edges}
