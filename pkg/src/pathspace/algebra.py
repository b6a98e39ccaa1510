"""Finite groups given by multiplication tables, homomorphisms, transversals.

Elements of a group of order ``n`` are the integers ``0 .. n-1`` and element
``0`` is always the identity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    BadHomTarget,
    BadShape,
    NoIdentity,
    NoInverse,
    NotASubgroup,
    NotAssociative,
    NotHomomorphism,
    NotInjective,
)


@dataclass(frozen=True)
class FiniteGroup:
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    name: str = field(default="", compare=False)

    identity = 0

    @property
    def order(self) -> int:
        return len(self.mul)

    def elements(self) -> range:
        return range(len(self.mul))

    def prod(self, *xs: int) -> int:
        acc = 0
        for x in xs:
            acc = self.mul[acc][x]
        return acc

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mul[y][x]
            k += 1
        return k

    def is_subgroup(self, elems) -> bool:
        s = set(elems)
        if 0 not in s:
            return False
        return all(self.mul[x][y] in s for x in s for y in s) and all(
            self.inv[x] in s for x in s
        )

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"


def validate_group(table: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Check the group axioms on a raw table and return the group.

    Raises the first failure found, in the order shape, identity, inverses,
    associativity.
    """
    n = len(table)
    if n == 0:
        raise BadShape("empty multiplication table")
    rows = []
    for i, row in enumerate(table):
        row = tuple(row)
        if len(row) != n:
            raise BadShape(f"row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise BadShape(f"entry mul[{i}][{j}] = {x!r} not in [0, {n})")
        rows.append(row)
    for x in range(n):
        if rows[0][x] != x or rows[x][0] != x:
            raise NoIdentity(f"element 0 is not a two-sided identity (fails at {x})")
    inv = []
    for x in range(n):
        for y in range(n):
            if rows[x][y] == 0 and rows[y][x] == 0:
                inv.append(y)
                break
        else:
            raise NoInverse(f"element {x} has no two-sided inverse")
    for x, y, z in itertools.product(range(n), repeat=3):
        if rows[rows[x][y]][z] != rows[x][rows[y][z]]:
            raise NotAssociative(f"(x*y)*z != x*(y*z) for (x, y, z) = ({x}, {y}, {z})")
    return FiniteGroup(tuple(rows), tuple(inv), name)


@dataclass(frozen=True)
class GroupHom:
    domain: FiniteGroup
    codomain: FiniteGroup
    image: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.image[x]

    @property
    def injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def image_set(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.image)))


def validate_hom(h: GroupHom, require_injective: bool = False) -> GroupHom:
    dom, cod = h.domain, h.codomain
    if len(h.image) != dom.order:
        raise BadHomTarget(f"hom table has length {len(h.image)}, domain has order {dom.order}")
    for x, y in enumerate(h.image):
        if not isinstance(y, int) or not 0 <= y < cod.order:
            raise BadHomTarget(f"image[{x}] = {y!r} not an element of the codomain")
    for x in dom.elements():
        for y in dom.elements():
            if h.image[dom.mul[x][y]] != cod.mul[h.image[x]][h.image[y]]:
                raise NotHomomorphism(f"h(x*y) != h(x)*h(y) for (x, y) = ({x}, {y})")
    if require_injective:
        seen = {}
        for x, y in enumerate(h.image):
            if y in seen:
                raise NotInjective(f"elements {seen[y]} and {x} both map to {y}")
            seen[y] = x
    return h


def make_hom(domain: FiniteGroup, codomain: FiniteGroup, image, injective=False) -> GroupHom:
    return validate_hom(GroupHom(domain, codomain, tuple(image)), require_injective=injective)


@dataclass(frozen=True)
class CosetTransversal:
    """Right cosets ``H g`` of a subgroup, each represented by its least element.

    ``coset_of[g] = (i, u)`` means ``g == u * reps[i]`` with ``u`` in the
    subgroup.
    """

    group: FiniteGroup
    subgroup: tuple[int, ...]
    reps: tuple[int, ...]
    coset_of: tuple[tuple[int, int], ...]

    def rep(self, g: int) -> int:
        return self.reps[self.coset_of[g][0]]

    def subgroup_part(self, g: int) -> int:
        return self.coset_of[g][1]

    @property
    def index(self) -> int:
        return len(self.reps)


def right_transversal(g: FiniteGroup, sub) -> CosetTransversal:
    sub = tuple(sorted(set(sub)))
    if not g.is_subgroup(sub):
        raise NotASubgroup(f"{list(sub)} is not a subgroup of {g!r}")
    rep_index = [-1] * g.order
    reps = []
    for x in g.elements():
        if rep_index[x] >= 0:
            continue
        # x is the least element of its coset, as all smaller ones are placed
        i = len(reps)
        reps.append(x)
        for h in sub:
            rep_index[g.mul[h][x]] = i
    coset_of = tuple(
        (rep_index[x], g.mul[x][g.inv[reps[rep_index[x]]]]) for x in g.elements()
    )
    return CosetTransversal(g, sub, tuple(reps), coset_of)


# -- a small library of groups ---------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    return validate_group([[(i + j) % n for j in range(n)] for i in range(n)], f"Z{n}")


def trivial() -> FiniteGroup:
    return cyclic(1)


def from_permutations(perms, name="") -> FiniteGroup:
    """Group on a list of permutations (tuples) that is closed and starts with the identity."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[k]] for k in range(len(q)))] for q in perms] for p in perms]
    return validate_group(table, name)


def symmetric(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    return from_permutations(perms, f"S{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon (order 2n): rotations r^k are 0..n-1, reflections n..2n-1."""
    def compose(a, b):
        # (s1, k1) * (s2, k2) with elements r^k s^s
        (k1, s1), (k2, s2) = a, b
        return ((k1 + (-k2 if s1 else k2)) % n, s1 ^ s2)

    elems = [(k, 0) for k in range(n)] + [(k, 1) for k in range(n)]
    index = {e: i for i, e in enumerate(elems)}
    return validate_group([[index[compose(a, b)] for b in elems] for a in elems], f"D{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    n, m = a.order, b.order
    table = [
        [a.mul[x // m][y // m] * m + b.mul[x % m][y % m] for y in range(n * m)]
        for x in range(n * m)
    ]
    return validate_group(table, f"{a.name}x{b.name}")


def quaternion() -> FiniteGroup:
    # unit quaternions +-1, +-i, +-j, +-k as (sign, basis) with basis 0..3
    basis_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    index = {e: i for i, e in enumerate(elems)}

    def m(a, b):
        s, c = basis_mul[a[1], b[1]]
        return (a[0] * b[0] * s, c)

    return validate_group([[index[m(a, b)] for b in elems] for a in elems], "Q8")


def elements_of_order(g: FiniteGroup, d: int) -> list[int]:
    return [x for x in g.elements() if g.element_order(x) == d]


def cyclic_embedding(n: int, target: FiniteGroup, generator_image: int) -> GroupHom:
    """The hom Z/n -> target sending 1 to ``generator_image``."""
    src = cyclic(n)
    image, y = [], 0
    for _ in range(n):
        image.append(y)
        y = target.mul[y][generator_image]
    return make_hom(src, target, image, injective=True)
