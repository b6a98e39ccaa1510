"""Flat integer tables describing a graph of groups, shared by both kernel backends.

Letter ``L`` is ``2e`` for ``t_e`` and ``2e+1`` for ``t_e^-1``.  Per-letter
tables have one slot per element of the arrival group and start at
``ltab_off[L]``:

* ``rep``  - transversal representative of the element's right coset,
* ``sub``  - its subgroup part (element == sub * rep),
* ``tr``   - for subgroup elements, the element obtained by moving it leftward
  across the letter; ``-1`` elsewhere.
"""
from __future__ import annotations

from array import array
from dataclasses import dataclass


@dataclass
class KernelTables:
    n_vertices: int
    n_letters: int
    order: list
    mul_off: list
    mul: list
    inv_off: list
    inv: list
    dep: list
    arr: list
    ltab_off: list
    rep: list
    sub: list
    tr: list
    out_off: list
    out_letters: list
    reps_off: list
    reps: list

    @classmethod
    def build(cls, g) -> "KernelTables":
        order, mul_off, mul, inv_off, inv = [], [], [], [], []
        for G in g.vgroups:
            order.append(G.order)
            mul_off.append(len(mul))
            for row in G.mul:
                mul.extend(row)
            inv_off.append(len(inv))
            inv.extend(G.inv)
        n_letters = 2 * g.n_edges
        dep, arr, ltab_off, rep, sub, tr, reps_off, reps = [], [], [], [], [], [], [], []
        for L in range(n_letters):
            dep.append(g.departure(L))
            arr.append(g.arrival(L))
            T = g.letter_transversal(L)
            ltab_off.append(len(rep))
            for x in T.group.elements():
                rep.append(T.rep(x))
                sub.append(T.subgroup_part(x))
                tr.append(g.transfer(L, x))
            reps_off.append(len(reps))
            reps.extend(T.reps)
        reps_off.append(len(reps))
        out_off, out_letters = [], []
        for v in range(g.n_vertices):
            out_off.append(len(out_letters))
            out_letters.extend(g.out_letters(v))
        out_off.append(len(out_letters))
        return cls(g.n_vertices, n_letters, order, mul_off, mul, inv_off, inv, dep, arr,
                   ltab_off, rep, sub, tr, out_off, out_letters, reps_off, reps)

    def arrays(self) -> dict:
        """The same tables as ``array('q')`` buffers, for typed memoryviews."""
        out = {}
        for name, value in vars(self).items():
            if isinstance(value, list):
                out[name] = array("q", value if value else [0])
        return out
