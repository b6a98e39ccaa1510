"""Connectivity degrees and the stage-by-stage estimates for ``J_n -> Z_n``.

Degrees live in ``{-2, -1, 0, ...} | {INF}``; every map is (-2)-connected so
all results are floored at -2, and ``INF`` absorbs under addition.
"""
from __future__ import annotations

import math

from .errors import BadStage

INF = math.inf
FLOOR = -2


def _check(x, what):
    if x == INF:
        return x
    if isinstance(x, bool) or not isinstance(x, int) or x < FLOOR:
        raise ValueError(f"{what} must be an integer >= -2 or INF, got {x!r}")
    return x


def _floor(x):
    return x if x == INF else max(FLOOR, x)


def _scale(c, x):
    # c * x with c >= 0 a plain integer; 0 * INF is 0
    if c == 0:
        return 0
    return INF if x == INF else c * x


def fmt(x) -> str:
    return "inf" if x == INF else str(x)


def parse_degree(text: str):
    t = text.strip().lower()
    if t in ("inf", "infinity", "oo"):
        return INF
    return _check(int(t), "degree")


def join_conn(m, n):
    """Fibrewise join of an m- and an n-connected map: m + n + 2."""
    _check(m, "m"), _check(n, "n")
    if INF in (m, n):
        return INF
    return _floor(m + n + 2)


def diagonal_conn(f_conn):
    """Diagonal of an (n+1)-connected map is n-connected."""
    _check(f_conn, "f_conn")
    if f_conn == INF:
        return INF
    return _floor(f_conn - 1)


def jz_conn(n: int, k, l, m):
    """Connectivity of ``J_n -> Z_n`` when the span legs are k- and l-connected
    and the diagonal map is m-connected."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise BadStage(f"stage must be an integer >= 2, got {n!r}")
    _check(k, "k"), _check(l, "l"), _check(m, "m")
    j, odd = divmod(n, 2)
    if odd:
        terms = [m, _scale(j, _plus(k, l, 4))]
    else:
        terms = [m, _scale(j, _plus(l, 2)), _scale(j - 1, _plus(k, 2))]
    return _floor(_plus(*terms))


def _plus(*xs):
    if INF in xs:
        return INF
    return sum(xs)


def tail_conn(from_stage: int, k, l, m):
    """Connectivity of the composite of the stage maps after ``from_stage``
    within its parity class.

    The estimates grow with the stage inside a parity class, so the minimum
    over later stages is the one two stages on.
    """
    if isinstance(from_stage, bool) or not isinstance(from_stage, int) or from_stage < 1:
        raise BadStage(f"from_stage must be an integer >= 1, got {from_stage!r}")
    return jz_conn(from_stage + 2, k, l, m)


def tail_conn_explicit(from_stage: int, k, l, m, stages: int = 10):
    """Same quantity as :func:`tail_conn` by brute force over ``stages`` later stages."""
    return min(jz_conn(from_stage + 2 * i, k, l, m) for i in range(1, stages + 1))
