"""The compiled and pure-Python kernels must agree exactly."""
import random

import pytest

from pathspace import kernels, samples
from pathspace.span import vertex

BACKENDS = kernels.backends()
pytestmark = pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
PY = BACKENDS["python"]
C = BACKENDS.get("compiled")


def _specs():
    rng = random.Random(7)
    out = list(samples.shipped_specs().values())
    out += [samples.random_graph_of_groups(rng) for _ in range(15)]
    return out


def test_backend_flag():
    assert kernels.BACKEND in ("compiled", "python")


@pytest.mark.parametrize("spec", _specs())
def test_normalize_and_slide_agree(spec):
    rng = random.Random(3)
    T = spec.tables
    for _ in range(200):
        w = samples.random_word(spec, rng.randrange(spec.n_vertices), rng.randint(0, 7), rng)
        if w is None:  # dead end in a random graph
            continue
        args = (T, w.start, w.head, list(w.letters), list(w.elems))
        assert PY.normalize(*args) == C.normalize(*args)
        e1, e2 = list(w.elems), list(w.elems)
        h1 = PY.slide(T, w.start, w.head, list(w.letters), e1)
        h2 = C.slide(T, w.start, w.head, list(w.letters), e2)
        assert (h1, e1) == (h2, e2)


@pytest.mark.parametrize("spec", _specs())
def test_stage_scan_agrees(spec):
    T = spec.tables
    for v in range(spec.n_vertices):
        for mask in ([1] * spec.n_vertices, [int(x == v) for x in range(spec.n_vertices)]):
            for m in range(4):
                a = PY.stage_scan(T, v, m, mask)
                b = C.stage_scan(T, v, m, mask)
                assert a == b


def test_filtration_same_under_both(monkeypatch):
    from pathspace import engine

    spec = samples.sl2z()
    ref = engine.filtration(spec, vertex(0), None, 5).table()
    for mod in (PY, C):
        monkeypatch.setattr(kernels, "stage_scan", mod.stage_scan)
        monkeypatch.setattr(kernels, "normalize", mod.normalize)
        assert engine.filtration(spec, vertex(0), None, 5).table() == ref
