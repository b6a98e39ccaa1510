"""Time the compiled kernels against the pure-Python twin.

    python benchmarks/bench_kernels.py [--repeat 3] [--words 2000]
"""
import argparse
import random
import time

from pathspace import kernels, samples


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _words(spec, n, rng):
    out = []
    while len(out) < n:
        w = samples.random_word(spec, rng.randrange(spec.n_vertices), rng.randint(4, 16), rng,
                                pinch_bias=0.5)
        if w is not None:
            out.append(w)
    return out


def cases(n_words):
    rng = random.Random(0)
    for name, spec, m in (("sl2z", samples.sl2z(), 12), ("z3_by_z", samples.z3_by_z(), 9),
                          ("psl2z", samples.psl2z_amalgam(), 12)):
        T = spec.tables
        mask = [1] * spec.n_vertices
        words = _words(spec, n_words, rng)

        def scan(k, T=T, mask=mask, m=m):
            return lambda: k.stage_scan(T, 0, m, mask)

        def norm(k, T=T, words=words):
            def run():
                for w in words:
                    k.normalize(T, w.start, w.head, w.letters, w.elems)
            return run

        yield f"{name} stage_scan m={m}", scan
        yield f"{name} normalize x{n_words}", norm


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--words", type=int, default=2000)
    args = ap.parse_args(argv)
    backs = kernels.backends()
    if "compiled" not in backs:
        print("compiled extension not built; timing the python backend only")
    print(f"{'case':<34}" + "".join(f"{b:>12}" for b in backs) + "     speedup")
    for label, make in cases(args.words):
        times = {b: _best(make(k), args.repeat) for b, k in backs.items()}
        row = f"{label:<34}" + "".join(f"{t * 1000:>10.1f}ms" for t in times.values())
        if "compiled" in times:
            row += f"  {times['python'] / times['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
