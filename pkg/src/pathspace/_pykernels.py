"""Pure-Python kernels.  Line-for-line twin of ``_ckernels.pyx``; keep them in step."""


def slide(T, start, head, letters, elems):
    """One right-to-left pass replacing each syllable element by its coset
    representative and pushing the subgroup part leftward.  Mutates ``elems``."""
    mul, mul_off, order = T.mul, T.mul_off, T.order
    dep, ltab_off, rep, sub, tr = T.dep, T.ltab_off, T.rep, T.sub, T.tr
    for i in range(len(letters) - 1, -1, -1):
        L = letters[i]
        off = ltab_off[L] + elems[i]
        u = sub[off]
        elems[i] = rep[off]
        if u:
            x = tr[ltab_off[L] + u]
            v = dep[L]
            if i == 0:
                head = mul[mul_off[v] + head * order[v] + x]
            else:
                elems[i - 1] = mul[mul_off[v] + elems[i - 1] * order[v] + x]
    return head


def normalize(T, start, head, letters, elems):
    """Canonical form: slide pass, then cancel the leftmost pinch, to a fixpoint.

    Returns ``(head, letters, elems, eliminations)`` with fresh lists.
    """
    letters = list(letters)
    elems = list(elems)
    mul, mul_off, order, arr = T.mul, T.mul_off, T.order, T.arr
    elims = 0
    while True:
        head = slide(T, start, head, letters, elems)
        n = len(letters)
        i = 0
        while i < n - 1:
            if elems[i] == 0 and letters[i + 1] == letters[i] ^ 1:
                break
            i += 1
        else:
            return head, letters, elems, elims
        # elems[i] is the identity here, so the pinch collapses to prev * elems[i+1]
        if i == 0:
            v = start
            head = mul[mul_off[v] + head * order[v] + elems[1]]
        else:
            v = arr[letters[i - 1]]
            elems[i - 1] = mul[mul_off[v] + elems[i - 1] * order[v] + elems[i + 1]]
        del letters[i:i + 2]
        del elems[i:i + 2]
        elims += 1


def stage_scan(T, start, m, end_mask):
    """Enumerate all ``m``-crossing skeletons (letters with transversal
    representatives, identity head) from ``start`` ending in ``end_mask``.

    Returns ``(count, free, normal_forms)``: the number of skeletons, the
    pinch-free ones as ``(letters, reps)`` tuples in enumeration order, and the
    set of normal forms ``(head, letters, elems)`` of the pinched ones.
    """
    if m == 0:
        if end_mask[start]:
            return 1, [((), ())], set()
        return 0, [], set()
    out_off, out_letters, arr = T.out_off, T.out_letters, T.arr
    reps_off, reps_flat = T.reps_off, T.reps
    letters = [0] * m
    reps = [0] * m
    free = []
    nfs = set()
    count = 0
    last = m - 1

    def rec(k, v, pinched):
        nonlocal count
        for idx in range(out_off[v], out_off[v + 1]):
            L = out_letters[idx]
            w = arr[L]
            if k == last and not end_mask[w]:
                continue
            p = pinched or (k > 0 and reps[k - 1] == 0 and letters[k - 1] == L ^ 1)
            letters[k] = L
            for j in range(reps_off[L], reps_off[L + 1]):
                reps[k] = reps_flat[j]
                if k == last:
                    count += 1
                    if p:
                        h, ls, es, _ = normalize(T, start, 0, letters, reps)
                        nfs.add((h, tuple(ls), tuple(es)))
                    else:
                        free.append((tuple(letters), tuple(reps)))
                else:
                    rec(k + 1, w, p)

    rec(0, start, False)
    return count, free, nfs
