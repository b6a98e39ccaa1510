# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled kernels.  Twin of ``_pykernels.py``; semantics must match exactly."""

from libc.stdlib cimport malloc, free as cfree
from libc.string cimport memcpy

ctypedef long long i64


cdef class CTables:
    cdef i64[::1] order, mul_off, mul, dep, arr, ltab_off, rep, sub, tr
    cdef i64[::1] out_off, out_letters, reps_off, reps

    def __init__(self, T):
        a = T.arrays()
        self.order = a["order"]
        self.mul_off = a["mul_off"]
        self.mul = a["mul"]
        self.dep = a["dep"]
        self.arr = a["arr"]
        self.ltab_off = a["ltab_off"]
        self.rep = a["rep"]
        self.sub = a["sub"]
        self.tr = a["tr"]
        self.out_off = a["out_off"]
        self.out_letters = a["out_letters"]
        self.reps_off = a["reps_off"]
        self.reps = a["reps"]


cdef inline i64 _slide(CTables T, i64 head, i64* letters, i64* elems, Py_ssize_t n) nogil:
    cdef Py_ssize_t i
    cdef i64 L, off, u, x, v
    for i in range(n - 1, -1, -1):
        L = letters[i]
        off = T.ltab_off[L] + elems[i]
        u = T.sub[off]
        elems[i] = T.rep[off]
        if u:
            x = T.tr[T.ltab_off[L] + u]
            v = T.dep[L]
            if i == 0:
                head = T.mul[T.mul_off[v] + head * T.order[v] + x]
            else:
                elems[i - 1] = T.mul[T.mul_off[v] + elems[i - 1] * T.order[v] + x]
    return head


cdef Py_ssize_t _normalize(CTables T, i64 start, i64* head, i64* letters, i64* elems,
                           Py_ssize_t n, i64* elims) nogil:
    cdef Py_ssize_t i, j
    cdef i64 v
    while True:
        head[0] = _slide(T, head[0], letters, elems, n)
        i = 0
        while i < n - 1:
            if elems[i] == 0 and letters[i + 1] == (letters[i] ^ 1):
                break
            i += 1
        if i >= n - 1:
            return n
        if i == 0:
            v = start
            head[0] = T.mul[T.mul_off[v] + head[0] * T.order[v] + elems[1]]
        else:
            v = T.arr[letters[i - 1]]
            elems[i - 1] = T.mul[T.mul_off[v] + elems[i - 1] * T.order[v] + elems[i + 1]]
        for j in range(i, n - 2):
            letters[j] = letters[j + 2]
            elems[j] = elems[j + 2]
        n -= 2
        elims[0] += 1


cdef tuple _tup(i64* a, Py_ssize_t n):
    return tuple([a[i] for i in range(n)])


def slide(T, i64 start, i64 head, letters, elems):
    cdef CTables C = _ctables(T)
    cdef Py_ssize_t n = len(letters)
    cdef i64* buf = <i64*> malloc((2 * n + 1) * sizeof(i64))
    cdef Py_ssize_t i
    cdef i64 h = head
    try:
        for i in range(n):
            buf[i] = letters[i]
            buf[n + i] = elems[i]
        h = _slide(C, h, buf, buf + n, n)
        for i in range(n):
            elems[i] = buf[n + i]
    finally:
        cfree(buf)
    return h


def normalize(T, i64 start, i64 head, letters, elems):
    cdef CTables C = _ctables(T)
    cdef Py_ssize_t n = len(letters)
    cdef i64* buf = <i64*> malloc((2 * n + 1) * sizeof(i64))
    cdef Py_ssize_t i, k
    cdef i64 h = head
    cdef i64 elims = 0
    try:
        for i in range(n):
            buf[i] = letters[i]
            buf[n + i] = elems[i]
        k = _normalize(C, start, &h, buf, buf + n, n, &elims)
        return h, [buf[i] for i in range(k)], [buf[n + i] for i in range(k)], elims
    finally:
        cfree(buf)


cdef class _Scan:
    cdef CTables T
    cdef i64 start
    cdef Py_ssize_t m
    cdef const unsigned char[::1] mask
    cdef i64* letters
    cdef i64* reps
    cdef i64* scratch
    cdef list free
    cdef set nfs
    cdef Py_ssize_t count

    cdef int rec(self, Py_ssize_t k, i64 v, bint pinched) except -1:
        cdef CTables T = self.T
        cdef Py_ssize_t idx, j, n
        cdef i64 L, w, h, elims
        cdef bint p
        cdef Py_ssize_t last = self.m - 1
        for idx in range(T.out_off[v], T.out_off[v + 1]):
            L = T.out_letters[idx]
            w = T.arr[L]
            if k == last and not self.mask[w]:
                continue
            p = pinched or (k > 0 and self.reps[k - 1] == 0 and self.letters[k - 1] == (L ^ 1))
            self.letters[k] = L
            for j in range(T.reps_off[L], T.reps_off[L + 1]):
                self.reps[k] = T.reps[j]
                if k == last:
                    self.count += 1
                    if p:
                        memcpy(self.scratch, self.letters, self.m * sizeof(i64))
                        memcpy(self.scratch + self.m, self.reps, self.m * sizeof(i64))
                        h = 0
                        elims = 0
                        n = _normalize(T, self.start, &h, self.scratch, self.scratch + self.m,
                                       self.m, &elims)
                        self.nfs.add((h, _tup(self.scratch, n), _tup(self.scratch + self.m, n)))
                    else:
                        self.free.append((_tup(self.letters, self.m), _tup(self.reps, self.m)))
                else:
                    self.rec(k + 1, w, p)
        return 0


def stage_scan(T, i64 start, Py_ssize_t m, end_mask):
    if m == 0:
        if end_mask[start]:
            return 1, [((), ())], set()
        return 0, [], set()
    cdef _Scan s = _Scan()
    s.T = _ctables(T)
    s.start = start
    s.m = m
    s.mask = bytes(bytearray(1 if x else 0 for x in end_mask))
    s.free = []
    s.nfs = set()
    s.count = 0
    s.letters = <i64*> malloc(4 * m * sizeof(i64))
    if s.letters == NULL:
        raise MemoryError()
    s.reps = s.letters + m
    s.scratch = s.letters + 2 * m
    try:
        s.rec(0, start, False)
    finally:
        cfree(s.letters)
    return s.count, s.free, s.nfs


cdef CTables _ctables(T):
    c = getattr(T, "_ctables", None)
    if c is None:
        c = CTables(T)
        T._ctables = c
    return <CTables> c
