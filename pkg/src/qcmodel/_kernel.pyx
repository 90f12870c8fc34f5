# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer Gauss-Jordan elimination.

Works on machine integers with overflow detection and falls back to the
pure-Python kernel whenever an intermediate value would overflow.  The
output is the canonical reduced echelon form, so both paths agree exactly.
"""

from libc.stdlib cimport malloc, free

from qcmodel._kernel_py import echelon as _echelon_py

cdef extern from *:
    """
    static int qc_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static int qc_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    """
    int qc_mul(long long a, long long b, long long *r) nogil
    int qc_sub(long long a, long long b, long long *r) nogil

cdef long long LIMIT = 1LL << 62


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void _primitive(long long *row, Py_ssize_t ncols, Py_ssize_t pivot) nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(ncols):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                break
    if g == 0:
        return
    if row[pivot] < 0:
        g = -g
    if g != 1:
        for j in range(ncols):
            row[j] = row[j] // g


cdef int _reduce(long long *a, Py_ssize_t n, Py_ssize_t ncols, Py_ssize_t *piv, Py_ssize_t *ntop) nogil:
    """Return 0 on success, 1 on overflow."""
    cdef Py_ssize_t top = 0, c, k, j, best, lead
    cdef long long v, av, best_abs, pa, b, g, m1, m2, t1, t2, tmp
    cdef long long *prow
    cdef long long *row
    for c in range(ncols):
        if top == n:
            break
        best = -1
        best_abs = 0
        for k in range(top, n):
            v = a[k * ncols + c]
            if v:
                av = -v if v < 0 else v
                if best < 0 or av < best_abs:
                    best = k
                    best_abs = av
                    if av == 1:
                        break
        if best < 0:
            continue
        if best != top:
            for j in range(ncols):
                tmp = a[top * ncols + j]
                a[top * ncols + j] = a[best * ncols + j]
                a[best * ncols + j] = tmp
        prow = a + top * ncols
        _primitive(prow, ncols, c)
        pa = prow[c]
        for k in range(n):
            if k == top:
                continue
            row = a + k * ncols
            b = row[c]
            if not b:
                continue
            g = _gcd(pa, b)
            m1 = pa // g
            m2 = b // g
            lead = -1
            for j in range(ncols):
                if qc_mul(m1, row[j], &t1):
                    return 1
                if qc_mul(m2, prow[j], &t2):
                    return 1
                if qc_sub(t1, t2, &row[j]):
                    return 1
                if row[j] > LIMIT or row[j] < -LIMIT:
                    return 1
                if lead < 0 and row[j]:
                    lead = j
            if lead >= 0:
                _primitive(row, ncols, lead)
        piv[top] = c
        top += 1
    ntop[0] = top
    return 0


def echelon(rows, Py_ssize_t ncols):
    """Reduce integer rows to canonical reduced echelon form (see _kernel_py)."""
    work = [r for r in rows if any(r)]
    cdef Py_ssize_t n = len(work)
    if n == 0 or ncols == 0:
        return [], []
    cdef long long *a = <long long *> malloc(n * ncols * sizeof(long long))
    cdef Py_ssize_t *piv = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    cdef Py_ssize_t i, j, top = 0
    cdef int status
    if a == NULL or piv == NULL:
        free(a)
        free(piv)
        raise MemoryError()
    try:
        for i in range(n):
            r = work[i]
            for j in range(ncols):
                x = r[j]
                if x > LIMIT or x < -LIMIT:
                    return _echelon_py(work, ncols)
                a[i * ncols + j] = x
        with nogil:
            status = _reduce(a, n, ncols, piv, &top)
        if status:
            return _echelon_py(work, ncols)
        out = []
        for i in range(top):
            _primitive(a + i * ncols, ncols, piv[i])
            out.append([a[i * ncols + j] for j in range(ncols)])
        return out, [piv[i] for i in range(top)]
    finally:
        free(a)
        free(piv)
