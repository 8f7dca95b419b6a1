# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled compute kernels (see hodgecheck._accel_py for the reference
implementation and the shared contract).

Coefficients stay arbitrary-precision Python objects; the win is moving the
monomial bookkeeping (bitmasks, signs, loop overhead) into C.  Masks are
limited to 64 generators, which covers every algebra this package builds.
"""

BACKEND = "compiled"

cdef extern from *:
    """
    static int popcount64(unsigned long long x) {
    #if defined(__GNUC__) || defined(__clang__)
        return __builtin_popcountll(x);
    #else
        int n = 0; while (x) { x &= x - 1; ++n; } return n;
    #endif
    }
    """
    int popcount64(unsigned long long x) nogil


cdef inline int _parity(unsigned long long a, unsigned long long b) nogil:
    cdef int parity = 0
    cdef unsigned long long low
    while b:
        low = b & (~b + 1)
        parity ^= popcount64(a & ~(low | (low - 1))) & 1
        b ^= low
    return parity


def inversion_parity(a, b):
    """Parity of #{(i, j) : i set in a, j set in b, i > j} for bitmasks a, b."""
    return _parity(<unsigned long long> a, <unsigned long long> b)


def wedge_merge(dict acc, a, b, bint signed):
    """acc[mask_a | mask_b] += ca * cb * sign over all disjoint mask pairs."""
    cdef unsigned long long ma, mb, m
    cdef list bl = list(b)
    cdef Py_ssize_t nb = len(bl), k
    cdef unsigned long long[::1] bmasks
    import array
    arr = array.array("Q", [0] * nb)
    cdef list bcoeffs = [None] * nb
    for k in range(nb):
        mk, ck = bl[k]
        arr[k] = mk
        bcoeffs[k] = ck
    bmasks = arr
    for ai in a:
        ma = ai[0]
        ca = ai[1]
        for k in range(nb):
            mb = bmasks[k]
            if ma & mb:
                continue
            m = ma | mb
            c = ca * bcoeffs[k]
            if signed and _parity(ma, mb):
                c = -c
            prev = acc.get(m)
            if prev is None:
                acc[m] = c
            else:
                s = prev + c
                if s:
                    acc[m] = s
                else:
                    del acc[m]


def bareiss_echelon(list rows):
    """Fraction-free (Bareiss) row echelon of an integer matrix, in place."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(rows[0]) if nrows else 0
    cdef list pivot_cols = []
    cdef Py_ssize_t r = 0, c, i, j, piv
    prev = 1
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if (<list> rows[i])[c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[piv], rows[r] = rows[r], rows[piv]
        pr = <list> rows[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            ri = <list> rows[i]
            f = ri[c]
            if f:
                for j in range(c, ncols):
                    ri[j] = (ri[j] * p - f * pr[j]) // prev
            else:
                for j in range(c, ncols):
                    ri[j] = (ri[j] * p) // prev
        pivot_cols.append(c)
        prev = p
        r += 1
        if r == nrows:
            break
    return r, pivot_cols
