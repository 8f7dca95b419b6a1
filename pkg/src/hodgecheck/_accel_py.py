"""Pure-Python compute kernels.

Same contract as the compiled module hodgecheck._accel; whichever is
importable wins (see hodgecheck._kernels).  Keep the two in sync: the test
suite cross-checks them on random inputs whenever both are present.
"""

BACKEND = "python"


def inversion_parity(a: int, b: int) -> int:
    """Parity of #{(i, j) : i set in a, j set in b, i > j} for bitmasks a, b."""
    parity = 0
    while b:
        low = b & -b
        # bits of a strictly above this bit of b
        if (a & ~(low | (low - 1))).bit_count() & 1:
            parity ^= 1
        b ^= low
    return parity


def wedge_merge(acc: dict, a, b, signed: bool) -> None:
    """acc[mask_a | mask_b] += ca * cb * sign over all disjoint mask pairs.

    a and b are iterables of (bitmask, coefficient); signed=True applies the
    exterior inversion sign, signed=False treats generators as commuting
    square-zero variables.
    """
    get = acc.get
    for ma, ca in a:
        for mb, cb in b:
            if ma & mb:
                continue
            m = ma | mb
            c = ca * cb
            if signed and inversion_parity(ma, mb):
                c = -c
            prev = get(m)
            if prev is None:
                acc[m] = c
            else:
                s = prev + c
                if s:
                    acc[m] = s
                else:
                    del acc[m]


def bareiss_echelon(rows):
    """Fraction-free (Bareiss) row echelon of an integer matrix, in place.

    Returns (rank, pivot_cols).  Entry growth stays polynomial because every
    2x2 cross update is exactly divisible by the previous pivot.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivot_cols = []
    prev = 1
    r = 0
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[piv], rows[r] = rows[r], rows[piv]
        pr = rows[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            ri = rows[i]
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
