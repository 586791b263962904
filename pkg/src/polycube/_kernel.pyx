# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled odometer scan over residue profiles.

Each selection of free stars keeps the canonical index of its offset.  Moving
one profile digit up by one adds the region weight to every offset; the wrap
from E-1 back to 0 needs no special case because E * w is the identity.
"""
from libc.stdint cimport int32_t, int64_t, uint64_t
from libc.stdlib cimport malloc, free


cdef inline int first_zero_bit(uint64_t x) nogil:
    cdef int b = 0
    while x & 1:
        x >>= 1
        b += 1
    return b


def scan_chunk(const int32_t[::1] prefix, int D, int E,
               const int32_t[::1] off0,
               const int32_t[:, ::1] reg,
               const int32_t[:, ::1] addw,
               const uint64_t[:, :, ::1] T,
               const uint64_t[::1] full):
    """Scan every profile that starts with ``prefix``.

    Returns ``(states_checked, failing_digits_or_None, missing_index)``.
    """
    cdef int L = prefix.shape[0]
    cdef int nsel = reg.shape[0]
    cdef int W = full.shape[0]
    cdef int32_t *digits = <int32_t *> malloc(D * sizeof(int32_t))
    cdef int32_t *off = <int32_t *> malloc(max(nsel, 1) * sizeof(int32_t))
    cdef uint64_t *cov = <uint64_t *> malloc(W * sizeof(uint64_t))
    cdef int i, s, k, missing = -1
    cdef bint ok, failed = False
    cdef int64_t checked = 0
    cdef uint64_t c0, f0
    if digits == NULL or off == NULL or cov == NULL:
        free(digits); free(off); free(cov)
        raise MemoryError()
    try:
        with nogil:
            for i in range(D):
                digits[i] = prefix[i] if i < L else 0
            for s in range(nsel):
                off[s] = off0[s]
            f0 = full[0]
            while True:
                checked += 1
                if W == 1:
                    c0 = 0
                    for s in range(nsel):
                        c0 |= T[s, off[s], 0]
                        if c0 == f0:
                            break
                    ok = c0 == f0
                    cov[0] = c0
                else:
                    for k in range(W):
                        cov[k] = 0
                    ok = False
                    for s in range(nsel):
                        ok = True
                        for k in range(W):
                            cov[k] |= T[s, off[s], k]
                            if cov[k] != full[k]:
                                ok = False
                        if ok:
                            break
                    if nsel == 0:
                        ok = False
                if not ok:
                    failed = True
                    for k in range(W):
                        if cov[k] != full[k]:
                            missing = 64 * k + first_zero_bit(cov[k])
                            break
                    break
                i = D - 1
                while i >= L:
                    digits[i] += 1
                    for s in range(nsel):
                        off[s] = addw[reg[s, i], off[s]]
                    if digits[i] == E:
                        digits[i] = 0
                        i -= 1
                    else:
                        break
                if i < L:
                    break
        if failed:
            return checked, [digits[i] for i in range(D)], missing
        return checked, None, -1
    finally:
        free(digits)
        free(off)
        free(cov)
