# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Word-parallel Gaussian elimination over F2 on uint64-packed rows."""

from libc.stdint cimport uint64_t


def rank_words(uint64_t[:, ::1] m, Py_ssize_t ncols):
    """Rank of the packed matrix ``m`` (rows x words).  ``m`` is overwritten."""
    cdef Py_ssize_t nrows = m.shape[0]
    cdef Py_ssize_t nw = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, k, w, piv
    cdef uint64_t bit, tmp
    for c in range(ncols):
        if r == nrows:
            break
        w = c >> 6
        bit = (<uint64_t>1) << (c & 63)
        piv = -1
        for i in range(r, nrows):
            if m[i, w] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(w, nw):
                tmp = m[piv, k]
                m[piv, k] = m[r, k]
                m[r, k] = tmp
        for i in range(r + 1, nrows):
            if m[i, w] & bit:
                for k in range(w, nw):
                    m[i, k] ^= m[r, k]
        r += 1
    return r
