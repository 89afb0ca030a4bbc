# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: CGR recurrence, Sn cross-tabulation, grid binning.

Every function here has a pure-Python twin in `_pykernels` with identical
IEEE-754 semantics; `_backend` picks whichever is importable. Keep the two
in lockstep: the backend-equivalence tests compare them bit for bit.
"""

from libc.math cimport floor, ldexp


def encode_pass(const int[::1] codes, const double[:, ::1] corners,
                const double[::1] seed, double[:, ::1] out, bint backward):
    """One CGR sweep: out[i] = (prev + corner(codes[i])) / 2.

    Forward consumes codes[0..n-1]; backward consumes codes[n-1..0].
    out[i] is always the coordinate after consuming position i, so the
    backward sweep fills rows from the tail down.
    """
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t h = corners.shape[1]
    cdef Py_ssize_t i, j, c
    if n == 0:
        return
    with nogil:
        if backward:
            c = codes[n - 1]
            for j in range(h):
                out[n - 1, j] = (seed[j] + corners[c, j]) * 0.5
            for i in range(n - 2, -1, -1):
                c = codes[i]
                for j in range(h):
                    out[i, j] = (out[i + 1, j] + corners[c, j]) * 0.5
        else:
            c = codes[0]
            for j in range(h):
                out[0, j] = (seed[j] + corners[c, j]) * 0.5
            for i in range(1, n):
                c = codes[i]
                for j in range(h):
                    out[i, j] = (out[i - 1, j] + corners[c, j]) * 0.5


cdef inline int _sn_direction(const double* u, const double* v,
                              Py_ssize_t h, int cap) noexcept nogil:
    # Largest x <= cap with round(u_j * 2^x') == round(v_j * 2^x') for all
    # x' < x and all j; rounding is half-away-from-zero (inputs are >= 0,
    # so floor(y + 0.5) realises it exactly).
    cdef int x = 0
    cdef double s = 1.0
    cdef Py_ssize_t j
    while x < cap:
        for j in range(h):
            if floor(u[j] * s + 0.5) != floor(v[j] * s + 0.5):
                return x
        x += 1
        s *= 2.0
    return cap


def sn_direction(const double[::1] u, const double[::1] v, int cap):
    return _sn_direction(&u[0], &v[0], u.shape[0], cap)


def sn_block(const double[:, ::1] af, const double[:, ::1] ab,
             const double[:, ::1] bf, const double[:, ::1] bb,
             int cap, Py_ssize_t row_lo, Py_ssize_t row_hi,
             int[:, ::1] out):
    """Fill rows [row_lo, row_hi) of the Sn table.

    Cell (i, j) = max(0, Sn_fwd + Sn_bwd - 1) from the four coordinate
    vectors alone, so any row partition yields the same table.
    """
    cdef Py_ssize_t nb = bf.shape[0]
    cdef Py_ssize_t h = af.shape[1]
    cdef Py_ssize_t i, j
    cdef int v
    with nogil:
        for i in range(row_lo, row_hi):
            for j in range(nb):
                v = (_sn_direction(&af[i, 0], &bf[j, 0], h, cap)
                     + _sn_direction(&ab[i, 0], &bb[j, 0], h, cap) - 1)
                out[i, j] = v if v > 0 else 0


def bin_counts(const double[:, ::1] coords, int k, long long[::1] counts):
    """Accumulate grid-cell counts at resolution 2^k per dimension.

    Cell index per dimension: min(floor(u * 2^k), 2^k - 1); the flat index
    concatenates dimensions with dimension 0 most significant.
    """
    cdef Py_ssize_t n = coords.shape[0]
    cdef Py_ssize_t h = coords.shape[1]
    cdef double scale = ldexp(1.0, k)
    cdef unsigned long long cmax = ((<unsigned long long>1) << k) - 1
    cdef unsigned long long idx, c
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(n):
            idx = 0
            for j in range(h):
                c = <unsigned long long>floor(coords[i, j] * scale)
                if c > cmax:
                    c = cmax
                idx = (idx << k) | c
            counts[idx] += 1
