# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for tree growth and branching-process simulation.

Every kernel is a deterministic function of pre-drawn uniforms in [0, 1),
so the pure-Python twin in ``_purepy`` produces bit-identical output.
Signatures and semantics must stay in sync with that module.
"""
from libc.math cimport log, isnan
from libc.stdint cimport int64_t, uint8_t


cdef inline Py_ssize_t _pick(double u, Py_ssize_t length) noexcept nogil:
    cdef Py_ssize_t idx = <Py_ssize_t>(u * length)
    if idx >= length:  # defensive; u < 1 keeps idx < length for length < 2**53
        idx = length - 1
    return idx


def grow_superstar(double p, const double[::1] u_attach, const double[::1] u_pick,
                   int64_t[::1] parent, int64_t[::1] degree, int64_t[::1] scratch):
    """Fill ``parent``/``degree`` for a superstar tree on ``len(parent)`` vertices.

    ``scratch`` must hold at least ``2 * len(parent)`` entries; it becomes the
    endpoint list of non-superstar vertices.
    """
    cdef Py_ssize_t n = parent.shape[0]
    cdef Py_ssize_t k, length, j
    with nogil:
        parent[0] = -1
        parent[1] = 0
        degree[0] = 1
        degree[1] = 1
        scratch[0] = 1
        length = 1
        for k in range(2, n):
            if u_attach[k] < p:
                parent[k] = 0
                degree[0] += 1
            else:
                j = scratch[_pick(u_pick[k], length)]
                parent[k] = j
                degree[j] += 1
                scratch[length] = j
                length += 1
            degree[k] = 1
            scratch[length] = k
            length += 1


def grow_preferential(const double[::1] u_pick, int64_t[::1] parent,
                      int64_t[::1] degree, int64_t[::1] scratch):
    """Fill ``parent``/``degree`` for a preferential-attachment tree."""
    cdef Py_ssize_t n = parent.shape[0]
    cdef Py_ssize_t k, length, j
    with nogil:
        parent[0] = -1
        parent[1] = 0
        degree[0] = 1
        degree[1] = 1
        scratch[0] = 0
        scratch[1] = 1
        length = 2
        for k in range(2, n):
            j = scratch[_pick(u_pick[k], length)]
            parent[k] = j
            degree[j] += 1
            degree[k] = 1
            scratch[length] = j
            scratch[length + 1] = k
            length += 2


def tree_depth(const int64_t[::1] parent, int64_t[::1] depth):
    """Depth of every vertex given birth-ordered parents; returns the height."""
    cdef Py_ssize_t n = parent.shape[0]
    cdef Py_ssize_t i
    cdef int64_t height = 0
    cdef int64_t pi
    with nogil:
        for i in range(n):
            pi = parent[i]
            if pi < 0:
                depth[i] = 0
            else:
                depth[i] = depth[pi] + 1
                if depth[i] > height:
                    height = depth[i]
    return height


def simulate_bp(double p, double horizon, int64_t gen_target, const double[::1] u,
                int64_t[::1] parent, uint8_t[::1] red, double[::1] birth_time,
                int64_t[::1] c_blue, int64_t[::1] c_red, int64_t[::1] dgen,
                double[::1] bir, int64_t[::1] scratch):
    """Run the two-type process from a single red root.

    Event ``i`` consumes ``u[3i:3i+3]``: waiting time, parent pick, colour.
    Stops when the arrays are full, when the next event would exceed
    ``horizon``, or once a vertex of modified generation ``gen_target`` is
    born (``gen_target < 0`` disables it). ``bir`` must be NaN-filled.

    Returns ``(n_vertices, n_blue, clock, reason)`` with reason 0 = capacity,
    1 = horizon, 2 = generation.
    """
    cdef Py_ssize_t n_max = parent.shape[0]
    cdef Py_ssize_t n = 1, length = 1, event = 0, j
    cdef int64_t n_blue = 0, d
    cdef double t = 0.0
    cdef int reason = 0
    with nogil:
        parent[0] = -1
        red[0] = 1
        birth_time[0] = 0.0
        c_blue[0] = 0
        c_red[0] = 0
        dgen[0] = 0
        bir[0] = 0.0
        scratch[0] = 0
        if gen_target == 0:
            reason = 2
        while reason == 0 and n < n_max:
            t = t - log(1.0 - u[3 * event]) / <double>length
            if t > horizon:
                t = horizon
                reason = 1
                break
            j = scratch[_pick(u[3 * event + 1], length)]
            parent[n] = j
            birth_time[n] = t
            c_blue[n] = 0
            c_red[n] = 0
            scratch[length] = n
            length += 1
            if u[3 * event + 2] < p:
                red[n] = 1
                c_red[j] += 1
                d = 0
            else:
                red[n] = 0
                c_blue[j] += 1
                n_blue += 1
                scratch[length] = j
                length += 1
                d = dgen[j] + 1
            dgen[n] = d
            if isnan(bir[d]):
                bir[d] = t
                if d == gen_target:
                    reason = 2
            n += 1
            event += 1
    return n, n_blue, t, reason
