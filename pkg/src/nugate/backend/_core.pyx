# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled amplitude kernels; signatures mirror ``python.py``."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

NAME = "cython"


def apply_1q(cnp.complex128_t[::1] amps, int q, gate):
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t step = 1 << q
    cdef Py_ssize_t block = step << 1
    cdef Py_ssize_t base, off, i0, i1
    cdef double complex g00 = gate[0, 0], g01 = gate[0, 1]
    cdef double complex g10 = gate[1, 0], g11 = gate[1, 1]
    cdef double complex a, b
    for base in range(0, n, block):
        for off in range(step):
            i0 = base + off
            i1 = i0 + step
            a = amps[i0]
            b = amps[i1]
            amps[i0] = g00 * a + g01 * b
            amps[i1] = g10 * a + g11 * b


def apply_2q(cnp.complex128_t[::1] amps, int q0, int q1, gate):
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t m0 = 1 << q0
    cdef Py_ssize_t m1 = 1 << q1
    cdef cnp.complex128_t[:, ::1] g = np.ascontiguousarray(gate, dtype=np.complex128)
    cdef Py_ssize_t i, i0, i1, i2, i3
    cdef double complex a0, a1, a2, a3
    for i in range(n):
        if (i & m0) == 0 and (i & m1) == 0:
            i0 = i
            i1 = i | m0
            i2 = i | m1
            i3 = i | m0 | m1
            a0 = amps[i0]
            a1 = amps[i1]
            a2 = amps[i2]
            a3 = amps[i3]
            amps[i0] = g[0, 0] * a0 + g[0, 1] * a1 + g[0, 2] * a2 + g[0, 3] * a3
            amps[i1] = g[1, 0] * a0 + g[1, 1] * a1 + g[1, 2] * a2 + g[1, 3] * a3
            amps[i2] = g[2, 0] * a0 + g[2, 1] * a1 + g[2, 2] * a2 + g[2, 3] * a3
            amps[i3] = g[3, 0] * a0 + g[3, 1] * a1 + g[3, 2] * a2 + g[3, 3] * a3


def apply_diag(cnp.complex128_t[::1] amps, targets, diag):
    cdef Py_ssize_t n = amps.shape[0]
    cdef cnp.complex128_t[::1] d = np.ascontiguousarray(diag, dtype=np.complex128)
    cdef Py_ssize_t nt = len(targets)
    cdef Py_ssize_t[8] qbits
    cdef Py_ssize_t i, j, sub
    for j in range(nt):
        qbits[j] = targets[j]
    for i in range(n):
        sub = 0
        for j in range(nt):
            sub |= ((i >> qbits[j]) & 1) << j
        amps[i] = amps[i] * d[sub]


def apply_anc_rotation(cnp.complex128_t[::1] amps, int anc, targets,
                       cos_table, sin_table):
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t ma = (<Py_ssize_t>1) << anc
    cdef double[::1] ct = np.ascontiguousarray(cos_table, dtype=np.float64)
    cdef double[::1] st = np.ascontiguousarray(sin_table, dtype=np.float64)
    cdef Py_ssize_t nt = len(targets)
    cdef Py_ssize_t[8] qbits
    cdef Py_ssize_t i, j, sub, i1
    cdef double c, s
    cdef double complex a0, a1
    for j in range(nt):
        qbits[j] = targets[j]
    for i in range(n):
        if (i & ma) == 0:
            sub = 0
            for j in range(nt):
                sub |= ((i >> qbits[j]) & 1) << j
            c = ct[sub]
            s = st[sub]
            i1 = i | ma
            a0 = amps[i]
            a1 = amps[i1]
            amps[i] = c * a0 - s * a1
            amps[i1] = s * a0 + c * a1


def prob_one(cnp.complex128_t[::1] amps, int q):
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t m = (<Py_ssize_t>1) << q
    cdef Py_ssize_t i
    cdef double acc = 0.0
    cdef double complex a
    for i in range(n):
        if i & m:
            a = amps[i]
            acc += a.real * a.real + a.imag * a.imag
    return acc


def project(cnp.complex128_t[::1] amps, int q, int outcome):
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t m = (<Py_ssize_t>1) << q
    cdef Py_ssize_t i
    cdef double acc = 0.0
    cdef bint keep_one = outcome == 1
    cdef double complex a
    for i in range(n):
        if ((i & m) != 0) == keep_one:
            a = amps[i]
            acc += a.real * a.real + a.imag * a.imag
        else:
            amps[i] = 0.0
    return acc


def phase_flip_all_ones(cnp.complex128_t[::1] amps, object mask):
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t mk = mask
    cdef Py_ssize_t i
    for i in range(n):
        if (i & mk) == mk:
            amps[i] = -amps[i]


def reflect_about_zero(cnp.complex128_t[::1] amps, object mask):
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t mk = mask
    cdef Py_ssize_t i
    for i in range(n):
        if (i & mk) != 0:
            amps[i] = -amps[i]


def rus_ensemble(weights2, sin2, cos2, Py_ssize_t n_traj, Py_ssize_t max_shots, draw):
    cdef double[::1] w0 = np.ascontiguousarray(weights2, dtype=np.float64)
    cdef double[::1] s2 = np.ascontiguousarray(sin2, dtype=np.float64)
    cdef double[::1] c2 = np.ascontiguousarray(cos2, dtype=np.float64)
    cdef Py_ssize_t dim = w0.shape[0]
    result_arr = np.zeros(n_traj, dtype=np.int64)
    cdef cnp.int64_t[::1] result = result_arr
    w_arr = np.tile(np.asarray(w0), (n_traj, 1))
    cdef double[:, ::1] w = w_arr
    active_arr = np.arange(n_traj, dtype=np.int64)
    cdef cnp.int64_t[::1] active = active_arr
    cdef Py_ssize_t n_active = n_traj
    cdef Py_ssize_t shot, t, j, dst
    cdef double norm, flip_w, p
    cdef double[::1] u
    for shot in range(1, max_shots + 1):
        if n_active == 0:
            break
        u = np.ascontiguousarray(draw(n_active), dtype=np.float64)
        dst = 0
        for t in range(n_active):
            norm = 0.0
            flip_w = 0.0
            for j in range(dim):
                norm += w[t, j]
                flip_w += w[t, j] * s2[j]
            p = flip_w / norm
            if u[t] < p:
                result[active[t]] = shot
            else:
                for j in range(dim):
                    w[dst, j] = w[t, j] * c2[j]
                active[dst] = active[t]
                dst += 1
        n_active = dst
    return result_arr


def ite_ensemble(weights2, sin2_bonds, cos2_bonds, Py_ssize_t n_traj,
                 Py_ssize_t max_rounds, draw):
    cdef double[::1] w0 = np.ascontiguousarray(weights2, dtype=np.float64)
    cdef double[:, ::1] s2 = np.ascontiguousarray(sin2_bonds, dtype=np.float64)
    cdef double[:, ::1] c2 = np.ascontiguousarray(cos2_bonds, dtype=np.float64)
    cdef Py_ssize_t dim = w0.shape[0]
    cdef Py_ssize_t n_bonds = s2.shape[0]
    result_arr = np.zeros(n_traj, dtype=np.int64)
    cdef cnp.int64_t[::1] result = result_arr
    w_arr = np.tile(np.asarray(w0), (n_traj, 1))
    cdef double[:, ::1] w = w_arr
    pending_arr = np.ones((n_traj, n_bonds), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] pending = pending_arr
    active_arr = np.arange(n_traj, dtype=np.int64)
    cdef cnp.int64_t[::1] active = active_arr
    cdef Py_ssize_t n_active = n_traj
    cdef Py_ssize_t rnd, b, t, j, dst, n_rows, k
    cdef double norm, flip_w, p
    cdef double[::1] u
    rows_arr = np.empty(n_traj, dtype=np.int64)
    cdef cnp.int64_t[::1] rows = rows_arr
    for rnd in range(1, max_rounds + 1):
        if n_active == 0:
            break
        for b in range(n_bonds):
            n_rows = 0
            for t in range(n_active):
                if pending[active[t], b]:
                    rows[n_rows] = t
                    n_rows += 1
            if n_rows == 0:
                continue
            u = np.ascontiguousarray(draw(n_rows), dtype=np.float64)
            for k in range(n_rows):
                t = rows[k]
                norm = 0.0
                flip_w = 0.0
                for j in range(dim):
                    norm += w[t, j]
                    flip_w += w[t, j] * s2[b, j]
                p = flip_w / norm
                if u[k] < p:
                    for j in range(dim):
                        w[t, j] = w[t, j] * s2[b, j]
                    pending[active[t], b] = 0
                else:
                    for j in range(dim):
                        w[t, j] = w[t, j] * c2[b, j]
        dst = 0
        for t in range(n_active):
            for b in range(n_bonds):
                if pending[active[t], b]:
                    break
            else:
                result[active[t]] = rnd
                continue
            for j in range(dim):
                w[dst, j] = w[t, j]
            active[dst] = active[t]
            dst += 1
        n_active = dst
    return result_arr
