# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels. See ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()


cdef extern from *:
    """
    static inline int rq_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    static inline int rq_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    """
    int rq_ctz(unsigned long long x) nogil
    int rq_popcount(unsigned long long x) nogil


def gray_code_max(int n, masks, weights, double constant, indptr, indices):
    cdef const double[:] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const int64_t[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int64_t[:] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef double[:] terms = np.array(w, dtype=np.float64)
    cdef Py_ssize_t m = w.shape[0], i
    cdef double energy = constant
    for i in range(m):
        energy += w[i]
    cdef double best = energy
    cdef uint64_t state = 0, best_state = 0
    cdef uint64_t k, total = (<uint64_t>1) << n
    cdef int v
    cdef int64_t j
    with nogil:
        k = 1
        while k < total:
            v = rq_ctz(k)
            state ^= (<uint64_t>1) << v
            for j in range(ip[v], ip[v + 1]):
                terms[ix[j]] = -terms[ix[j]]
                energy += 2.0 * terms[ix[j]]
            if energy > best:
                best = energy
                best_state = state
            k += 1
    return best, best_state, total


def diagonal(int n, masks, weights, double constant):
    cdef const uint64_t[:] mk = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef const double[:] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef uint64_t total = (<uint64_t>1) << n, x
    out = np.empty(total, dtype=np.float64)
    cdef double[:] o = out
    cdef Py_ssize_t m = w.shape[0], i
    cdef double acc
    with nogil:
        for x in range(total):
            acc = constant
            for i in range(m):
                if rq_popcount(x & mk[i]) & 1:
                    acc -= w[i]
                else:
                    acc += w[i]
            o[x] = acc
    return out


def apply_phase(amps, diag, double gamma):
    cdef double[:] z = amps.view(np.float64)
    cdef const double[:] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef Py_ssize_t i, N = d.shape[0]
    cdef double t, c, s, re, im
    with nogil:
        for i in range(N):
            t = gamma * d[i]
            c = cos(t)
            s = sin(t)
            re = z[2 * i]
            im = z[2 * i + 1]
            z[2 * i] = c * re - s * im
            z[2 * i + 1] = c * im + s * re


def apply_mixer(amps, int n, double beta):
    cdef double[:] z = amps.view(np.float64)
    cdef double c = cos(beta), s = sin(beta)
    cdef double a, b, e, f
    cdef Py_ssize_t N = z.shape[0] // 2, stride, base, i, j
    cdef int q
    with nogil:
        for q in range(n):
            stride = (<Py_ssize_t>1) << q
            base = 0
            while base < N:
                for i in range(base, base + stride):
                    j = i + stride
                    a = z[2 * i]
                    b = z[2 * i + 1]
                    e = z[2 * j]
                    f = z[2 * j + 1]
                    z[2 * i] = c * a - s * f
                    z[2 * i + 1] = c * b + s * e
                    z[2 * j] = c * e - s * b
                    z[2 * j + 1] = c * f + s * a
                base += 2 * stride


def level1_terms(gammas, a, b, ptr, juv):
    cdef const double[:] g = np.ascontiguousarray(gammas, dtype=np.float64)
    cdef const double[:] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef const double[:] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef const int64_t[:] p = np.ascontiguousarray(ptr, dtype=np.int64)
    cdef const double[:] j = np.ascontiguousarray(juv, dtype=np.float64)
    cdef Py_ssize_t G = g.shape[0], P = j.shape[0], gi, k
    cdef int64_t i
    A = np.empty((G, P), dtype=np.float64)
    B = np.empty((G, P), dtype=np.float64)
    cdef double[:, :] Av = A
    cdef double[:, :] Bv = B
    cdef double t, pm, pp, pu, pv
    with nogil:
        for gi in range(G):
            t = 2.0 * g[gi]
            for k in range(P):
                pm = 1.0
                pp = 1.0
                pu = 1.0
                pv = 1.0
                for i in range(p[k], p[k + 1]):
                    pm *= cos(t * (av[i] - bv[i]))
                    pp *= cos(t * (av[i] + bv[i]))
                    pu *= cos(t * av[i])
                    pv *= cos(t * bv[i])
                Av[gi, k] = 0.5 * (pm - pp)
                Bv[gi, k] = sin(t * j[k]) * (pu + pv)
    return A, B
