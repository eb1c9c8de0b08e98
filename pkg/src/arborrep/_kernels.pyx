# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp


def pair_orbits(generators, Py_ssize_t n):
    cdef Py_ssize_t size = n * n
    cdef Py_ssize_t ngen = len(generators)
    cdef cnp.int64_t[:, :] gens = np.asarray(generators, dtype=np.int64).reshape(ngen, n) \
        if ngen else np.zeros((0, n), dtype=np.int64)
    cdef cnp.int64_t[:] label = np.full(size, -1, dtype=np.int64)
    cdef cnp.int64_t[:] stack = np.empty(size, dtype=np.int64)
    cdef Py_ssize_t start, top, c, d, x, y, k
    cdef cnp.int64_t count = 0
    for start in range(size):
        if label[start] >= 0:
            continue
        label[start] = count
        stack[0] = start
        top = 1
        while top > 0:
            top -= 1
            c = stack[top]
            x = c // n
            y = c - x * n
            for k in range(ngen):
                d = gens[k, x] * n + gens[k, y]
                if label[d] < 0:
                    label[d] = count
                    stack[top] = d
                    top += 1
        count += 1
    return np.asarray(label).tolist(), int(count)


def intersection_numbers(table, Py_ssize_t n, Py_ssize_t r, reps):
    # only r rows and columns of the table are read, so index it in place
    cdef list t = list(table) if not isinstance(table, list) else table
    cdef list out = [0] * (r * r * r)
    cdef Py_ssize_t k, x, y, z, base, row, idx
    for k in range(len(reps)):
        x, y = reps[k]
        base = k * r * r
        row = x * n
        for z in range(n):
            idx = base + <Py_ssize_t>t[row + z] * r + <Py_ssize_t>t[z * n + y]
            out[idx] = <long>out[idx] + 1
    return out


def fixed_points(elements):
    cdef Py_ssize_t j, n
    cdef long c
    cdef object g
    res = []
    for g in elements:
        if not isinstance(g, (list, tuple)):
            g = list(g)
        n = len(g)
        c = 0
        for j in range(n):
            if <Py_ssize_t>g[j] == j:
                c += 1
        res.append(c)
    return res
