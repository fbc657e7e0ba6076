# cython: boundscheck=False, wraparound=False, cdivision=True
"""C implementations of the hot kernels; see _pykernels for contracts."""

import math

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int32_t I32


def coset_min_rep(g, h_mat):
    cdef Py_ssize_t k = h_mat.shape[0]
    cdef Py_ssize_t d = h_mat.shape[1]
    cdef cnp.ndarray[I32, ndim=1] best = np.empty(d, dtype=np.int32)
    cdef const I32[:, :] hm = h_mat
    cdef const I32[:] gv = g
    cdef I32[:] bv = best
    cdef Py_ssize_t i, j
    cdef I32 val
    cdef int cmp_res
    for j in range(d):
        bv[j] = gv[hm[0, j]]
    for i in range(1, k):
        cmp_res = 0
        for j in range(d):
            val = gv[hm[i, j]]
            if val < bv[j]:
                cmp_res = -1
                break
            elif val > bv[j]:
                cmp_res = 1
                break
        if cmp_res == -1:
            bv[j] = val
            for j in range(j + 1, d):
                bv[j] = gv[hm[i, j]]
    return best


def wl_refine(indptr, indices, colors):
    cdef Py_ssize_t n = len(colors)
    if n == 0:
        return np.zeros(0, dtype=np.int32), 0
    # normalize to ranks so the counting sort's buckets stay inside
    # [0, n] whatever color values the caller used
    cdef cnp.ndarray[I32, ndim=1] cur = np.unique(colors, return_inverse=True)[1].reshape(n).astype(np.int32)
    cdef cnp.ndarray[I32, ndim=1] nxt = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[I32, ndim=1] order = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[I32, ndim=1] scratch = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t dmax = 0, v, j, i
    cdef const I32[:] ip = indptr
    for v in range(n):
        if ip[v + 1] - ip[v] > dmax:
            dmax = ip[v + 1] - ip[v]
    cdef cnp.ndarray[I32, ndim=2] sig = np.empty((n, dmax + 2), dtype=np.int32)
    cdef I32[:, :] sg = sig
    cdef const I32[:] idx = indices
    cdef I32[:] cv
    cdef I32[:] nv = nxt
    cdef I32[:] od = order
    cdef I32[:] sc = scratch
    cdef I32[:] swapview
    cdef I32[:] cnt
    cdef cnp.ndarray[I32, ndim=1] counts = np.empty(n + 1, dtype=np.int32)
    cdef Py_ssize_t deg, col, ncols
    cdef I32 x, tmp
    cdef int ncells = int(cur.max()) + 1
    cdef int new_ncells, differs
    cdef Py_ssize_t a, b, pos
    ncols = dmax + 2
    while True:
        cv = cur
        # signature rows: [color, sorted neighbor colors, pad -1]
        for v in range(n):
            sg[v, 0] = cv[v]
            deg = ip[v + 1] - ip[v]
            for j in range(deg):
                x = cv[idx[ip[v] + j]]
                i = j
                while i > 0 and sg[v, i] > x:
                    sg[v, i + 1] = sg[v, i]
                    i -= 1
                sg[v, i + 1] = x
            for j in range(deg + 1, ncols):
                sg[v, j] = -1
        # LSD radix sort of rows (counting sort per column, values in [-1, n))
        for v in range(n):
            od[v] = <I32> v
        cnt = counts
        for col in range(ncols - 1, -1, -1):
            for v in range(n + 1):
                cnt[v] = 0
            for v in range(n):
                cnt[sg[od[v], col] + 1] += 1
            pos = 0
            for v in range(n + 1):
                tmp = cnt[v]
                cnt[v] = <I32> pos
                pos += tmp
            for v in range(n):
                x = sg[od[v], col] + 1
                sc[cnt[x]] = od[v]
                cnt[x] += 1
            swapview = od
            od = sc
            sc = swapview
        # rank rows in sorted order
        new_ncells = 0
        nv[od[0]] = 0
        for v in range(1, n):
            a = od[v - 1]
            b = od[v]
            differs = 0
            for col in range(ncols):
                if sg[a, col] != sg[b, col]:
                    differs = 1
                    break
            if differs:
                new_ncells += 1
            nv[b] = <I32> new_ncells
        new_ncells += 1
        if new_ncells == ncells:
            return nxt.copy(), ncells
        cur, nxt = nxt, cur
        nv = nxt
        ncells = new_ncells


def orbit_sv(gens, int start, int degree):
    cdef cnp.ndarray[I32, ndim=1] sv_gen = np.full(degree, -2, dtype=np.int32)
    cdef cnp.ndarray[I32, ndim=1] sv_prev = np.full(degree, -1, dtype=np.int32)
    cdef cnp.ndarray[I32, ndim=1] orbit = np.empty(degree, dtype=np.int32)
    cdef I32[:] sg = sv_gen
    cdef I32[:] sp = sv_prev
    cdef I32[:] ob = orbit
    cdef const I32[:, :] gm = gens
    cdef Py_ssize_t k = gm.shape[0]
    cdef Py_ssize_t head = 0, tail = 1
    cdef Py_ssize_t gi
    cdef I32 x, y
    sg[start] = -1
    ob[0] = start
    while head < tail:
        x = ob[head]
        head += 1
        for gi in range(k):
            y = gm[gi, x]
            if sg[y] == -2:
                sg[y] = <I32> gi
                sp[y] = x
                ob[tail] = y
                tail += 1
    return orbit[:tail].copy(), sv_gen, sv_prev


def orbit_partition(gens, int degree):
    cdef cnp.ndarray[I32, ndim=1] parent = np.arange(degree, dtype=np.int32)
    cdef I32[:] par = parent
    cdef const I32[:, :] gm = gens
    cdef Py_ssize_t k = gm.shape[0]
    cdef Py_ssize_t gi, v
    cdef I32 a, b
    for v in range(degree):
        for gi in range(k):
            a = <I32> v
            while par[a] != a:
                par[a] = par[par[a]]
                a = par[a]
            b = gm[gi, v]
            while par[b] != b:
                par[b] = par[par[b]]
                b = par[b]
            if a < b:
                par[b] = a
            elif b < a:
                par[a] = b
    for v in range(degree):
        a = <I32> v
        while par[a] != a:
            par[a] = par[par[a]]
            a = par[a]
        par[v] = a
    return parent


def perm_order(p):
    cdef Py_ssize_t n = len(p)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[:] sv = seen
    cdef const I32[:] pv = p
    cdef Py_ssize_t s, length
    cdef I32 x
    lengths = []
    for s in range(n):
        if sv[s]:
            continue
        length = 0
        x = <I32> s
        while not sv[x]:
            sv[x] = 1
            x = pv[x]
            length += 1
        lengths.append(length)
    order = 1
    for length in lengths:
        order = math.lcm(order, length)
    return order
