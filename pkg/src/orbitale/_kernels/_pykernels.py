"""Numpy implementations of the hot kernels.

These are the fallback backend; _ckernels.pyx mirrors the same
signatures in C.  All permutations are int32 image arrays: x maps to
p[x].  Degree-d composition "p then q" is q[p].
"""

from __future__ import annotations

import math

import numpy as np


def coset_min_rep(g: np.ndarray, h_mat: np.ndarray) -> np.ndarray:
    """Lexicographically smallest element of the coset H*g.

    g: int32 image array of shape (d,).
    h_mat: int32 matrix (|H|, d), one row per element of H.
    The coset elements are exactly the rows of g[h_mat].
    """
    prod = g[h_mat]
    cand = np.arange(prod.shape[0])
    for col in range(prod.shape[1]):
        vals = prod[cand, col]
        m = vals.min()
        cand = cand[vals == m]
        if len(cand) == 1:
            break
    return np.ascontiguousarray(prod[cand[0]])


def wl_refine(indptr: np.ndarray, indices: np.ndarray, colors: np.ndarray):
    """Coarsest equitable refinement of a vertex coloring.

    Same-colored vertices end up with identical multisets of neighbor
    colors.  New color ids are ranks of (old color, sorted neighbor
    colors), so a stable coloring is a fixed point.
    Returns (colors, cell_count).
    """
    n = len(colors)
    colors = np.asarray(colors, dtype=np.int32)
    ncells = int(colors.max()) + 1 if n else 0
    degrees = np.diff(indptr)
    regular = n > 0 and degrees.min() == degrees.max()
    while True:
        if regular:
            d = int(degrees[0])
            mat = np.sort(colors[indices].reshape(n, d), axis=1)
            rows = np.column_stack([colors, mat])
            _, inverse = np.unique(rows, axis=0, return_inverse=True)
            new = inverse.astype(np.int32)
        else:
            sigs = [
                (int(colors[v]), tuple(sorted(colors[indices[indptr[v]:indptr[v + 1]]].tolist())))
                for v in range(n)
            ]
            rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
            new = np.array([rank[s] for s in sigs], dtype=np.int32)
        new_ncells = int(new.max()) + 1 if n else 0
        if new_ncells == ncells:
            return new, ncells
        colors, ncells = new, new_ncells


def orbit_sv(gens: np.ndarray, start: int, degree: int):
    """BFS orbit of start with a Schreier vector.

    gens: int32 matrix (k, degree).  Returns (orbit in BFS order,
    sv_gen, sv_prev): sv_gen[x] is the generator index reaching x
    (-1 for start, -2 unreached), sv_prev[x] the previous point.
    """
    sv_gen = np.full(degree, -2, dtype=np.int32)
    sv_prev = np.full(degree, -1, dtype=np.int32)
    sv_gen[start] = -1
    orbit = [np.array([start], dtype=np.int32)]
    frontier = orbit[0]
    while len(frontier):
        collected = []
        for gi in range(gens.shape[0]):
            img = gens[gi][frontier]
            fresh = sv_gen[img] == -2
            if not fresh.any():
                continue
            tgt, first = np.unique(img[fresh], return_index=True)
            still = sv_gen[tgt] == -2
            tgt, first = tgt[still], first[still]
            sv_gen[tgt] = gi
            sv_prev[tgt] = frontier[fresh][first]
            collected.append(tgt)
        frontier = np.concatenate(collected) if collected else np.empty(0, dtype=np.int32)
        if len(frontier):
            orbit.append(frontier)
    return np.concatenate(orbit), sv_gen, sv_prev


def orbit_partition(gens: np.ndarray, degree: int) -> np.ndarray:
    """Orbit labels: each point gets the smallest point of its orbit."""
    labels = np.arange(degree, dtype=np.int32)
    while True:
        before = labels.copy()
        for gi in range(gens.shape[0]):
            p = gens[gi]
            np.minimum.at(labels, p, labels)
            labels = np.minimum(labels, labels[p])
        labels = labels[labels]
        if np.array_equal(labels, before):
            return labels


def perm_order(p: np.ndarray) -> int:
    """Order of a permutation (lcm of cycle lengths, exact int)."""
    n = len(p)
    seen = np.zeros(n, dtype=bool)
    order = 1
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = int(p[x])
            length += 1
        order = math.lcm(order, length)
    return order
