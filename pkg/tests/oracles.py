"""Naive reference implementations the test suite checks the package against.

Everything here favors obviousness over speed: tuple-based permutation
arithmetic, breadth-first closures over full element lists, and
factorial-time graph canonicalization for tiny graphs.
"""

from itertools import permutations as _all_perms


def t_compose(p, q):
    """Left-to-right product on image tuples: x -> q(p(x))."""
    return tuple(q[p[x]] for x in range(len(p)))


def t_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def t_identity(degree):
    return tuple(range(degree))


def t_order(p):
    e = t_identity(len(p))
    acc, n = p, 1
    while acc != e:
        acc = t_compose(acc, p)
        n += 1
    return n


def closure(gens, bound=10 ** 6):
    """All products of the generators, breadth first."""
    if not gens:
        raise ValueError("need at least one generator")
    e = t_identity(len(gens[0]))
    seen = {e}
    frontier = [e]
    while frontier:
        fresh = []
        for x in frontier:
            for g in gens:
                w = t_compose(x, g)
                if w not in seen:
                    if len(seen) >= bound:
                        raise ValueError("closure bound exceeded")
                    seen.add(w)
                    fresh.append(w)
        frontier = fresh
    return seen


def subgroups_of_order(elements, m):
    """Every subgroup of order m, as frozensets of image tuples.

    Pool search: start from the cyclic subgroups whose order divides m
    and repeatedly adjoin single elements, keeping any closure whose
    order still divides m.  Lagrange chains make this exhaustive.
    """
    elements = list(elements)
    degree = len(elements[0])
    e = t_identity(degree)

    def bounded_closure(gens):
        seen = {e}
        frontier = [e]
        while frontier:
            fresh = []
            for x in frontier:
                for g in gens:
                    w = t_compose(x, g)
                    if w not in seen:
                        if len(seen) >= m + 1:
                            return None
                        seen.add(w)
                        fresh.append(w)
            frontier = fresh
        return frozenset(seen)

    pool = {}
    queue = []
    for x in elements:
        if t_order(x) == 1 or m % t_order(x):
            continue
        sub = bounded_closure([x])
        if sub is not None and m % len(sub) == 0 and sub not in pool:
            pool[sub] = [x]
            queue.append(sub)
    while queue:
        sub = queue.pop()
        gens = pool[sub]
        for x in elements:
            if x in sub:
                continue
            grown = bounded_closure(gens + [x])
            if grown is None or m % len(grown):
                continue
            if grown not in pool:
                pool[grown] = gens + [x]
                queue.append(grown)
    return {sub for sub in pool if len(sub) == m}


def conjugate_subgroup(sub, g):
    g_inv = t_inverse(g)
    return frozenset(t_compose(t_compose(g_inv, h), g) for h in sub)


def orbit_of_point(gens, point):
    seen = {point}
    frontier = [point]
    while frontier:
        fresh = []
        for x in frontier:
            for g in gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    fresh.append(y)
        frontier = fresh
    return seen


def canonical_edges(n, edges):
    """Lexicographically least edge set over all relabelings; n <= 8."""
    best = None
    edge_set = {frozenset(e) for e in edges}
    for relab in _all_perms(range(n)):
        img = sorted(tuple(sorted((relab[u], relab[v]))) for u, v in edge_set)
        if best is None or img < best:
            best = img
    return tuple(best)


def brute_automorphisms(n, edges):
    """All adjacency-preserving relabelings; n <= 8."""
    edge_set = {frozenset(e) for e in edges}
    out = []
    for relab in _all_perms(range(n)):
        if all(frozenset((relab[u], relab[v])) in edge_set for u, v in edge_set):
            out.append(relab)
    return out
