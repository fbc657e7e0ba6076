"""Permutation groups: arithmetic, stabilizer chains, subgroup search, coset actions.

Conventions: permutations are image arrays on {0..d-1} acting on the
right (x^g = images[x]); composition is left-to-right, so compose(p, q)
maps x to q(p(x)).  Hot loops work on raw int32 arrays; the Permutation
class is the API-level wrapper.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence

import numpy as np

from ._kernels import coset_min_rep, orbit_partition, orbit_sv
from ._kernels import perm_order as _order_kernel

_COSET_CEILING = 10 ** 6
_SUBGROUP_ENUM_BOUND = 20000


def _as_image_array(images: Iterable[int]) -> np.ndarray:
    arr = np.asarray(images, dtype=np.int32)
    if arr.ndim != 1 or len(arr) < 1:
        raise ValueError("permutation needs a 1-d image sequence of length >= 1")
    if not np.array_equal(np.sort(arr), np.arange(len(arr), dtype=np.int32)):
        raise ValueError("images are not a bijection on 0..d-1")
    arr.setflags(write=False)
    return arr


def _identity_array(degree: int) -> np.ndarray:
    return np.arange(degree, dtype=np.int32)


def _compose_arrays(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """x -> q(p(x))."""
    return q[p]


def _invert_array(p: np.ndarray) -> np.ndarray:
    return np.argsort(p).astype(np.int32)


class Permutation:
    """Bijection on {0..d-1} stored as an image array."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        object.__setattr__(self, "images", _as_image_array(images))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        arr = _identity_array(degree).copy()
        for cyc in cycles:
            for i, x in enumerate(cyc):
                arr[x] = cyc[(i + 1) % len(cyc)]
        return cls(arr)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return int(self.images[point])

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(_compose_arrays(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(_invert_array(self.images))

    def order(self) -> int:
        return _order_kernel(np.ascontiguousarray(self.images))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, _identity_array(self.degree)))

    def cycles(self) -> List[List[int]]:
        """Nontrivial cycles, each rotated to start at its smallest point."""
        out = []
        seen = [False] * self.degree
        for s in range(self.degree):
            if seen[s] or self.images[s] == s:
                seen[s] = True
                continue
            cyc = []
            x = s
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = int(self.images[x])
            out.append(cyc)
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def serialize(self) -> dict:
        return {
            "degree": self.degree,
            "images": self.images.tolist(),
            "cycles": self.cycle_string(),
        }

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.images, other.images)

    def __hash__(self) -> int:
        return hash(self.images.tobytes())

    def __repr__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return f"Permutation(identity, degree={self.degree})"
        text = "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)
        return f"Permutation({text}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Left-to-right product: x -> q(p(x))."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


@dataclass
class _ChainLevel:
    point: int
    gens: List[np.ndarray] = field(default_factory=list)
    gen_invs: List[np.ndarray] = field(default_factory=list)
    orbit: Optional[np.ndarray] = None
    sv_gen: Optional[np.ndarray] = None
    sv_prev: Optional[np.ndarray] = None

    def add_gen(self, arr: np.ndarray) -> None:
        self.gens.append(arr)
        self.gen_invs.append(_invert_array(arr))
        self.orbit = None

    def recompute(self, degree: int) -> None:
        if self.gens:
            mat = np.vstack(self.gens)
        else:
            mat = _identity_array(degree).reshape(1, -1)
        self.orbit, self.sv_gen, self.sv_prev = orbit_sv(mat, self.point, degree)

    def transversal(self, point: int, degree: int) -> np.ndarray:
        """Element u with self.point^u = point, composed along the Schreier tree."""
        word = []
        x = point
        while self.sv_gen[x] != -1:
            word.append(int(self.sv_gen[x]))
            x = int(self.sv_prev[x])
        u = _identity_array(degree)
        for gi in reversed(word):
            u = _compose_arrays(u, self.gens[gi])
        return u

    def strip_point(self, arr: np.ndarray, degree: int) -> np.ndarray:
        """Return arr * u^-1 where u is the transversal to arr's image of the base point."""
        x = int(arr[self.point])
        out = arr
        while self.sv_gen[x] != -1:
            gi = int(self.sv_gen[x])
            out = _compose_arrays(out, self.gen_invs[gi])
            x = int(self.sv_prev[x])
        return out


class StabilizerChain:
    """Deterministic BSGS: base points, strong generators, Schreier vectors."""

    def __init__(self, degree: int, levels: List[_ChainLevel]):
        self.degree = degree
        self.levels = levels
        self.base = [lv.point for lv in levels]
        self.order = 1
        for lv in levels:
            self.order *= len(lv.orbit)

    def sift(self, arr: np.ndarray):
        """Strip arr through the chain; returns (residue, levels_passed)."""
        out = arr
        for i, lv in enumerate(self.levels):
            if lv.sv_gen[int(out[lv.point])] == -2:
                return out, i
            out = lv.strip_point(out, self.degree)
        return out, len(self.levels)

    def contains(self, arr: np.ndarray) -> bool:
        residue, _ = self.sift(arr)
        return bool(np.array_equal(residue, _identity_array(self.degree)))

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        """Uniform element via one transversal choice per level."""
        out = _identity_array(self.degree)
        for lv in reversed(self.levels):
            point = int(lv.orbit[rng.integers(len(lv.orbit))])
            out = _compose_arrays(out, lv.transversal(point, self.degree))
        return out


def _dedup_arrays(arrays: Iterable[np.ndarray]) -> List[np.ndarray]:
    seen = set()
    out = []
    for a in arrays:
        key = a.tobytes()
        if key not in seen:
            seen.add(key)
            out.append(a)
    return out


def _build_chain_from_arrays(
    gen_arrays: List[np.ndarray], degree: int, base_hint: Optional[List[int]] = None
) -> StabilizerChain:
    ident = _identity_array(degree)
    gens = [g for g in _dedup_arrays(gen_arrays) if not np.array_equal(g, ident)]
    levels: List[_ChainLevel] = [_ChainLevel(p) for p in (base_hint or [])]

    def first_moved(arr: np.ndarray) -> int:
        return int(np.flatnonzero(arr != ident)[0])

    def place(arr: np.ndarray) -> int:
        """Add arr as a strong generator at every level it fixes the prefix of."""
        lvl = 0
        while lvl < len(levels) and arr[levels[lvl].point] == levels[lvl].point:
            lvl += 1
        if lvl == len(levels):
            levels.append(_ChainLevel(first_moved(arr)))
        for i in range(lvl + 1):
            levels[i].add_gen(arr)
        return lvl

    for g in gens:
        place(g)
    if not levels:
        return StabilizerChain(degree, [])
    for lv in levels:
        lv.recompute(degree)

    def sift_from(arr: np.ndarray, start: int):
        out = arr
        for i in range(start, len(levels)):
            lv = levels[i]
            x = int(out[lv.point])
            if lv.sv_gen[x] == -2:
                return out, i
            out = lv.strip_point(out, degree)
        return out, len(levels)

    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        if lv.orbit is None:
            lv.recompute(degree)
        restart = False
        for x in lv.orbit.tolist():
            u_x = lv.transversal(x, degree)
            for g in lv.gens:
                s = lv.strip_point(_compose_arrays(u_x, g), degree)
                if np.array_equal(s, ident):
                    continue
                residue, j = sift_from(s, i + 1)
                if np.array_equal(residue, ident):
                    continue
                if j == len(levels):
                    levels.append(_ChainLevel(first_moved(residue)))
                for l in range(i + 1, j + 1):
                    levels[l].add_gen(residue)
                    levels[l].recompute(degree)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    for lv in levels:
        if lv.orbit is None:
            lv.recompute(degree)
    return StabilizerChain(degree, levels)


class PermGroup:
    """Finitely generated permutation group with a lazily built chain."""

    def __init__(self, generators: Sequence[Permutation], degree: Optional[int] = None):
        gens = list(generators)
        if not gens:
            if degree is None:
                raise ValueError("empty generator list needs an explicit degree")
            gens = [Permutation.identity(degree)]
        if degree is None:
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators have mixed degrees")
        self.degree = degree
        self.generators = gens
        self._gen_arrays = [g.images for g in gens]
        self._chain: Optional[StabilizerChain] = None
        self._elements: Optional[List[np.ndarray]] = None

    @classmethod
    def from_arrays(cls, arrays: Sequence[np.ndarray], degree: int) -> "PermGroup":
        return cls([Permutation(a) for a in arrays] or [Permutation.identity(degree)], degree)

    @property
    def gen_arrays(self) -> List[np.ndarray]:
        return self._gen_arrays

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = _build_chain_from_arrays(self._gen_arrays, self.degree)
        return self._chain

    def set_chain(self, chain: StabilizerChain) -> None:
        """Install a pre-assembled chain; every generator must sift to identity."""
        for g in self._gen_arrays:
            if not chain.contains(g):
                raise RuntimeError("pre-assembled chain rejects a generator")
        self._chain = chain

    def order(self) -> int:
        return self.chain.order

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise ValueError("degree mismatch")
        return self.chain.contains(p.images)

    def elements(self, bound: int = _SUBGROUP_ENUM_BOUND) -> List[np.ndarray]:
        """All element arrays by breadth-first closure (deterministic order)."""
        if self._elements is None:
            self._elements = _closure_arrays(self._gen_arrays, self.degree, bound)
        return self._elements

    def element_permutations(self, bound: int = _SUBGROUP_ENUM_BOUND) -> List[Permutation]:
        return [Permutation(a) for a in self.elements(bound)]

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        return self.chain.random_element(rng)

    def serialize(self) -> dict:
        return {"degree": self.degree, "generators": [g.images.tolist() for g in self.generators]}

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


def _closure_arrays(gen_arrays: List[np.ndarray], degree: int, bound: int) -> List[np.ndarray]:
    ident = _identity_array(degree)
    elems = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for e in frontier:
            for g in gen_arrays:
                w = _compose_arrays(e, g)
                key = w.tobytes()
                if key not in elems:
                    if len(elems) >= bound:
                        raise ValueError(f"closure exceeded bound {bound}")
                    elems[key] = w
                    fresh.append(w)
        frontier = fresh
    return list(elems.values())


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


def orbit(group: PermGroup, point: int) -> set:
    """Smallest generator-closed set of points containing point."""
    if not 0 <= point < group.degree:
        raise ValueError("point out of range")
    mat = np.vstack(group.gen_arrays)
    orb, _, _ = orbit_sv(mat, point, group.degree)
    return set(orb.tolist())


def build_chain(group: PermGroup) -> StabilizerChain:
    """Deterministic Schreier-Sims chain (smallest non-fixed base points)."""
    return group.chain


def point_stabilizer(group: PermGroup, point: int) -> PermGroup:
    """Full stabilizer of a point, with its chain reused from a rebased parent chain."""
    if not 0 <= point < group.degree:
        raise ValueError("point out of range")
    if group._chain is not None and group._chain.levels and group._chain.levels[0].point == point:
        chain = group._chain
    else:
        chain = _build_chain_from_arrays(group.gen_arrays, group.degree, base_hint=[point])
    stab_arrays = list(chain.levels[1].gens) if len(chain.levels) > 1 else []
    sub = PermGroup.from_arrays(stab_arrays, group.degree)
    sub._chain = StabilizerChain(group.degree, chain.levels[1:])
    return sub


def is_semiregular(group: PermGroup, domain_size: int) -> bool:
    """True iff every orbit has size |G| (all point stabilizers trivial)."""
    if group.degree != domain_size:
        raise ValueError("degree mismatch")
    mat = np.vstack(group.gen_arrays)
    labels = orbit_partition(mat, domain_size)
    _, counts = np.unique(labels, return_counts=True)
    order = group.order()
    return bool((counts == order).all())


@dataclass(frozen=True)
class GroupKind:
    """Isomorphism-type tag for small groups (Lemma-table vocabulary)."""

    tag: str
    order: int

    def __str__(self) -> str:
        return self.tag


def _element_order_census(elems: List[np.ndarray]) -> dict:
    census: dict = {}
    for e in elems:
        o = _order_kernel(np.ascontiguousarray(e))
        census[o] = census.get(o, 0) + 1
    return census


def _derived_subgroup_order(group: PermGroup) -> int:
    """Order of the normal closure of the generator-pair commutators."""
    degree = group.degree
    gens = group.gen_arrays
    gen_invs = [_invert_array(g) for g in gens]
    seeds = []
    for gi, gi_inv in zip(gens, gen_invs):
        for gj, gj_inv in zip(gens, gen_invs):
            seeds.append(
                _compose_arrays(_compose_arrays(gj_inv, gi_inv), _compose_arrays(gj, gi))
            )
    seeds = _dedup_arrays(seeds)
    elems = _closure_arrays(seeds, degree, _SUBGROUP_ENUM_BOUND)
    while True:
        have = {e.tobytes() for e in elems}
        fresh = []
        for e in elems:
            for g, g_inv in zip(gens, gen_invs):
                c = _compose_arrays(_compose_arrays(g_inv, e), g)
                if c.tobytes() not in have:
                    fresh.append(c)
        if not fresh:
            return len(elems)
        seeds = _dedup_arrays(seeds + fresh)
        elems = _closure_arrays(seeds, degree, _SUBGROUP_ENUM_BOUND)


def recognize_small_group(group: PermGroup) -> GroupKind:
    """Isomorphism-type tag via order, structure flags and element-order census."""
    n = group.order()
    if n > 240:
        raise ValueError("recognize_small_group supports |G| <= 240 only")
    elems = group.elements(bound=241)
    census = _element_order_census(elems)
    involutions = census.get(2, 0)
    abelian = all(
        np.array_equal(_compose_arrays(a, b), _compose_arrays(b, a))
        for i, a in enumerate(group.gen_arrays)
        for b in group.gen_arrays[i + 1:]
    )
    cyclic = census.get(n, 0) > 0
    derived = 1 if abelian else _derived_subgroup_order(group)

    def kind(tag: str) -> GroupKind:
        return GroupKind(tag, n)

    if n == 1:
        return kind("Other(1)")
    if n == 2:
        return kind("Z2")
    if n == 4:
        return kind("Z4") if cyclic else kind("Z2xZ2")
    if n == 5:
        return kind("Z5")
    if n == 10 and involutions == 5:
        return kind("D10")
    if n == 20:
        if involutions == 11:
            return kind("D20")
        if involutions == 5 and derived == 5:
            return kind("F20")
    if n == 40 and involutions == 11 and derived == 5 and census.get(4, 0) == 20:
        return kind("F20xZ2")
    if n == 80 and involutions == 11 and derived == 5 and census.get(4, 0) == 52:
        return kind("F20xZ4")
    if n == 60 and derived == 60:
        return kind("A5")
    if n == 120 and derived == 60 and involutions == 25:
        return kind("S5")
    if cyclic:
        return kind(f"Cyclic({n})")
    if n % 2 == 0 and _is_dihedral(elems, census, n):
        return kind(f"Dihedral({n})")
    return kind(f"Other({n})")


def _is_dihedral(elems: List[np.ndarray], census: dict, n: int) -> bool:
    m = n // 2
    if m < 3 or census.get(m, 0) == 0:
        return False
    rotation = next(e for e in elems if _order_kernel(np.ascontiguousarray(e)) == m)
    rot_inv = _invert_array(rotation)
    powers = {}
    acc = _identity_array(len(rotation))
    for _ in range(m):
        powers[acc.tobytes()] = True
        acc = _compose_arrays(acc, rotation)
    for b in elems:
        if b.tobytes() in powers:
            continue
        if _order_kernel(np.ascontiguousarray(b)) != 2:
            return False
        conj = _compose_arrays(_compose_arrays(_invert_array(b), rotation), b)
        if not np.array_equal(conj, rot_inv):
            return False
    return True


# ---------------------------------------------------------------------------
# subgroup search


def _subgroup_key(elem_arrays: List[np.ndarray]) -> str:
    rows = sorted(a.tobytes() for a in elem_arrays)
    h = hashlib.sha256()
    for r in rows:
        h.update(r)
    return h.hexdigest()


def _bounded_closure(gen_arrays: List[np.ndarray], degree: int, bound: int):
    """Closure but None when it exceeds bound (instead of raising)."""
    ident = _identity_array(degree)
    elems = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for e in frontier:
            for g in gen_arrays:
                w = _compose_arrays(e, g)
                key = w.tobytes()
                if key not in elems:
                    if len(elems) >= bound:
                        return None
                    elems[key] = w
                    fresh.append(w)
        frontier = fresh
    return list(elems.values())


def _conjugate_matrix(mat: np.ndarray, g: np.ndarray, g_inv: np.ndarray) -> np.ndarray:
    """Row-wise conjugation h -> g^-1 h g for image-array rows."""
    return g[mat[:, g_inv]]


def _sort_rows(mat: np.ndarray) -> np.ndarray:
    mat = np.ascontiguousarray(mat, dtype=np.int32)
    view = mat.view([("r", f"V{mat.shape[1] * 4}")]).ravel()
    return mat[np.argsort(view, kind="stable")]


def _sorted_subgroup_matrix(elem_arrays: List[np.ndarray]) -> np.ndarray:
    return _sort_rows(np.vstack(elem_arrays))


def _matrix_key(mat_sorted: np.ndarray) -> str:
    return hashlib.sha256(mat_sorted.tobytes()).hexdigest()


class _SubgroupOrbit:
    """Conjugation orbit of a subgroup: keys, transversal, normalizer elements."""

    def __init__(self, group: PermGroup, sub_elems: List[np.ndarray], node_bound: int = 50000):
        degree = group.degree
        base_mat = _sorted_subgroup_matrix(sub_elems)
        self.base_mat = base_mat
        self.start_key = _matrix_key(base_mat)
        gen_arrs = group.gen_arrays
        gen_invs = [_invert_array(g) for g in gen_arrs]
        ident = _identity_array(degree)
        self.key_to_index = {self.start_key: 0}
        transversal = [ident]
        schreier: List[np.ndarray] = []
        head = 0
        while head < len(transversal):
            u = transversal[head]
            u_inv = _invert_array(u)
            mat_here = _conjugate_matrix(base_mat, u, u_inv) if head else base_mat
            for g, g_inv in zip(gen_arrs, gen_invs):
                conj = _conjugate_matrix(mat_here, g, g_inv)
                key = _matrix_key(_sort_rows(conj))
                j = self.key_to_index.get(key)
                if j is None:
                    if len(transversal) >= node_bound:
                        raise ValueError("subgroup conjugation orbit exceeded bound")
                    self.key_to_index[key] = len(transversal)
                    transversal.append(_compose_arrays(u, g))
                else:
                    # u*g and transversal[j] reach the same conjugate: Schreier generator
                    s = _compose_arrays(_compose_arrays(u, g), _invert_array(transversal[j]))
                    schreier.append(s)
            head += 1
        self.transversal = transversal
        self.length = len(transversal)
        group_order = group.order()
        if group_order % self.length:
            raise RuntimeError("orbit length does not divide group order")
        self.normalizer_order = group_order // self.length
        self._schreier = schreier
        self._sub_elems = sub_elems
        self._degree = degree
        self._norm_elems: Optional[List[np.ndarray]] = None

    def normalizer_elements(self, bound: int = _SUBGROUP_ENUM_BOUND) -> List[np.ndarray]:
        """Elements of N_G(sub), grown from Schreier generators until the known order."""
        if self._norm_elems is not None:
            return self._norm_elems
        if self.normalizer_order > bound:
            raise ValueError("normalizer too large to enumerate")
        gens = list(self._sub_elems)
        elems = _closure_arrays(_dedup_arrays(gens), self._degree, bound)
        have = {e.tobytes() for e in elems}
        for s in self._schreier:
            if len(elems) >= self.normalizer_order:
                break
            if s.tobytes() in have:
                continue
            gens.append(s)
            elems = _closure_arrays(_dedup_arrays(gens), self._degree, bound)
            have = {e.tobytes() for e in elems}
        if len(elems) != self.normalizer_order:
            raise RuntimeError("normalizer reconstruction fell short")
        elems.sort(key=lambda a: a.tobytes())
        self._norm_elems = elems
        return elems

    def conjugate_mat(self, index: int) -> np.ndarray:
        u = self.transversal[index]
        return _conjugate_matrix(self.base_mat, u, _invert_array(u))


def _random_order5_element(group: PermGroup, rng: np.random.Generator) -> np.ndarray:
    """Element of order 5 via the power trick on chain-uniform samples."""
    for _ in range(4000):
        w = group.random_element(rng)
        o = _order_kernel(np.ascontiguousarray(w))
        if o % 5 == 0:
            e = w
            for _ in range(o // 5 - 1):
                e = _compose_arrays(e, w)
            if _order_kernel(np.ascontiguousarray(e)) == 5:
                return e
    raise RuntimeError("no element of order 5 found (is 5 a divisor of |G|?)")


def _sylow5_containing(group: PermGroup, a: np.ndarray) -> List[np.ndarray]:
    """Element list of a Sylow-5 subgroup containing <a>; 5-part must be 5 or 25."""
    order = group.order()
    part = 1
    while order % 5 == 0:
        part *= 5
        order //= 5
    if part > 25:
        raise ValueError("unsupported: |G| divisible by 125")
    current = _closure_arrays([a], group.degree, 30)
    if len(current) == part:
        return current
    # grow inside the normalizer: a non-Sylow 5-group is properly contained
    # in a 5-subgroup of its normalizer
    orbit_data = _SubgroupOrbit(group, current)
    for x in orbit_data.normalizer_elements():
        if _order_kernel(np.ascontiguousarray(x)) != 5:
            continue
        cand = _bounded_closure([a, x], group.degree, part + 1)
        if cand is not None and len(cand) == part:
            return cand
    raise RuntimeError("Sylow-5 growth failed")


def _line_subgroups_z5(sylow_elems: List[np.ndarray], degree: int) -> List[List[np.ndarray]]:
    """The order-5 subgroups of an elementary-abelian 5-group."""
    seen = {}
    for e in sylow_elems:
        if _order_kernel(np.ascontiguousarray(e)) != 5:
            continue
        line = _closure_arrays([e], degree, 6)
        key = _subgroup_key(line)
        if key not in seen:
            seen[key] = line
    return [seen[k] for k in sorted(seen)]


def find_subgroups_of_order(group: PermGroup, m: int, seed: int) -> List[PermGroup]:
    """Subgroups of order m (5 | m, m <= 120), complete up to G-conjugacy.

    Anchored at one Z5 per conjugacy class (lines of a Sylow-5), grown
    two ways: inside the Z5's normalizer (covers every H with a normal
    Sylow-5), and from pairs of conjugate Z5s plus one normalizer
    extension (covers every H with more than one Sylow-5).
    """
    order = group.order()
    if m > 120:
        raise ValueError("unsupported: subgroup search capped at order 120")
    if m % 5:
        raise ValueError("m must be a multiple of 5")
    if m % 25 == 0:
        raise ValueError("unsupported: m divisible by 25")
    if order % m:
        raise ValueError("m must divide |G|")

    rng = np.random.default_rng(seed)
    degree = group.degree
    a = _random_order5_element(group, rng)
    sylow = _sylow5_containing(group, a)
    anchors = _line_subgroups_z5(sylow, degree) if len(sylow) == 25 else [
        _closure_arrays([a], degree, 6)
    ]

    emitted: dict = {}
    pool_seen: set = set()
    anchor_orbit_keys: List[set] = []
    anchor_orbits: List[_SubgroupOrbit] = []

    for line in anchors:
        key = _subgroup_key(line)
        if any(key in got for got in anchor_orbit_keys):
            continue
        orb = _SubgroupOrbit(group, line)
        anchor_orbit_keys.append(set(orb.key_to_index))
        anchor_orbits.append(orb)

    def consider(elem_list: List[np.ndarray]) -> None:
        if len(elem_list) == m:
            key = _subgroup_key(elem_list)
            if key not in emitted:
                emitted[key] = elem_list

    for orb in anchor_orbits:
        p_elems = sorted((r for r in orb.base_mat), key=lambda r: r.tobytes())
        p_gens = [e for e in p_elems if not np.array_equal(e, _identity_array(degree))][:1]

        # route 1: grow inside N(P); complete for H with P normal in H
        norm = orb.normalizer_elements()
        pool = {_subgroup_key(p_elems): p_elems}
        queue = [p_elems]
        consider(p_elems)
        while queue:
            d_elems = queue.pop(0)
            d_key_set = {e.tobytes() for e in d_elems}
            for x in norm:
                if x.tobytes() in d_key_set:
                    continue
                grown = _bounded_closure(d_elems + [x], degree, m + 1)
                if grown is None or m % len(grown):
                    continue
                key = _subgroup_key(grown)
                if key in pool:
                    continue
                pool[key] = grown
                queue.append(grown)
                consider(grown)

        # route 2: pairs of conjugate Z5s, then one normalizer extension;
        # complete for H with more than one Sylow-5 (the pair reaches a
        # subgroup of index <= 2 generated by Sylow-5s)
        pair_pool: dict = {}
        for idx in range(orb.length):
            q_mat = orb.conjugate_mat(idx)
            q_gen = None
            for row in q_mat:
                if not np.array_equal(row, _identity_array(degree)):
                    q_gen = row.copy()
                    break
            if q_gen is None:
                continue
            grown = _bounded_closure(p_gens + [q_gen], degree, m + 1)
            if grown is None or m % len(grown):
                continue
            consider(grown)
            if len(grown) < m and len(grown) > 5:
                key = _subgroup_key(grown)
                if key not in pair_pool:
                    pair_pool[key] = grown
        for d_elems in pair_pool.values():
            try:
                d_orb = _SubgroupOrbit(group, d_elems)
                norm_d = d_orb.normalizer_elements()
            except ValueError:
                continue
            d_key_set = {e.tobytes() for e in d_elems}
            for t in norm_d:
                if t.tobytes() in d_key_set:
                    continue
                grown = _bounded_closure(d_elems + [t], degree, m + 1)
                if grown is not None and len(grown) == m:
                    consider(grown)

    out = []
    for key in sorted(emitted):
        elems = emitted[key]
        gens = _minimal_generators(elems, degree)
        sub = PermGroup.from_arrays(gens, degree)
        sub._elements = sorted(elems, key=lambda e: e.tobytes())
        out.append(sub)
    return out


def _minimal_generators(elems: List[np.ndarray], degree: int) -> List[np.ndarray]:
    """Small generating set picked greedily from a full element list."""
    target = len(elems)
    ident = _identity_array(degree)
    ordered = sorted(elems, key=lambda e: e.tobytes())
    gens: List[np.ndarray] = []
    covered = {ident.tobytes()}
    for e in ordered:
        if e.tobytes() in covered:
            continue
        gens.append(e)
        covered = {x.tobytes() for x in _closure_arrays(gens, degree, target + 1)}
        if len(covered) == target:
            return gens
    return gens if gens else [ident]


# ---------------------------------------------------------------------------
# coset actions


@dataclass
class Suborbit:
    points: np.ndarray
    length: int
    suborbit_id: int
    paired_with: int
    self_paired: bool


class CosetAction:
    """Right action of G on the cosets of H, with canonical representatives."""

    def __init__(self, group: PermGroup, sub: PermGroup, ceiling: int = _COSET_CEILING):
        if sub.degree != group.degree:
            raise ValueError("degree mismatch")
        for g in sub.generators:
            if not group.contains(g):
                raise ValueError("sub is not a subgroup: generator fails membership")
        degree = group.degree
        h_elems = sub.elements()
        self.h_mat = _sorted_subgroup_matrix(h_elems)
        h_order = len(h_elems)
        g_order = group.order()
        if g_order % h_order:
            raise RuntimeError("subgroup order does not divide group order")
        index = g_order // h_order
        if index > ceiling:
            raise ValueError(f"coset index {index} exceeds ceiling {ceiling}")

        reps: List[np.ndarray] = [coset_min_rep(_identity_array(degree), self.h_mat)]
        key_to_index = {reps[0].tobytes(): 0}
        action_cols = [np.empty(index, dtype=np.int32) for _ in group.gen_arrays]
        head = 0
        while head < len(reps):
            r = reps[head]
            for gi, g in enumerate(group.gen_arrays):
                w = coset_min_rep(_compose_arrays(r, g), self.h_mat)
                key = w.tobytes()
                j = key_to_index.get(key)
                if j is None:
                    j = len(reps)
                    if j >= index:
                        raise RuntimeError("coset walk produced too many cosets")
                    key_to_index[key] = j
                    reps.append(w)
                action_cols[gi][head] = j
            head += 1
        if len(reps) != index:
            raise RuntimeError("coset walk did not reach every coset")

        self.parent = group
        self.stabilizer = sub
        self.degree = index
        self._key_to_index = key_to_index
        self.transversal = np.vstack(reps)
        self.action_generators = [Permutation(col) for col in action_cols]
        self._action_arrays = [p.images for p in self.action_generators]

        h_image_arrays = _dedup_arrays(self._apply_raw(h) for h in sub.gen_arrays)
        self.h_image = PermGroup.from_arrays(h_image_arrays, index)
        image_order = index * self.h_image.order()
        self.kernel_order = (h_order * index) // image_order
        self.image = PermGroup.from_arrays([p.images for p in self.action_generators], index)
        self.image.set_chain(self._assemble_image_chain())

    def _apply_raw(self, elem: np.ndarray) -> np.ndarray:
        out = np.empty(self.degree, dtype=np.int32)
        for i in range(self.degree):
            out[i] = self._key_to_index[
                coset_min_rep(_compose_arrays(self.transversal[i], elem), self.h_mat).tobytes()
            ]
        return out

    def apply(self, elem: Permutation) -> Permutation:
        """Image of a parent-group element in the coset action."""
        return Permutation(self._apply_raw(elem.images))

    def coset_index(self, elem: np.ndarray) -> int:
        return self._key_to_index[coset_min_rep(elem, self.h_mat).tobytes()]

    def same_coset(self, r: np.ndarray, s: np.ndarray) -> bool:
        """Coset equality as r * s^-1 membership in H, via H's chain."""
        return self.stabilizer.chain.contains(_compose_arrays(r, _invert_array(s)))

    def _assemble_image_chain(self) -> StabilizerChain:
        """Level 0 = the full coset orbit; deeper levels = the chain of H's image."""
        index = self.degree
        level0 = _ChainLevel(0)
        level0.gens = list(self._action_arrays)
        level0.gen_invs = [_invert_array(g) for g in self._action_arrays]
        mat = np.vstack(level0.gens)
        level0.orbit, level0.sv_gen, level0.sv_prev = orbit_sv(mat, 0, index)
        if len(level0.orbit) != index:
            raise RuntimeError("coset action is not transitive")
        sub_chain = self.h_image.chain
        levels = [level0] + list(sub_chain.levels)
        chain = StabilizerChain(index, levels)
        if chain.order != index * self.h_image.order():
            raise RuntimeError("image chain order mismatch")
        return chain


def coset_action(group: PermGroup, sub: PermGroup, ceiling: int = _COSET_CEILING) -> CosetAction:
    """Action of group on the right cosets of sub (coset 0 is sub itself)."""
    return CosetAction(group, sub, ceiling)


def suborbits(action: CosetAction) -> List[Suborbit]:
    """Orbits of H on coset indices, with inversion pairing."""
    index = action.degree
    h_arrays = action.h_image.gen_arrays
    mat = np.vstack(h_arrays)
    labels = orbit_partition(mat, index)
    roots = np.unique(labels)
    id_of_root = {int(r): i for i, r in enumerate(roots.tolist())}
    out = []
    for i, root in enumerate(roots.tolist()):
        points = np.flatnonzero(labels == root).astype(np.int32)
        rep = action.transversal[int(points[0])]
        paired_point = action.coset_index(_invert_array(rep))
        paired_id = id_of_root[int(labels[paired_point])]
        out.append(
            Suborbit(
                points=points,
                length=len(points),
                suborbit_id=i,
                paired_with=paired_id,
                self_paired=paired_id == i,
            )
        )
    for sub in out:
        if out[sub.paired_with].paired_with != sub.suborbit_id:
            raise RuntimeError("suborbit pairing is not an involution")
    if out[id_of_root[int(labels[0])]].length != 1:
        raise RuntimeError("suborbit of coset 0 must be trivial")
    return out
