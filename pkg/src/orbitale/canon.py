"""Canonical labeling and automorphism groups for sparse graphs.

The engine is individualization-refinement: refine a vertex coloring to
its coarsest equitable form, pick the first largest non-singleton cell,
and branch on its vertices in index order.  Leaves are discrete
colorings read as relabelings; the canonical form is the least
(invariant path, relabeled graph6 bytes) over the pruned tree, so equal
bytes characterize isomorphism.  Two prunings keep the tree small while
preserving both the minimum and automorphism completeness: branches
automorphic to an explored sibling are skipped, and subtrees whose
invariant path can neither beat the best leaf nor mirror the first leaf
are cut.

Known automorphisms (for instance the group a coset construction acts
by) can be seeded to collapse the top of the tree; they are verified
before use and never change the resulting canonical bytes.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ._kernels import orbit_partition, wl_refine
from .graphcore import Graph, _is_automorphism, _pack_graph6, encode_graph6, graph_from_edges
from .permcore import PermGroup, Permutation


class Coloring:
    """Ordered vertex partition: color_of maps each vertex to a cell id,
    ids contiguous from 0; cells[i] lists cell i's vertices sorted."""

    __slots__ = ("color_of", "cells")

    def __init__(self, color_of: Sequence[int]):
        arr = np.ascontiguousarray(color_of, dtype=np.int32)
        if arr.ndim != 1:
            raise ValueError("color_of must be one-dimensional")
        if arr.size:
            k = int(arr.max()) + 1
            if arr.min() < 0 or np.unique(arr).size != k:
                raise ValueError("colors must be contiguous from 0")
        else:
            k = 0
        arr.setflags(write=False)
        order = np.argsort(arr, kind="stable")
        bounds = np.nonzero(np.diff(arr[order]))[0] + 1
        cells = tuple(np.split(order.astype(np.int32), bounds))
        object.__setattr__(self, "color_of", arr)
        object.__setattr__(self, "cells", cells)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("Coloring is immutable")

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return np.array_equal(self.color_of, other.color_of)


def uniform_coloring(vertex_count: int) -> Coloring:
    return Coloring(np.zeros(vertex_count, dtype=np.int32))


def refine(graph: Graph, initial: Coloring) -> Coloring:
    """Coarsest equitable refinement: same-colored vertices get equal
    multisets of neighbor colors.  Stable colorings are fixed points."""
    if initial.color_of.size != graph.vertex_count:
        raise ValueError("coloring size must equal the vertex count")
    colors, _ = wl_refine(graph.indptr, graph.indices, initial.color_of)
    return Coloring(colors)


@dataclass(frozen=True)
class CanonicalForm:
    """graph6 bytes of the canonically relabeled graph, plus one
    relabeling that achieves them."""

    bytes: bytes
    relabeling: Permutation


class IsoResult(NamedTuple):
    isomorphic: bool
    witness: Optional[Permutation]

    def __bool__(self) -> bool:
        return self.isomorphic


class NodeBudgetExceeded(RuntimeError):
    """IR search ran past its node budget; partial_group collects the
    automorphisms found before giving up."""

    def __init__(self, partial_group: PermGroup):
        super().__init__("node budget exceeded before the search completed")
        self.partial_group = partial_group


class _Leaf(NamedTuple):
    inv_path: Tuple[bytes, ...]
    blob: bytes
    labeling: np.ndarray


class _Search:
    def __init__(self, graph: Graph, seed_arrays: List[np.ndarray], budget: Optional[int]):
        self.graph = graph
        self.n = graph.vertex_count
        self.gens: List[np.ndarray] = list(seed_arrays)
        self.seen_keys = {a.tobytes() for a in self.gens}
        self.discovered: List[np.ndarray] = []
        self.budget = budget
        self.nodes = 0
        self.first: Optional[_Leaf] = None
        self.best: Optional[_Leaf] = None
        self._edges = graph.edge_array()

    # -- node machinery

    def _refined(self, colors: np.ndarray) -> Tuple[np.ndarray, int, bytes]:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise NodeBudgetExceeded(PermGroup.from_arrays(self.discovered, self.n))
        colors, ncells = wl_refine(self.graph.indptr, self.graph.indices, colors)
        return colors, ncells, self._digest(colors, ncells)

    def _digest(self, colors: np.ndarray, ncells: int) -> bytes:
        # label-independent node invariant: cell count, cell sizes in
        # cell order, and one representative's sorted neighbor colors
        # per cell (well defined because the coloring is equitable)
        h = hashlib.sha256()
        sizes = np.bincount(colors, minlength=ncells).astype(np.int64)
        h.update(np.int64(ncells).tobytes())
        h.update(sizes.tobytes())
        _, reps = np.unique(colors, return_index=True)
        g = self.graph
        if g.valency is not None and g.valency > 0:
            rows = np.sort(
                colors[g.indices].reshape(self.n, g.valency)[reps], axis=1
            )
            h.update(rows.astype(np.int64).tobytes())
        else:
            for v in reps:
                row = np.sort(colors[g.neighbors(v)]).astype(np.int64)
                h.update(np.int64(row.size).tobytes())
                h.update(row.tobytes())
        return h.digest()

    def _leaf_blob(self, labeling: np.ndarray) -> bytes:
        e = self._edges
        mu = labeling[e[:, 0]]
        mv = labeling[e[:, 1]]
        return _pack_graph6(self.n, np.minimum(mu, mv), np.maximum(mu, mv))

    def _record_leaf(self, colors: np.ndarray, inv_path: Tuple[bytes, ...]) -> None:
        leaf = _Leaf(inv_path, self._leaf_blob(colors), colors.copy())
        if self.first is None:
            self.first = leaf
            self.best = leaf
            return
        for anchor in (self.first, self.best):
            if leaf.blob == anchor.blob:
                anchor_inv = np.empty(self.n, dtype=np.int32)
                anchor_inv[anchor.labeling] = np.arange(self.n, dtype=np.int32)
                auto = anchor_inv[leaf.labeling]
                self._add_automorphism(auto)
                break
        if (leaf.inv_path, leaf.blob) < (self.best.inv_path, self.best.blob):
            self.best = leaf

    def _add_automorphism(self, auto: np.ndarray) -> None:
        key = auto.tobytes()
        if key in self.seen_keys or (auto == np.arange(self.n)).all():
            return
        if not _is_automorphism(self.graph, auto):
            raise RuntimeError("leaf collision produced a non-automorphism")
        self.seen_keys.add(key)
        self.gens.append(auto)
        self.discovered.append(auto)

    # -- tree walk

    def run(self) -> None:
        if self.n == 0:
            empty = np.empty(0, dtype=np.int32)
            self.first = self.best = _Leaf((), _pack_graph6(0, empty, empty), empty)
            return
        self._descend(np.zeros(self.n, dtype=np.int32), (), ())

    def _descend(
        self,
        colors: np.ndarray,
        inv_path: Tuple[bytes, ...],
        path: Tuple[int, ...],
    ) -> None:
        colors, ncells, digest = self._refined(colors)
        inv_path = inv_path + (digest,)
        if self.best is not None:
            k = len(inv_path)
            beats_best = inv_path <= self.best.inv_path[:k]
            mirrors_first = inv_path == self.first.inv_path[:k]
            if not beats_best and not mirrors_first:
                return
        if ncells == self.n:
            self._record_leaf(colors, inv_path)
            return
        sizes = np.bincount(colors, minlength=ncells)
        target = int(np.argmax(np.where(sizes > 1, sizes, -1)))
        members = np.nonzero(colors == target)[0]
        branched: List[int] = []
        orbit_labels: Optional[np.ndarray] = None
        stamped = -1
        for v in members:
            if branched:
                if len(self.gens) != stamped:
                    fixing = [
                        g for g in self.gens if not path or (g[list(path)] == list(path)).all()
                    ]
                    orbit_labels = (
                        orbit_partition(np.vstack(fixing), self.n) if fixing else None
                    )
                    stamped = len(self.gens)
                if orbit_labels is not None and any(
                    orbit_labels[v] == orbit_labels[u] for u in branched
                ):
                    continue
            child = colors.astype(np.int32) * 2
            child[v] -= 1
            self._descend(child, inv_path, path + (int(v),))
            branched.append(int(v))


def _run_search(
    graph: Graph, known: Optional[PermGroup], budget: Optional[int]
) -> _Search:
    if graph.vertex_count == 0:
        raise ValueError("the empty graph has no relabeling to canonicalize")
    seeds: List[np.ndarray] = []
    if known is not None:
        if known.degree != graph.vertex_count:
            raise ValueError("known group degree must equal the vertex count")
        for arr in known.gen_arrays:
            if not _is_automorphism(graph, arr):
                raise ValueError("known generator is not an automorphism")
            seeds.append(arr)
    search = _Search(graph, seeds, budget)
    search.run()
    return search


def canonical_form(graph: Graph, known: Optional[PermGroup] = None) -> CanonicalForm:
    """Isomorphism-invariant certificate: equal bytes iff isomorphic.

    The bytes do not depend on the seeded automorphisms; the relabeling
    is one (not necessarily unique) permutation achieving them.
    """
    search = _run_search(graph, known, None)
    labeling = Permutation(search.best.labeling)
    form = CanonicalForm(bytes=search.best.blob, relabeling=labeling)
    check = _relabeled_bytes(graph, search.best.labeling)
    if check != form.bytes:
        raise RuntimeError("canonical relabeling failed to reproduce its bytes")
    return form


def _relabeled_bytes(graph: Graph, labeling: np.ndarray) -> bytes:
    edges = graph.edge_array()
    pairs = np.column_stack((labeling[edges[:, 0]], labeling[edges[:, 1]]))
    return encode_graph6(graph_from_edges(graph.vertex_count, pairs))


def automorphism_group(
    graph: Graph,
    known: Optional[PermGroup] = None,
    node_budget: Optional[int] = None,
) -> PermGroup:
    """Full automorphism group from the IR search.

    Every returned generator is adjacency-checked.  Exceeding the node
    budget raises NodeBudgetExceeded carrying the partial group found so
    far rather than returning a wrong answer.
    """
    try:
        search = _run_search(graph, known, node_budget)
    except NodeBudgetExceeded as exc:
        if known is not None:
            found = list(known.gen_arrays) + list(exc.partial_group.gen_arrays)
            raise NodeBudgetExceeded(
                PermGroup.from_arrays(found, graph.vertex_count)
            ) from None
        raise
    if known is not None and all(
        known.contains(Permutation(a)) for a in search.discovered
    ):
        return known
    arrays = ([] if known is None else list(known.gen_arrays)) + search.discovered
    return PermGroup.from_arrays(arrays, graph.vertex_count)


def are_isomorphic(a: Graph, b: Graph) -> IsoResult:
    """Canonical-form equality, with a verified vertex bijection as the
    witness when the answer is yes."""
    if (
        a.vertex_count != b.vertex_count
        or a.edge_count != b.edge_count
        or a.valency != b.valency
    ):
        return IsoResult(False, None)
    if a.vertex_count == 0:
        return IsoResult(True, None)
    fa = canonical_form(a)
    fb = canonical_form(b)
    if fa.bytes != fb.bytes:
        return IsoResult(False, None)
    pb_inv = fb.relabeling.inverse()
    witness = pb_inv.images[fa.relabeling.images]
    edges = a.edge_array()
    mu = witness[edges[:, 0]].astype(np.int64)
    mv = witness[edges[:, 1]].astype(np.int64)
    n = b.vertex_count
    mapped = np.sort(np.minimum(mu, mv) * n + np.maximum(mu, mv))
    bedges = b.edge_array()
    bkeys = bedges[:, 0].astype(np.int64) * n + bedges[:, 1]
    if not np.array_equal(mapped, bkeys):
        raise RuntimeError("canonical forms matched but the witness failed")
    return IsoResult(True, Permutation(witness))
