"""Immutable simple graphs and the analyses the enumeration needs.

Graphs are undirected, loop-free, and stored in frozen CSR form with
each vertex's neighbor list sorted; vertices are 0-based integers.
Beyond construction and export (graph6, DOT, JSON edge list) the module
provides connectivity and bipartiteness by breadth-first search,
quotients by orbit partitions of an automorphism group, normal-cover
checking, and s-arc transitivity by iterated stabilizer descent.

graph6 output is byte-exact against the published format, including the
3- and 6-byte size headers for more than 62 vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from ._kernels import orbit_partition, orbit_sv
from .permcore import PermGroup, point_stabilizer

# Largest s searched for; pentavalent arc-transitive graphs cannot
# exceed it, and the report flags the one hypothetical overshoot.
_S_CAP = 5

_GRAPH6_HEADER = b">>graph6<<"


class Graph:
    """Frozen CSR graph: ``indices[indptr[v]:indptr[v+1]]`` is the sorted
    neighbor list of v.  ``valency`` is the common degree when the graph
    is regular, None otherwise."""

    __slots__ = ("vertex_count", "indptr", "indices", "valency")

    def __init__(self, vertex_count: int, indptr: np.ndarray, indices: np.ndarray):
        n = int(vertex_count)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        indptr = np.ascontiguousarray(indptr, dtype=np.int32)
        indices = np.ascontiguousarray(indices, dtype=np.int32)
        if indptr.shape != (n + 1,) or indptr[0] != 0 or indptr[-1] != indices.size:
            raise ValueError("malformed CSR index pointer")
        degrees = np.diff(indptr)
        if (degrees < 0).any():
            raise ValueError("malformed CSR index pointer")
        if indices.size:
            if indices.min() < 0 or indices.max() >= n:
                raise ValueError("neighbor index out of range")
        rows = np.repeat(np.arange(n, dtype=np.int32), degrees)
        if (rows == indices).any():
            raise ValueError("loops are not allowed")
        same_row = rows[1:] == rows[:-1]
        if (indices[1:][same_row] <= indices[:-1][same_row]).any():
            raise ValueError("neighbor lists must be strictly increasing")
        fwd = rows.astype(np.int64) * n + indices
        bwd = indices.astype(np.int64) * n + rows
        if not np.array_equal(np.sort(fwd), np.sort(bwd)):
            raise ValueError("adjacency must be symmetric")
        indptr.setflags(write=False)
        indices.setflags(write=False)
        valency = int(degrees[0]) if n and (degrees == degrees[0]).all() else None
        object.__setattr__(self, "vertex_count", n)
        object.__setattr__(self, "indptr", indptr)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "valency", valency)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("Graph is immutable")

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    @property
    def edge_count(self) -> int:
        return self.indices.size // 2

    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) array with u < v, lexicographically sorted."""
        rows = np.repeat(
            np.arange(self.vertex_count, dtype=np.int32), np.diff(self.indptr)
        )
        keep = rows < self.indices
        return np.column_stack((rows[keep], self.indices[keep]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __repr__(self) -> str:
        return f"Graph(vertices={self.vertex_count}, edges={self.edge_count})"


def graph_from_edges(vertex_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from unordered endpoint pairs.

    Duplicate pairs (in either orientation) collapse to one edge; loops
    and out-of-range endpoints are rejected.
    """
    n = int(vertex_count)
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    if not isinstance(edges, np.ndarray):
        edges = list(edges)
    pairs = np.asarray(edges, dtype=np.int64)
    if pairs.size == 0:
        pairs = pairs.reshape(0, 2)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise ValueError("edges must be pairs of endpoints")
    if pairs.size:
        if pairs.min() < 0 or pairs.max() >= n:
            raise ValueError("edge endpoint out of range")
        if (pairs[:, 0] == pairs[:, 1]).any():
            raise ValueError("loops are not allowed")
    both = np.vstack((pairs, pairs[:, ::-1]))
    order = np.lexsort((both[:, 1], both[:, 0]))
    both = both[order]
    if both.shape[0]:
        fresh = np.ones(both.shape[0], dtype=bool)
        fresh[1:] = (both[1:] != both[:-1]).any(axis=1)
        both = both[fresh]
    counts = np.bincount(both[:, 0], minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int32)
    indptr[1:] = np.cumsum(counts)
    return Graph(n, indptr, both[:, 1].astype(np.int32))


# ---------------------------------------------------------------------------
# graph6

def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    if n <= 68719476735:
        groups = [((n >> shift) & 63) + 63 for shift in (30, 24, 18, 12, 6, 0)]
        return bytes([126, 126] + groups)
    raise ValueError("graph too large for graph6")


def _decode_size(data: bytes) -> Tuple[int, int]:
    if not data:
        raise ValueError("empty graph6 data")
    if data[0] != 126:
        if not 63 <= data[0] <= 125:
            raise ValueError("graph6 size byte out of range")
        return data[0] - 63, 1
    start, offset = (2, 8) if len(data) >= 2 and data[1] == 126 else (1, 4)
    chunk = data[start:offset]
    if len(chunk) != offset - start:
        raise ValueError("truncated graph6 size")
    if any(not 63 <= b <= 126 for b in chunk):
        raise ValueError("graph6 size byte out of range")
    n = 0
    for b in chunk:
        n = (n << 6) | (b - 63)
    return n, offset


def _pack_graph6(n: int, u: np.ndarray, v: np.ndarray) -> bytes:
    """graph6 payload for edges (u, v) with u < v on n vertices."""
    bit_count = n * (n - 1) // 2
    vals = np.zeros((bit_count + 5) // 6, dtype=np.uint8)
    if u.size:
        pos = v.astype(np.int64) * (v.astype(np.int64) - 1) // 2 + u
        np.bitwise_or.at(vals, pos // 6, (1 << (5 - pos % 6)).astype(np.uint8))
    return _encode_size(n) + (vals + 63).tobytes()


def encode_graph6(graph: Graph) -> bytes:
    """Encode as graph6: size header, then the upper triangle of the
    adjacency matrix column by column, six bits per byte, offset 63."""
    edges = graph.edge_array()
    return _pack_graph6(graph.vertex_count, edges[:, 0], edges[:, 1])


def decode_graph6(data: Union[bytes, str]) -> Graph:
    """Decode a graph6 byte string (optional ``>>graph6<<`` prefix and
    trailing newline tolerated)."""
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(_GRAPH6_HEADER):
        data = data[len(_GRAPH6_HEADER) :]
    n, offset = _decode_size(data)
    body = np.frombuffer(data[offset:], dtype=np.uint8)
    if body.size and (body.min() < 63 or body.max() > 126):
        raise ValueError("graph6 byte out of range")
    bit_count = n * (n - 1) // 2
    if int(body.size) != (bit_count + 5) // 6:
        raise ValueError("graph6 body length does not match the vertex count")
    bits = np.unpackbits((body - 63)[:, None], axis=1)[:, 2:].ravel()
    if bits[bit_count:].any():
        raise ValueError("graph6 padding bits must be zero")
    pos = np.nonzero(bits[:bit_count])[0]
    span = np.arange(n + 1, dtype=np.int64)
    offsets = span * (span - 1) // 2
    v = np.searchsorted(offsets, pos, side="right") - 1
    u = pos - offsets[v]
    return graph_from_edges(n, np.column_stack((u, v)))


# ---------------------------------------------------------------------------
# other exports

def to_dot(graph: Graph) -> str:
    lines = ["graph G {"]
    degrees = np.diff(graph.indptr)
    for v in np.nonzero(degrees == 0)[0]:
        lines.append(f"  {v};")
    for u, v in graph.edge_array():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_edges(graph: Graph) -> str:
    payload = {"n": graph.vertex_count, "edges": graph.edge_array().tolist()}
    return json.dumps(payload, separators=(",", ":"))


def from_json_edges(text: str) -> Graph:
    payload = json.loads(text)
    if not isinstance(payload, dict) or "n" not in payload or "edges" not in payload:
        raise ValueError("expected a JSON object with keys 'n' and 'edges'")
    return graph_from_edges(payload["n"], payload["edges"])


# ---------------------------------------------------------------------------
# traversal

def _gather(graph: Graph, verts: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Concatenated neighbor lists of verts and the per-vertex counts."""
    counts = graph.indptr[verts + 1] - graph.indptr[verts]
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int32), counts
    starts = np.repeat(graph.indptr[verts], counts)
    base = np.repeat(np.cumsum(counts) - counts, counts)
    nbrs = graph.indices[starts + np.arange(total, dtype=np.int64) - base]
    return nbrs, counts


def is_connected(graph: Graph) -> bool:
    n = graph.vertex_count
    if n <= 1:
        return True
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    reached = 1
    frontier = np.array([0], dtype=np.int32)
    while frontier.size:
        nbrs, _ = _gather(graph, frontier)
        frontier = np.unique(nbrs[~seen[nbrs]])
        seen[frontier] = True
        reached += frontier.size
    return reached == n


@dataclass(frozen=True)
class BipartiteResult:
    """Verdict plus a 2-coloring witness (None when not bipartite)."""

    bipartite: bool
    coloring: Optional[np.ndarray]

    def __bool__(self) -> bool:
        return self.bipartite


def is_bipartite(graph: Graph) -> BipartiteResult:
    n = graph.vertex_count
    color = np.full(n, -1, dtype=np.int8)
    while True:
        uncolored = np.nonzero(color < 0)[0]
        if uncolored.size == 0:
            break
        seed = uncolored[0]
        color[seed] = 0
        frontier = np.array([seed], dtype=np.int32)
        while frontier.size:
            nbrs, counts = _gather(graph, frontier)
            src = np.repeat(color[frontier], counts)
            if (color[nbrs] == src).any():
                return BipartiteResult(False, None)
            fresh = nbrs[color[nbrs] < 0]
            frontier = np.unique(fresh)
            if frontier.size:
                # a whole BFS level shares one color, so this cannot clash
                color[frontier] = 1 - src[0]
    color.setflags(write=False)
    return BipartiteResult(True, color)


# ---------------------------------------------------------------------------
# quotients and covers

def _is_automorphism(graph: Graph, arr: np.ndarray) -> bool:
    n = graph.vertex_count
    edges = graph.edge_array()
    mu = arr[edges[:, 0]].astype(np.int64)
    mv = arr[edges[:, 1]].astype(np.int64)
    mapped = np.minimum(mu, mv) * n + np.maximum(mu, mv)
    original = edges[:, 0].astype(np.int64) * n + edges[:, 1]
    return np.array_equal(np.sort(mapped), np.sort(original))


@dataclass(frozen=True)
class QuotientMap:
    """Vertex-to-block assignment for a quotient; blocks are contiguous
    labels 0..block_count-1 and must all have the same size."""

    block_of: np.ndarray
    block_count: int

    def __post_init__(self):
        block_of = np.ascontiguousarray(self.block_of, dtype=np.int32)
        if block_of.ndim != 1:
            raise ValueError("block_of must be one-dimensional")
        if block_of.size:
            if block_of.min() < 0 or block_of.max() >= self.block_count:
                raise ValueError("block label out of range")
            counts = np.bincount(block_of, minlength=self.block_count)
            if counts.min() != counts.max():
                raise ValueError("blocks must all have the same size")
        elif self.block_count:
            raise ValueError("nonzero block count with no vertices")
        block_of.setflags(write=False)
        object.__setattr__(self, "block_of", block_of)

    @property
    def block_size(self) -> int:
        return self.block_of.size // self.block_count if self.block_count else 0


def quotient_graph(graph: Graph, n_sub: PermGroup) -> Tuple[Graph, QuotientMap]:
    """Quotient on the orbits of n_sub: blocks B, C are adjacent iff some
    edge of the graph joins them.  Edges inside one block are dropped
    (the quotient stays simple)."""
    if n_sub.degree != graph.vertex_count:
        raise ValueError("group degree must equal the vertex count")
    for arr in n_sub.gen_arrays:
        if not _is_automorphism(graph, arr):
            raise ValueError("generator is not an automorphism of the graph")
    labels = orbit_partition(np.vstack(n_sub.gen_arrays), graph.vertex_count)
    roots = np.unique(labels)
    block_of = np.searchsorted(roots, labels).astype(np.int32)
    qmap = QuotientMap(block_of=block_of, block_count=int(roots.size))
    edges = graph.edge_array()
    bu = block_of[edges[:, 0]]
    bv = block_of[edges[:, 1]]
    keep = bu != bv
    quotient = graph_from_edges(qmap.block_count, np.column_stack((bu[keep], bv[keep])))
    return quotient, qmap


def is_normal_cover(graph: Graph, quotient: Graph, qmap: QuotientMap) -> bool:
    """True iff the map preserves valency and each vertex's neighbors map
    bijectively onto the quotient-neighbors of its block."""
    if qmap.block_of.size != graph.vertex_count or qmap.block_count != quotient.vertex_count:
        raise ValueError("map inconsistent with the two graphs")
    k = quotient.vertex_count
    edges = graph.edge_array()
    bu = qmap.block_of[edges[:, 0]].astype(np.int64)
    bv = qmap.block_of[edges[:, 1]].astype(np.int64)
    inter = bu != bv
    mapped = np.unique(np.minimum(bu, bv)[inter] * k + np.maximum(bu, bv)[inter])
    qedges = quotient.edge_array()
    qkeys = qedges[:, 0].astype(np.int64) * k + qedges[:, 1]
    if not np.array_equal(mapped, qkeys):
        raise ValueError("map inconsistent: mapped edges disagree with the quotient")
    if graph.vertex_count == 0:
        return True
    degrees = np.diff(graph.indptr)
    qdegrees = np.diff(quotient.indptr)
    if not np.array_equal(degrees, qdegrees[qmap.block_of]):
        return False
    if (~inter).any():
        return False
    rows = np.repeat(np.arange(graph.vertex_count, dtype=np.int32), degrees)
    nbr_blocks = qmap.block_of[graph.indices]
    order = np.lexsort((nbr_blocks, rows))
    rr, bb = rows[order], nbr_blocks[order]
    dup = (rr[1:] == rr[:-1]) & (bb[1:] == bb[:-1])
    return not dup.any()


# ---------------------------------------------------------------------------
# s-arc transitivity

@dataclass(frozen=True)
class TransitivityReport:
    """Outcome of the stabilizer descent.

    s is the largest value, capped at 5, for which the group is
    transitive on s-arcs; arc_transitive iff s >= 1.  arc_count_checked
    is the s-arc total confirmed against orbit-stabilizer counting
    (vertex count for s = 0).  extends_past_cap flags the descent still
    succeeding at the cap.
    """

    s: int
    arc_transitive: bool
    arc_count_checked: int
    extends_past_cap: bool

    def serialize(self) -> dict:
        return {
            "s": self.s,
            "arc_transitive": self.arc_transitive,
            "arc_count_checked": self.arc_count_checked,
            "extends_past_cap": self.extends_past_cap,
        }


def s_arc_transitivity(graph: Graph, group: PermGroup) -> TransitivityReport:
    """Largest s (up to 5) with the group transitive on s-arcs.

    Descends through iterated point stabilizers along one fixed path:
    the group is transitive on (s+1)-arcs iff it is transitive on s-arcs
    and the pointwise stabilizer of an s-arc is transitive on the
    forward extensions of that arc.  Transitivity at each level is
    therefore also monotone by construction.  The final count of s-arcs
    is cross-checked against |G| / |pointwise stabilizer of the arc|.
    """
    n = graph.vertex_count
    if group.degree != n:
        raise ValueError("group degree must equal the vertex count")
    if graph.valency is None:
        raise ValueError("graph must be regular")
    for arr in group.gen_arrays:
        if not _is_automorphism(graph, arr):
            raise ValueError("generator is not an automorphism of the graph")
    gen_mat = np.vstack(group.gen_arrays)
    if orbit_sv(gen_mat, 0, n)[0].size != n:
        raise ValueError("group must be vertex-transitive")
    d = graph.valency
    if d == 0:
        return TransitivityReport(0, False, n, False)

    stab = point_stabilizer(group, 0)
    path = [0]
    prev = -1
    s = 0
    extends = False
    while True:
        tail = path[-1]
        nbrs = graph.neighbors(tail)
        allowed = nbrs if prev < 0 else nbrs[nbrs != prev]
        if allowed.size == 0:
            break
        orbit = orbit_sv(np.vstack(stab.gen_arrays), int(allowed[0]), n)[0]
        if orbit.size != allowed.size:
            break
        if not np.isin(orbit, allowed).all():
            raise RuntimeError("stabilizer orbit escaped the neighbor set")
        if s == _S_CAP:
            extends = True
            break
        s += 1
        nxt = int(allowed[0])
        stab = point_stabilizer(stab, nxt)
        prev = tail
        path.append(nxt)

    arc_count = n * d * (d - 1) ** (s - 1) if s >= 1 else n
    if group.order() != stab.order() * arc_count:
        raise RuntimeError("s-arc count disagrees with orbit-stabilizer counting")
    return TransitivityReport(s, s >= 1, arc_count, extends)
