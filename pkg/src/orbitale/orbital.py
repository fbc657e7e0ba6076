"""Pentavalent orbital graphs of a coset action, enumerated up to isomorphism.

A transitive action of G on the cosets of a subgroup H turns each
self-paired H-orbit of cosets into an undirected graph: connect coset 0
to the orbit's points and propagate by the action.  The enumeration
walks every candidate stabilizer order, keeps the valency-5 connected
graphs, and collapses isomorphic results through their canonical forms.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .canon import canonical_form
from .graphcore import (
    Graph,
    TransitivityReport,
    encode_graph6,
    graph_from_edges,
    is_connected,
    s_arc_transitivity,
)
from .permcore import (
    CosetAction,
    GroupKind,
    PermGroup,
    Permutation,
    Suborbit,
    find_subgroups_of_order,
    recognize_small_group,
    suborbits,
)
from ._kernels import orbit_sv

# Stabilizer orders compatible with valency 5: the vertex stabilizer of
# a connected pentavalent arc-transitive graph has order 5k with
# k | 24, so 120 bounds the soluble range the search covers.
_DEFAULT_STAB_ORDERS: Tuple[int, ...] = (5, 10, 20, 40, 60, 80, 120)


@dataclass(frozen=True)
class GraphCandidate:
    """One connected pentavalent graph surviving the enumeration.

    `action` is the coset action that produced the graph (the first one
    found for its isomorphism class); its image acts arc-transitively on
    the vertices, which downstream measurement and quotient code reuse.
    """

    graph: Graph
    group_label: str
    stabilizer_kind: GroupKind
    degree: int
    suborbit_rep: int
    connected: bool
    canonical_form: bytes
    s: int
    action: CosetAction = field(compare=False, repr=False)

    def serialize(self) -> dict:
        return {
            "group_label": self.group_label,
            "degree": self.degree,
            "stab_kind": str(self.stabilizer_kind),
            "graph6": encode_graph6(self.graph).decode("ascii"),
            "connected": self.connected,
            "s": self.s,
        }


def _propagated_edges(action: CosetAction, points: np.ndarray) -> np.ndarray:
    """Edge list of the graph whose neighbor set at coset 0 is `points`.

    `points` must be a union of suborbits; the rows are carried outward
    along a Schreier tree of the image generators, so each vertex gets
    its neighbor set from a single group element.  The symmetry check in
    the Graph constructor then confirms the rows were consistent.
    """
    n = action.degree
    mat = np.vstack([p.images for p in action.action_generators])
    orbit, sv_gen, sv_prev = orbit_sv(mat, 0, n)
    if orbit.size != n:
        raise RuntimeError("coset action is not transitive")
    nbr = np.empty((n, len(points)), dtype=np.int32)
    nbr[0] = np.sort(np.asarray(points, dtype=np.int32))
    for v in orbit[1:]:
        nbr[v] = mat[sv_gen[v]][nbr[sv_prev[v]]]
    src = np.repeat(np.arange(n, dtype=np.int32), nbr.shape[1])
    return np.column_stack((src, nbr.ravel()))


def _rated_orbital_graph(action: CosetAction, sub: Suborbit) -> Tuple[Graph, TransitivityReport]:
    if not sub.self_paired:
        raise ValueError("suborbit is not self-paired: the orbital is directed")
    if sub.length != 5:
        raise ValueError(f"suborbit length {sub.length} != 5")
    graph = graph_from_edges(action.degree, _propagated_edges(action, sub.points))
    if not np.array_equal(graph.neighbors(0), np.sort(sub.points)):
        raise RuntimeError("neighbors of coset 0 drifted from the suborbit")
    report = s_arc_transitivity(graph, action.image)
    if not report.arc_transitive:
        raise RuntimeError("orbital graph is not arc-transitive under its own action")
    return graph, report


def orbital_graph(action: CosetAction, sub: Suborbit) -> Graph:
    """Undirected orbital graph of a self-paired length-5 suborbit.

    The image group acts arc-transitively on the result by construction;
    that is re-verified before returning.  The graph may be disconnected
    (exactly when H and a representative of the suborbit generate a
    proper subgroup); connectivity is the caller's concern.
    """
    graph, _ = _rated_orbital_graph(action, sub)
    return graph


def connectivity_certificate(
    action: CosetAction, sub: Suborbit, graph: Optional[Graph] = None
) -> bool:
    """Whether H together with one suborbit representative generates G.

    Computed two ways that must agree: the orbit of coset 0 under the
    image of H extended by the representative (full iff the generated
    subgroup is all of G), and plain breadth-first search on the built
    graph.  Disagreement means the construction is broken and raises.
    Accepts any self-paired suborbit apart from the trivial one.
    """
    if not sub.self_paired:
        raise ValueError("suborbit is not self-paired: the orbital is directed")
    if 0 in sub.points:
        raise ValueError("trivial suborbit: the orbital has loops at every vertex")
    if graph is None:
        graph = graph_from_edges(action.degree, _propagated_edges(action, sub.points))
    rep = Permutation(action.transversal[int(sub.points.min())])
    extended = np.vstack(list(action.h_image.gen_arrays) + [action.apply(rep).images])
    group_route = orbit_sv(extended, 0, action.degree)[0].size == action.degree
    graph_route = is_connected(graph)
    if group_route != graph_route:
        raise RuntimeError(
            f"connectivity routes disagree: generation says {group_route}, "
            f"graph search says {graph_route}"
        )
    return group_route


def _group_label(group: PermGroup) -> str:
    meta = getattr(group, "meta", None)
    if meta and "label" in meta:
        return str(meta["label"])
    return f"G{group.order()}"


def enumerate_pentavalent(
    group: PermGroup,
    stab_orders: Optional[Iterable[int]] = None,
    seed: int = 0,
) -> List[GraphCandidate]:
    """All connected pentavalent graphs on which the group acts
    arc-transitively with a stabilizer of one of the given orders,
    one candidate per isomorphism class.

    Defaults to every feasible stabilizer order dividing |G|.  Cosets of
    subgroups with nontrivial core are skipped (the action would not be
    faithful).  Output is sorted by vertex count then canonical form,
    and is stable for a fixed seed.
    """
    order = group.order()
    if stab_orders is None:
        orders = [m for m in _DEFAULT_STAB_ORDERS if order % m == 0]
    else:
        orders = sorted(set(int(m) for m in stab_orders))
        for m in orders:
            if m <= 0 or order % m:
                raise ValueError(f"stabilizer order {m} does not divide the group order")
            if m % 5:
                raise ValueError(f"stabilizer order {m} is not a multiple of 5")
            if m > 120:
                raise ValueError(f"stabilizer order {m} exceeds the valency-5 bound 120")
    label = _group_label(group)

    raw: List[GraphCandidate] = []
    for m in orders:
        for sub in find_subgroups_of_order(group, m, seed):
            action = CosetAction(group, sub)
            if action.kernel_order != 1:
                continue
            kind = recognize_small_group(sub)
            for so in suborbits(action):
                if so.length != 5 or not so.self_paired:
                    continue
                graph, report = _rated_orbital_graph(action, so)
                if not connectivity_certificate(action, so, graph=graph):
                    continue
                form = canonical_form(graph, known=action.image)
                raw.append(
                    GraphCandidate(
                        graph=graph,
                        group_label=label,
                        stabilizer_kind=kind,
                        degree=graph.vertex_count,
                        suborbit_rep=int(so.points.min()),
                        connected=True,
                        canonical_form=form.bytes,
                        s=report.s,
                        action=action,
                    )
                )

    raw.sort(
        key=lambda c: (c.degree, c.canonical_form, str(c.stabilizer_kind), c.suborbit_rep)
    )
    seen = set()
    out = []
    for cand in raw:
        if cand.canonical_form in seen:
            continue
        seen.add(cand.canonical_form)
        out.append(cand)
    return out


def dump_candidates(candidates: Sequence[GraphCandidate], out_dir) -> List[Path]:
    """Write one JSON file per candidate under out_dir/<group>/<degree>/."""
    root = Path(out_dir)
    written: List[Path] = []
    counters: dict = {}
    for cand in candidates:
        safe = re.sub(r"[^A-Za-z0-9_.-]+", "_", cand.group_label).strip("_")
        bucket = root / safe / str(cand.degree)
        bucket.mkdir(parents=True, exist_ok=True)
        k = counters.get((safe, cand.degree), 0)
        counters[(safe, cand.degree)] = k + 1
        path = bucket / f"candidate-{k}.json"
        path.write_text(json.dumps(cand.serialize(), indent=2, sort_keys=True) + "\n")
        written.append(path)
    return written
