import json

import networkx as nx
import numpy as np
import pytest

from orbitale import graphcore as gc
from orbitale import groupzoo as gz
from orbitale.canon import are_isomorphic, canonical_form
from orbitale.orbital import (
    GraphCandidate,
    _propagated_edges,
    connectivity_certificate,
    dump_candidates,
    enumerate_pentavalent,
    orbital_graph,
)
from orbitale.permcore import CosetAction, PermGroup, Permutation, suborbits

from test_graphcore import complete_graph, perm_from_images, to_nx


def d10_in_a5():
    return PermGroup([perm_from_images([1, 2, 3, 4, 0]), perm_from_images([0, 4, 3, 2, 1])])


def a5_mod_d10():
    return CosetAction(gz.a5(), d10_in_a5())


def f55_mod_z5():
    # Frobenius group of order 55 on 11 points; the point stabilizer's two
    # 5-orbits swap under inversion, so neither is self-paired
    shift = perm_from_images([(i + 1) % 11 for i in range(11)])
    mult = perm_from_images([(4 * i) % 11 for i in range(11)])
    return CosetAction(PermGroup([shift, mult]), PermGroup([mult]))


def hexagon_action():
    rot = perm_from_images([1, 2, 3, 4, 5, 0])
    refl = perm_from_images([0, 5, 4, 3, 2, 1])
    return CosetAction(PermGroup([rot, refl]), PermGroup([refl]))


def split_d10_action():
    # D10 inside the A5 factor of Z2 x A5: some suborbits never leave the
    # factor's cosets, so their orbital graphs fall apart
    group = gz.direct_product(gz.cyclic(2), gz.a5())
    rot = perm_from_images([0, 1, 3, 4, 5, 6, 2])
    refl = perm_from_images([0, 1, 2, 6, 5, 4, 3])
    return CosetAction(group, PermGroup([rot, refl], degree=7))


def crown_graph():
    # complete bipartite graph on 6 + 6 minus a perfect matching
    return gc.graph_from_edges(
        12, [(i, 6 + j) for i in range(6) for j in range(6) if i != j]
    )


# ------------------------------------------------------------ construction


def test_a5_mod_d10_orbital_is_k6():
    act = a5_mod_d10()
    so = [s for s in suborbits(act) if s.length == 5][0]
    graph = orbital_graph(act, so)
    assert graph == complete_graph(6)
    assert np.array_equal(graph.neighbors(0), np.sort(so.points))


def test_orbital_graph_rejects_wrong_suborbits():
    act = f55_mod_z5()
    directed = [s for s in suborbits(act) if not s.self_paired][0]
    with pytest.raises(ValueError, match="self-paired"):
        orbital_graph(act, directed)
    hexa = hexagon_action()
    short = [s for s in suborbits(hexa) if s.length == 2][0]
    with pytest.raises(ValueError, match="!= 5"):
        orbital_graph(hexa, short)


def test_paired_suborbits_union_has_double_valency():
    act = f55_mod_z5()
    pair = [s for s in suborbits(act) if s.length == 5]
    assert pair[0].paired_with == pair[1].suborbit_id
    union = np.concatenate([pair[0].points, pair[1].points])
    graph = gc.graph_from_edges(act.degree, _propagated_edges(act, union))
    assert graph.valency == 10
    assert graph == complete_graph(11)


# ------------------------------------------------------------- certificates


def test_certificate_true_on_generating_suborbit():
    act = a5_mod_d10()
    so = [s for s in suborbits(act) if s.length == 5][0]
    assert connectivity_certificate(act, so) is True


def test_certificate_accepts_any_self_paired_length():
    act = hexagon_action()
    subs = suborbits(act)
    # the adjacent-coset suborbit generates the whole dihedral group; the
    # antipodal fixed coset only reaches a Klein four-group
    two = [s for s in subs if s.length == 2][0]
    assert connectivity_certificate(act, two) is True
    antipodal = [s for s in subs if s.length == 1 and 0 not in s.points][0]
    assert connectivity_certificate(act, antipodal) is False


def test_certificate_rejects_trivial_and_directed_suborbits():
    act = hexagon_action()
    trivial = [s for s in suborbits(act) if 0 in s.points][0]
    with pytest.raises(ValueError, match="trivial"):
        connectivity_certificate(act, trivial)
    f55 = f55_mod_z5()
    directed = [s for s in suborbits(f55) if not s.self_paired][0]
    with pytest.raises(ValueError, match="self-paired"):
        connectivity_certificate(f55, directed)


def test_certificate_false_on_factor_bound_suborbit():
    act = split_d10_action()
    verdicts = sorted(
        connectivity_certificate(act, s)
        for s in suborbits(act)
        if s.length == 5 and s.self_paired
    )
    assert verdicts == [False, True]


# -------------------------------------------------------------- enumeration


def test_enumerate_a5_finds_k6_and_icosahedron():
    cands = enumerate_pentavalent(gz.a5())
    assert [(c.degree, str(c.stabilizer_kind), c.s) for c in cands] == [
        (6, "D10", 1),
        (12, "Z5", 1),
    ]
    assert cands[0].graph == complete_graph(6)
    ico = gc.graph_from_edges(12, list(nx.icosahedral_graph().edges()))
    assert are_isomorphic(cands[1].graph, ico)
    for c in cands:
        assert c.group_label == "A5"
        assert c.connected
        assert c.graph.valency == 5
        assert c.canonical_form == canonical_form(c.graph).bytes


def test_enumerate_splits_isomorphism_classes_not_suborbits():
    # Z2 x A5 admits two pentavalent graphs on 12 vertices: the icosahedron
    # and the crown graph, told apart by bipartiteness
    cands = enumerate_pentavalent(gz.direct_product(gz.cyclic(2), gz.a5()), [10])
    assert len(cands) == 2
    bip = [bool(gc.is_bipartite(c.graph)) for c in cands]
    assert sorted(bip) == [False, True]
    crown = cands[bip.index(True)].graph
    ico = cands[bip.index(False)].graph
    assert are_isomorphic(crown, crown_graph())
    assert are_isomorphic(ico, gc.graph_from_edges(12, list(nx.icosahedral_graph().edges())))


def test_enumerate_product_group_yields_one_sixty_vertex_graph():
    cands = enumerate_pentavalent(gz.direct_product(gz.a5(), gz.d10()), [10])
    assert len(cands) == 1
    cand = cands[0]
    assert cand.degree == 60
    assert str(cand.stabilizer_kind) == "D10"
    assert cand.s == 1
    assert not gc.is_bipartite(cand.graph)
    assert cand.group_label == "A5 x D10"


def test_enumerate_validates_stabilizer_orders():
    a5 = gz.a5()
    with pytest.raises(ValueError, match="divide"):
        enumerate_pentavalent(a5, [7])
    with pytest.raises(ValueError, match="multiple of 5"):
        enumerate_pentavalent(a5, [6])
    with pytest.raises(ValueError, match="bound"):
        enumerate_pentavalent(gz.direct_product(gz.a5(), gz.d10()), [150])


def test_enumerate_is_seed_stable():
    group = gz.direct_product(gz.cyclic(2), gz.a5())
    a = enumerate_pentavalent(group, [10], seed=0)
    b = enumerate_pentavalent(group, [10], seed=7)
    assert [c.canonical_form for c in a] == [c.canonical_form for c in b]


def test_enumerate_skips_unfaithful_actions():
    # every order-20 subgroup of Z2 x (A5 x D10)-style products with a
    # central involution inside is skipped; here Z2 x A5 has Z10 subgroups
    # whose core is the center, and they must contribute nothing
    group = gz.direct_with_z2(gz.a5())
    cands = enumerate_pentavalent(group, [10])
    assert all(c.connected and c.graph.valency == 5 for c in cands)
    # the center fuses into every Z10, so only core-free D10s survive; the
    # two resulting graphs coincide with the faithful Z2 x A5 run
    other = enumerate_pentavalent(gz.direct_product(gz.cyclic(2), gz.a5()), [10])
    assert {c.canonical_form for c in cands} == {c.canonical_form for c in other}


# -------------------------------------------------------------------- dumps


def test_dump_layout_and_payload(tmp_path):
    cands = enumerate_pentavalent(gz.a5())
    paths = dump_candidates(cands, tmp_path)
    rel = [str(p.relative_to(tmp_path)) for p in paths]
    assert rel == ["A5/6/candidate-0.json", "A5/12/candidate-0.json"]
    payload = json.loads(paths[0].read_text())
    assert payload == {
        "group_label": "A5",
        "degree": 6,
        "stab_kind": "D10",
        "graph6": gc.encode_graph6(complete_graph(6)).decode("ascii"),
        "connected": True,
        "s": 1,
    }
    decoded = gc.decode_graph6(json.loads(paths[1].read_text())["graph6"])
    assert decoded == cands[1].graph


def test_dump_sanitizes_group_labels(tmp_path):
    cands = enumerate_pentavalent(gz.direct_product(gz.a5(), gz.d10()), [10])
    paths = dump_candidates(cands, tmp_path)
    assert [str(p.relative_to(tmp_path)) for p in paths] == [
        "A5_x_D10/60/candidate-0.json"
    ]
