import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitale.permcore import (
    PermGroup,
    Permutation,
    build_chain,
    compose,
    coset_action,
    find_subgroups_of_order,
    identity,
    is_semiregular,
    orbit,
    point_stabilizer,
    recognize_small_group,
    suborbits,
)

from oracles import (
    closure,
    conjugate_subgroup,
    subgroups_of_order,
    t_compose,
    t_order,
)


def perm(*cycles, degree):
    return Permutation.from_cycles(degree, cycles)


def cyclic(n):
    return PermGroup([perm(tuple(range(n)), degree=n)])


def a5():
    return PermGroup([perm((0, 1, 2, 3, 4), degree=5), perm((0, 1, 2), degree=5)])


def s5():
    return PermGroup([perm((0, 1, 2, 3, 4), degree=5), perm((0, 1), degree=5)])


def d10():
    return PermGroup([perm((0, 1, 2, 3, 4), degree=5), perm((1, 4), (2, 3), degree=5)])


def f20():
    # Z5 : Z4 with the Z4 acting as x -> 2x
    return PermGroup([perm((0, 1, 2, 3, 4), degree=5), perm((1, 2, 4, 3), degree=5)])


def f110():
    # Z11 : Z10, the Z10 acting as x -> 2x (2 is a primitive root mod 11)
    shift = Permutation([(x + 1) % 11 for x in range(11)])
    scale = Permutation([(2 * x) % 11 for x in range(11)])
    return PermGroup([shift, scale])


def sl25():
    # SL(2,5) on the 24 nonzero vectors of GF(5)^2
    vecs = [(a, b) for a in range(5) for b in range(5) if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def mat_perm(m):
        return Permutation(
            [
                pos[((m[0][0] * a + m[0][1] * b) % 5, (m[1][0] * a + m[1][1] * b) % 5)]
                for a, b in vecs
            ]
        )

    return PermGroup([mat_perm(((1, 1), (0, 1))), mat_perm(((0, 1), (4, 0)))])


def _perms_of_degree(lo, hi):
    return st.integers(lo, hi).flatmap(
        lambda d: st.lists(
            st.randoms(use_true_random=False), min_size=1, max_size=3
        ).map(lambda rs: [Permutation(r.sample(range(d), d)) for r in rs])
    )


perm_strategy = _perms_of_degree(3, 8)
# kept small so the naive closure oracle stays cheap
small_perm_strategy = _perms_of_degree(3, 6)


# ---------------------------------------------------------------------------
# permutation arithmetic


def test_identity_and_cycles_roundtrip():
    p = perm((0, 3), (1, 2, 4), degree=6)
    assert p.cycles() == [[0, 3], [1, 2, 4]]
    assert Permutation.from_cycles(6, p.cycles()) == p
    assert identity(6).is_identity()
    assert p.cycle_string() == "(0 3)(1 2 4)"
    assert identity(4).cycle_string() == "()"


def test_compose_is_left_to_right():
    p = perm((0, 1), degree=3)
    q = perm((1, 2), degree=3)
    assert compose(p, q)(0) == q(p(0))
    assert [compose(p, q)(x) for x in range(3)] == [2, 0, 1]


def test_rejects_non_bijections():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(ValueError):
        Permutation([1, 2, 3])


@given(perm_strategy)
def test_group_axioms_on_random_elements(ps):
    d = ps[0].degree
    e = identity(d)
    for p in ps:
        assert p * p.inverse() == e
        assert p.inverse() * p == e
        assert (p * e) == p
    if len(ps) >= 3:
        p, q, r = ps[:3]
        assert (p * q) * r == p * (q * r)


@given(perm_strategy)
def test_order_matches_naive(ps):
    for p in ps:
        assert p.order() == t_order(tuple(p.images.tolist()))


def test_serialize_roundtrip():
    p = perm((0, 4, 2), degree=5)
    data = p.serialize()
    assert data["degree"] == 5
    assert Permutation(data["images"]) == p
    g = d10()
    rebuilt = PermGroup([Permutation(im) for im in g.serialize()["generators"]])
    assert rebuilt.order() == g.order()


# ---------------------------------------------------------------------------
# stabilizer chains


@given(small_perm_strategy)
@settings(max_examples=60)
def test_chain_order_equals_closure(ps):
    group = PermGroup(ps)
    elems = closure([tuple(p.images.tolist()) for p in ps])
    assert group.order() == len(elems)


@given(small_perm_strategy)
@settings(max_examples=40)
def test_membership_matches_closure(ps):
    group = PermGroup(ps)
    d = group.degree
    elems = closure([tuple(p.images.tolist()) for p in ps])
    for t in list(elems)[:20]:
        assert group.contains(Permutation(t))
    rng = np.random.default_rng(7)
    for _ in range(10):
        cand = tuple(rng.permutation(d).tolist())
        assert group.contains(Permutation(np.array(cand))) == (cand in elems)


def test_known_orders():
    assert s5().order() == 120
    assert a5().order() == 60
    assert d10().order() == 10
    assert f20().order() == 20
    assert f110().order() == 110
    assert sl25().order() == 120
    assert cyclic(12).order() == 12


def test_chain_base_is_deterministic():
    c1 = build_chain(a5())
    c2 = build_chain(a5())
    assert c1.base == c2.base
    assert c1.order == c2.order == 60


def test_random_element_is_member_and_seeded(rng):
    g = a5()
    seen = set()
    for _ in range(30):
        e = g.random_element(rng)
        assert g.contains(Permutation(e))
        seen.add(e.tobytes())
    assert len(seen) > 10
    a = g.random_element(np.random.default_rng(5))
    b = g.random_element(np.random.default_rng(5))
    assert np.array_equal(a, b)


@given(perm_strategy)
@settings(max_examples=40)
def test_orbit_stabilizer_product(ps):
    group = PermGroup(ps)
    stab = point_stabilizer(group, 0)
    assert stab.order() * len(orbit(group, 0)) == group.order()
    for g in stab.generators:
        assert g(0) == 0


def test_point_stabilizer_of_a5():
    stab = point_stabilizer(a5(), 0)
    assert stab.order() == 12
    assert all(g(0) == 0 for g in stab.generators)


def test_orbit_of_natural_actions():
    assert orbit(a5(), 3) == {0, 1, 2, 3, 4}
    two_orbits = PermGroup([perm((0, 1, 2), (3, 4), degree=5)])
    assert orbit(two_orbits, 3) == {3, 4}


# ---------------------------------------------------------------------------
# semiregularity and recognition


def test_is_semiregular():
    assert is_semiregular(cyclic(5), 5)
    assert not is_semiregular(a5(), 5)
    assert not is_semiregular(d10(), 5)
    regular_s3 = PermGroup(
        [perm((0, 1, 2), (3, 5, 4), degree=6), perm((0, 3), (1, 4), (2, 5), degree=6)]
    )
    assert is_semiregular(regular_s3, 6)


def test_recognize_named_kinds():
    assert recognize_small_group(cyclic(5)).tag == "Z5"
    assert recognize_small_group(d10()).tag == "D10"
    assert recognize_small_group(f20()).tag == "F20"
    assert recognize_small_group(a5()).tag == "A5"
    assert recognize_small_group(s5()).tag == "S5"
    assert recognize_small_group(cyclic(2)).tag == "Z2"
    assert recognize_small_group(cyclic(4)).tag == "Z4"
    klein = PermGroup([perm((0, 1), degree=4), perm((2, 3), degree=4)])
    assert recognize_small_group(klein).tag == "Z2xZ2"
    assert recognize_small_group(cyclic(6)).tag == "Cyclic(6)"
    hexagon = PermGroup(
        [perm((0, 1, 2, 3, 4, 5), degree=6), perm((1, 5), (2, 4), degree=6)]
    )
    assert recognize_small_group(hexagon).tag == "Dihedral(12)"
    d20 = PermGroup(
        [perm(tuple(range(10)), degree=10), perm((1, 9), (2, 8), (3, 7), (4, 6), degree=10)]
    )
    assert recognize_small_group(d20).tag == "D20"
    assert recognize_small_group(sl25()).tag == "Other(120)"
    assert recognize_small_group(f110()).tag == "Other(110)"


def test_recognize_direct_products_of_f20():
    f20x2 = PermGroup(
        [perm((0, 1, 2, 3, 4), degree=7), perm((1, 2, 4, 3), degree=7), perm((5, 6), degree=7)]
    )
    assert recognize_small_group(f20x2).tag == "F20xZ2"
    f20x4 = PermGroup(
        [
            perm((0, 1, 2, 3, 4), degree=9),
            perm((1, 2, 4, 3), degree=9),
            perm((5, 6, 7, 8), degree=9),
        ]
    )
    assert recognize_small_group(f20x4).tag == "F20xZ4"


def test_recognize_is_conjugation_invariant(rng):
    for base in (d10(), f20(), a5()):
        tag = recognize_small_group(base).tag
        relab = rng.permutation(base.degree).astype(np.int32)
        relab_inv = np.argsort(relab).astype(np.int32)
        conj = PermGroup(
            [Permutation(relab[g.images[relab_inv]]) for g in base.generators]
        )
        assert recognize_small_group(conj).tag == tag


def test_recognize_rejects_large_groups():
    big = PermGroup(
        [perm(tuple(range(13)), degree=13), perm((0, 1), degree=13)]
    )
    with pytest.raises(ValueError):
        recognize_small_group(big)


# ---------------------------------------------------------------------------
# subgroup search


def _assert_matches_oracle(group, m, seed=0):
    found = find_subgroups_of_order(group, m, seed=seed)
    elems = closure([tuple(p.images.tolist()) for p in group.generators])
    expected = subgroups_of_order(elems, m)
    found_sets = [
        frozenset(tuple(e.tolist()) for e in sub.elements()) for sub in found
    ]
    for fs in found_sets:
        assert fs in expected, "search returned a non-subgroup or wrong order"
    for target in expected:
        assert any(
            conjugate_subgroup(target, g) in found_sets for g in elems
        ), f"missed conjugacy class of an order-{m} subgroup"
    return found


def test_a5_subgroups_match_oracle():
    assert len(_assert_matches_oracle(a5(), 5)) == 1
    assert len(_assert_matches_oracle(a5(), 10)) == 1
    assert len(_assert_matches_oracle(a5(), 60)) == 1
    assert _assert_matches_oracle(a5(), 15) == []
    assert _assert_matches_oracle(a5(), 20) == []


def test_s5_subgroups_match_oracle():
    _assert_matches_oracle(s5(), 5)
    _assert_matches_oracle(s5(), 10)
    _assert_matches_oracle(s5(), 20)
    _assert_matches_oracle(s5(), 60)
    _assert_matches_oracle(s5(), 120)


def test_f110_subgroups_match_oracle():
    # n5 = 11 here: the pair route must cover the non-normal Sylow case
    _assert_matches_oracle(f110(), 5)
    _assert_matches_oracle(f110(), 10)
    _assert_matches_oracle(f110(), 55)
    _assert_matches_oracle(f110(), 110)


def test_sl25_subgroups_match_oracle():
    _assert_matches_oracle(sl25(), 5)
    _assert_matches_oracle(sl25(), 10)
    _assert_matches_oracle(sl25(), 20)
    _assert_matches_oracle(sl25(), 40)
    assert _assert_matches_oracle(sl25(), 60) == []
    _assert_matches_oracle(sl25(), 120)


def test_subgroup_search_is_seed_deterministic():
    a = find_subgroups_of_order(s5(), 20, seed=11)
    b = find_subgroups_of_order(s5(), 20, seed=11)
    assert [s.serialize() for s in a] == [s.serialize() for s in b]


def test_subgroup_search_preconditions():
    with pytest.raises(ValueError):
        find_subgroups_of_order(a5(), 12, seed=0)  # not a multiple of 5
    with pytest.raises(ValueError):
        find_subgroups_of_order(a5(), 25, seed=0)  # 25 unsupported
    with pytest.raises(ValueError):
        find_subgroups_of_order(a5(), 40, seed=0)  # does not divide 60
    with pytest.raises(ValueError):
        find_subgroups_of_order(s5(), 125, seed=0)  # above the cap


# ---------------------------------------------------------------------------
# coset actions and suborbits


def test_coset_action_a5_mod_d10():
    g = a5()
    sub = find_subgroups_of_order(g, 10, seed=0)[0]
    act = coset_action(g, sub)
    assert act.degree == 6
    assert act.kernel_order == 1
    assert act.image.order() == 60
    # coset 0 is the subgroup itself
    assert act.coset_index(np.arange(5, dtype=np.int32)) == 0
    for h in sub.gen_arrays:
        assert act.coset_index(h) == 0


def test_coset_action_generator_consistency():
    g = s5()
    sub = find_subgroups_of_order(g, 20, seed=0)[0]
    act = coset_action(g, sub)
    assert act.degree == 6
    for gi, gen in enumerate(g.gen_arrays):
        moved = act.action_generators[gi]
        for i in range(act.degree):
            assert act.coset_index(gen[act.transversal[i]]) == moved(i)


def test_same_coset_agrees_with_indices():
    g = a5()
    sub = find_subgroups_of_order(g, 10, seed=0)[0]
    act = coset_action(g, sub)
    rng = np.random.default_rng(3)
    elems = [g.random_element(rng) for _ in range(12)]
    for r in elems:
        for s in elems:
            same = act.same_coset(r, s)
            assert same == (act.coset_index(r) == act.coset_index(s))


def test_coset_action_with_kernel():
    # D12 modulo its center: kernel of the action is the center itself
    d12 = PermGroup(
        [perm((0, 1, 2, 3, 4, 5), degree=6), perm((1, 5), (2, 4), degree=6)]
    )
    center = PermGroup([perm((0, 3), (1, 4), (2, 5), degree=6)])
    act = coset_action(d12, center)
    assert act.degree == 6
    assert act.kernel_order == 2
    assert act.image.order() == 6


def test_coset_action_rejects_non_subgroup():
    outside = PermGroup([perm((0, 1), degree=5)])
    with pytest.raises(ValueError):
        coset_action(a5(), outside)


def test_suborbits_of_a5_mod_d10():
    g = a5()
    sub = find_subgroups_of_order(g, 10, seed=0)[0]
    so = suborbits(coset_action(g, sub))
    lengths = sorted(s.length for s in so)
    assert lengths == [1, 5]
    assert all(s.self_paired for s in so)
    covered = sorted(int(x) for s in so for x in s.points)
    assert covered == list(range(6))


def test_suborbit_pairing_is_involution():
    g = s5()
    for m in (10, 20):
        for sub in find_subgroups_of_order(g, m, seed=1):
            so = suborbits(coset_action(g, sub))
            for s in so:
                assert so[s.paired_with].paired_with == s.suborbit_id
                assert len(s.points) == s.length
            assert sum(s.length for s in so) == 120 // m


def test_suborbit_lengths_divide_subgroup_order():
    g = f110()
    sub = find_subgroups_of_order(g, 10, seed=0)[0]
    so = suborbits(coset_action(g, sub))
    assert all(10 % s.length == 0 for s in so)
