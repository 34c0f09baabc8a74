from __future__ import annotations

import itertools

import pytest

from a5geom.cyclofield import FieldSpec
from a5geom.grouprep import (
    GroupError,
    LinearMap,
    ProjPoint,
    act_on_form,
    enumerate_group,
    fixed_locus,
    identity_map,
    invariant_forms,
    is_invariant,
    orbit_of,
    reynolds,
    small_orbits_on,
    stabilizer,
    subgroup_from,
    subgroups,
)
from a5geom.multipoly import variables

from oracles import brute_stabilizer_order, permutation_census

F = FieldSpec(120)
x = variables(5, F)


def test_a5_census_against_permutation_oracle(sc):
    even = [p for p in itertools.permutations(range(5))
            if sum(1 for i, j in itertools.combinations(range(5), 2) if p[i] > p[j]) % 2 == 0]
    oracle = permutation_census(even)
    for key in ("A5-standard", "A5-nonstandard"):
        G = sc.group(key)
        assert G.order == 60
        assert G.order_census() == oracle == {1: 1, 2: 15, 3: 20, 5: 24}
    assert sc.group("S5-nonstandard").order_census() == permutation_census(list(itertools.permutations(range(5))))


def test_identity_group_and_errors():
    G = enumerate_group([identity_map(5, F)])
    assert G.order == 1
    with pytest.raises(GroupError):
        enumerate_group([])
    with pytest.raises(GroupError):
        enumerate_group([LinearMap([[1, 0], [0, 0]], F)])
    with pytest.raises(GroupError):
        enumerate_group([LinearMap([[1, 1], [0, 1]], F)], bound=50)


def test_group_closed_under_products(sc):
    G = sc.group("A5-nonstandard")
    keys = {g.projective_key() for g in G.elements}
    for g in G.elements[:12]:
        for h in G.elements:
            assert (g @ h).projective_key() in keys


def test_projective_point_normalization():
    p = ProjPoint([0, 2, 4, 0, 6], F)
    assert p == ProjPoint([0, 1, 2, 0, 3], F)
    with pytest.raises(ValueError):
        ProjPoint([0, 0, 0, 0, 0], F)
    assert str(ProjPoint.parse("[1:z4:0:0:1]", F)) == "[1:z4:0:0:1]"


def test_orbit_examples(sc):
    G = sc.group("A5-standard")
    z4, z5 = F.zeta(4), F.zeta(5)
    assert len(orbit_of(ProjPoint([1, 1, 1, 2 * z4, 1], F), G)) == 5
    assert len(orbit_of(ProjPoint([1, z5, z5 ** 2, z5 ** 3, z5 ** 4], F), G)) == 12
    T = enumerate_group([identity_map(5, F)])
    assert len(orbit_of(ProjPoint([1, 2, 3, 4, 5], F), T)) == 1


def test_orbit_is_invariant_set(sc):
    G = sc.group("A5-nonstandard")
    orb = sc.orbit("ns.S12")
    for g in G.generators:
        assert {g.act(p) for p in orb.points} == set(orb.points)


def test_stabilizer_examples_against_brute_force(sc):
    Gns = sc.group("A5-nonstandard")
    st = stabilizer(sc.point("ns.S5"), Gns)
    assert st.order == 12 == brute_stabilizer_order(Gns, sc.point("ns.S5"))
    assert st.census() == {1: 1, 2: 3, 3: 8}  # A4
    G = sc.group("A5-standard")
    assert stabilizer(sc.point("Y1.S15"), G).order == 4 == brute_stabilizer_order(G, sc.point("Y1.S15"))
    assert stabilizer(sc.point("std.generic"), G).order == 1


def test_invariant_forms_examples(sc):
    std, ns = sc.group("A5-standard"), sc.group("A5-nonstandard")
    assert len(invariant_forms(std, 2)) == 2
    q = invariant_forms(ns, 2)
    assert len(q) == 1 and q[0].normalized() == sc.form("X2").normalized()
    cub = invariant_forms(ns, 3)
    assert len(cub) == 2


def test_reynolds_output_is_invariant(sc):
    G = sc.group("A5-nonstandard")
    r = reynolds(x[0] ** 2 * x[1], G)
    for g in G.generators:
        assert act_on_form(r, g) == r


def test_invariant_dimension_independent_of_generators(sc):
    G = sc.group("A5-nonstandard")
    a, b = G.generators
    H = enumerate_group([a @ b, b])
    assert H.order == 60
    assert len(invariant_forms(H, 3)) == len(invariant_forms(G, 3)) == 2


def test_is_invariant_examples(sc):
    ns = sc.group("A5-nonstandard")
    ok, scal = is_invariant(sc.form("X2"), ns)
    assert ok and all(c == 1 for c in scal)
    assert is_invariant(sc.form("Y2"), ns)[0]
    assert not is_invariant(x[0], sc.group("A5-standard"))[0]


def test_fixed_locus_examples(sc):
    G = sc.group("A5-standard")
    five = next(i for i, o in enumerate(G.orders()) if o == 5)
    spaces = fixed_locus(subgroup_from(G, [five]))
    assert sorted(len(s) for s in spaces) == [1, 1, 1, 1, 1]
    X1 = sc.form("X1")
    on = [ProjPoint(s[0]) for s in spaces if X1.evaluate(s[0]).is_zero()]
    # two fixed points in each length-12 orbit
    assert len(on) == 4
    assert sum(p in sc.orbit("std.S12") for p in on) == 2
    assert sum(p in sc.orbit("std.S12p") for p in on) == 2
    triv = subgroup_from(G, [])
    assert len(fixed_locus(triv)) == 1 and len(fixed_locus(triv)[0]) == 5
    # a double transposition in the permutation action: eigenspaces of dimension 3 and 2
    dt = next(i for i, g in enumerate(G.elements)
              if G.orders()[i] == 2 and sum(1 for k in range(5) if g.rows[k][k] == 1) == 1)
    assert sorted(len(s) for s in fixed_locus(subgroup_from(G, [dt]))) == [2, 3]


def test_subgroup_scan_contains_a4_and_d10(sc):
    G = sc.group("A5-standard")
    orders = {s.order for s in subgroups(G)}
    assert {2, 3, 4, 5, 6, 10, 12} <= orders


def test_small_orbits_examples(sc):
    scan = small_orbits_on(sc.group("A5-standard"), sc.form("X1"), 19)
    assert scan.lengths == [5, 5, 10, 10, 12, 12]
    assert small_orbits_on(sc.group("A5-nonstandard"), sc.form("X2"), 19).lengths == [5, 5, 12, 12]
    y2 = small_orbits_on(sc.group("A5-nonstandard"), sc.form("Y2"), 20)
    assert y2.lengths == [5, 12, 12, 15, 20]
    assert not y2.outside_field
    with pytest.raises(ValueError):
        small_orbits_on(sc.group("A5-standard"), sc.form("X1"), 61)


def test_small_orbits_report_fixed_curves(sc):
    scan = small_orbits_on(sc.group("A5-nonstandard"), sc.form("Y2"), 30)
    assert scan.curve_families and all(f.subgroup_order == 2 for f in scan.curve_families)
