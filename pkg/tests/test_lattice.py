from __future__ import annotations

from fractions import Fraction

import pytest

from a5geom.lattice import (
    BlownUpCurve,
    K3CurveClass,
    LatticeError,
    adjunction_genus,
    anticanonical_cube,
    blowup_context,
    ci_curve_genus,
    degeneracy_matrix,
    degeneracy_solve,
    det,
    hodge_bound,
    k3_context,
    ruled_restriction_check,
    ruled_surface_context,
    rr_h0_lower,
)


def _pair_oracle(a, b, h2, deg, c2):
    # (aH - C).(bH - C) expanded by hand
    return a * b * h2 - (a + b) * deg + c2


def _triple_oracle(a, b, c, h3, he2, e3):
    # (aH - E)(bH - E)(cH - E) with H^2 E = 0
    return a * b * c * h3 + (a + b + c) * he2 - e3


def _det3(M):
    (a, b, c), (d, e, f), (g, h, i) = M
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def test_k3_pair_examples():
    ctx = k3_context(6, {"C": K3CurveClass.from_genus(12, 0)})
    D = 4 * ctx["H"] - ctx["C"]
    assert ctx.pair(D, D) == -2 == _pair_oracle(4, 4, 6, 12, -2)
    ctx = k3_context(6, {"C": K3CurveClass.from_genus(12, 5)})
    v = ctx.pair(ctx.parse("3H - C"), ctx.parse("4H - C"))
    assert v == -4 == _pair_oracle(3, 4, 6, 12, 8)


def test_parse_matches_arithmetic():
    ctx = k3_context(6, {"C": K3CurveClass(12, 8)})
    assert ctx.parse("3H - C") == 3 * ctx["H"] - ctx["C"]
    assert ctx.parse("1/2 H") == ctx["H"] * Fraction(1, 2)
    with pytest.raises(LatticeError):
        ctx.parse("3H - Z")


def test_odd_self_intersection_rejected():
    with pytest.raises(LatticeError):
        K3CurveClass(5, -1)
    with pytest.raises(LatticeError):
        adjunction_genus(3)
    assert adjunction_genus(-2) == 0 and adjunction_genus(8) == 5


def test_riemann_roch_examples():
    ctx = k3_context(6, {"C": K3CurveClass.from_genus(12, 10)})
    assert rr_h0_lower(ctx.parse("3H - C")) == 2
    ctx = k3_context(6, {"Z": K3CurveClass.from_genus(8, 0)})
    D = ctx.parse("3H - Z")
    assert ctx.pair(D, D) == 4 and rr_h0_lower(D) == 4


def test_hodge_examples():
    hb = hodge_bound(12, 6)
    assert hb.ratio == 24 and hb.bound == 24 and hb.strict_even_bound == 22 and hb.equality_possible
    hb = hodge_bound(16, 6)
    assert hb.ratio == Fraction(128, 3) and hb.bound == 42 and hb.strict_even_bound == 42
    assert hb.admits(42) and not hb.admits(44)
    with pytest.raises(LatticeError):
        hodge_bound(3, 0)


def test_ci_genus_examples():
    assert ci_curve_genus([1, 2, 3]) == (6, 4)
    assert ci_curve_genus([1, 1, 2]) == (2, 0)
    with pytest.raises(LatticeError):
        ci_curve_genus([1, 2])


def test_det_examples():
    M = [[6, 8, 4], [8, -2, 7], [4, 7, 0]]
    assert det(M) == 186 == _det3(M)
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[1, 2], [2, 4]]) == 0
    with pytest.raises(LatticeError):
        det([[1, 2, 3], [4, 5, 6]])


def test_degeneracy_examples():
    roots = degeneracy_solve(-2, 16, -2, 16, 6)
    adm = [r for r in roots if r.admissible]
    assert [r.value for r in adm] == [-2] and adm[0].same_class
    for r in roots:
        assert det(degeneracy_matrix(-2, r.value, 16, -2, 16, 6)) == 0
    roots = degeneracy_solve(-10, 10, 16, 16, 6)
    assert [r.value for r in roots if r.admissible] == [0]
    assert det(degeneracy_matrix(-10, 0, 10, 16, 16, 6)) == 0


def test_blowup_triple_examples():
    lines6 = [(1, 0)] * 6
    ctx = blowup_context("cubic", lines6)
    v = ctx.triple(ctx.parse("3H - E"), ctx.parse("2H - E"), ctx.parse("2H - E"))
    assert v == -6 == _triple_oracle(3, 2, 2, 3, -6, 0)
    ctx = blowup_context("cubic", [(1, 0)] * 10)
    v = ctx.triple(ctx.parse("4H - E"), ctx.parse("2H - E"), ctx.parse("2H - E"))
    assert v == -32 == _triple_oracle(4, 2, 2, 3, -10, 0)
    ctx = blowup_context("quadric", [(8, 0), (8, 0)])
    v = ctx.triple(ctx.parse("3H - E"), ctx.parse("3H - E"), ctx.parse("5H - E"))
    # E^3 = sum (2 - 2g - 3 deg) = 2 * (2 - 24)
    assert v == -42 == _triple_oracle(3, 3, 5, 2, -16, -44)
    ctx = blowup_context(2)
    assert ctx.triple(3 * ctx["H"], 3 * ctx["H"], 3 * ctx["H"]) == 54


def test_anticanonical_examples():
    assert anticanonical_cube("quadric", [(8, 0)]) == 4
    assert anticanonical_cube("quadric", [(10, 6)]) == 4
    assert anticanonical_cube("quadric") == 54
    assert anticanonical_cube("cubic") == 24


def test_blowup_rejects_bad_input():
    with pytest.raises(LatticeError):
        blowup_context(5)
    with pytest.raises(LatticeError):
        blowup_context("quadric", [BlownUpCurve(0, 0)])
    with pytest.raises(LatticeError):
        blowup_context("quadric", [(3, -1)])


def test_mixed_context_is_rejected():
    surf = k3_context(6)
    three = blowup_context("quadric")
    with pytest.raises(LatticeError):
        surf.triple(surf["H"], surf["H"], surf["H"])
    with pytest.raises(LatticeError):
        three.pair(three["H"], three["H"])
    with pytest.raises(LatticeError):
        surf["H"] + three["H"]


def test_ruled_restriction():
    rep = ruled_restriction_check()
    ctx = rep.e_restriction.ctx
    assert str(rep.e_restriction) == str(ruled_surface_context().parse("-s + 5f"))
    assert ctx.pair(rep.e_restriction, rep.e_restriction) == -10
    assert ctx.pair(rep.e_restriction, ctx["f"]) == -1
    assert rep.restriction == ctx.parse("s + 3f")
    assert rep.diagonal_degree == 4
    assert rep.ok and all(rep.excluded.values())
    assert not rep.printed_e_restriction_agrees
