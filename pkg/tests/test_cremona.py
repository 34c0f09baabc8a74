from __future__ import annotations

import pytest

from a5geom.cremona import (
    CremonaError,
    build_cremona,
    conjugated_group,
    image_cubic,
    quadric_gram,
    reverse_quadric,
    target_group,
)
from a5geom.cyclofield import FieldSpec
from a5geom.grouprep import ProjPoint
from a5geom.multipoly import MultiPoly, in_span, variables
from a5geom.projvar import random_points_on_quadric

from oracles import close, embed, numeric_eval

F = FieldSpec(120)
x = variables(5, F)


def _coordinate_points():
    return [ProjPoint([1 if j == i else 0 for j in range(5)], F) for i in range(5)]


def test_build_cremona_errors(sc):
    with pytest.raises(CremonaError):
        build_cremona(sc.orbit("std.S5").points[:4])
    flat = [ProjPoint([1, i, i * i, 0, 0], F) for i in range(4)] + [ProjPoint([0, 0, 1, 0, 0], F)]
    with pytest.raises(CremonaError):
        build_cremona(flat)


def test_coordinate_points_give_identity_frame():
    chi = build_cremona(_coordinate_points())
    assert all(chi.M[i][j] == (1 if i == j else 0) for i in range(5) for j in range(5))
    forms = chi.forms()
    assert forms[0] == x[1] * x[2] * x[3] * x[4]
    assert chi.involution_certified()


def test_image_requires_orbit_on_quadric():
    chi = build_cremona(_coordinate_points())
    Q = sum((v ** 2 for v in x), MultiPoly.zero(5, F))
    with pytest.raises(CremonaError):
        image_cubic(chi, Q)


def test_quadric_gram_reconstructs_form(sc):
    X = sc.form("X2")
    A = quadric_gram(X)
    pt = [F(1), F(2), F.zeta(4), F(-1), F(3)]
    val = sum((pt[i] * A[i][j] * pt[j] for i in range(5) for j in range(5)), F.zero)
    assert val == X.evaluate(pt)


@pytest.fixture(scope="module")
def std_image(sc):
    chi = build_cremona(sc.orbit("std.S5"))
    return chi, image_cubic(chi, sc.form("X1"))


def test_std_image_is_certified(std_image):
    chi, img = std_image
    assert img.certified and img.solution_dim == 1
    assert img.cubic_adapted.degree() == 3 and img.cubic_adapted.is_homogeneous()


def test_image_vanishes_on_fresh_source_points(sc, std_image):
    chi, img = std_image
    X = sc.form("X1")
    base = list(sc.point("std.S5").coords)
    pts = random_points_on_quadric(X, base, 8, seed=11)
    forms = chi.forms()
    for p in pts:
        z = [f.evaluate(p) for f in forms]
        if all(v.is_zero() for v in z):
            continue
        assert img.cubic_adapted.evaluate(z).is_zero()
        zc = [embed(v) for v in z]
        scale = max(abs(v) for v in zc)
        assert close(numeric_eval(img.cubic_adapted, [v / scale for v in zc]), 0, 1e-8)


def test_std_reverse_and_equivariance(sc, std_image):
    chi, img = std_image
    q, ok = reverse_quadric(img)
    assert ok and q.degree() == 2
    rep = conjugated_group(chi, sc.group("A5-standard"), img)
    assert rep.ok and rep.monomial and rep.source_invariant
    assert target_group(chi, sc.group("A5-standard")).order == 60


def test_non_invariant_point_set_is_not_monomial(sc):
    pts = sc.orbit("std.S5").points[:4] + [ProjPoint([1, 2, 3, 4, 6], F)]
    chi = build_cremona(pts)
    with pytest.raises(CremonaError):
        target_group(chi, sc.group("A5-standard"))


def test_ns_image_lies_in_invariant_cubic_span(sc):
    chi = build_cremona(sc.orbit("ns.S5"))
    img = image_cubic(chi, sc.form("X2"))
    assert img.certified
    assert in_span(img.cubic_source, [sc.form("f1"), sc.form("f2")])
