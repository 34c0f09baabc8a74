from __future__ import annotations

import math
from fractions import Fraction

import pytest

from a5geom.cyclofield import (
    FieldError,
    FieldSpec,
    LiteralSyntaxError,
    cyclotomic_poly,
    embed_complex,
    parse_cyc,
    render,
    sqrt6,
)
from a5geom.roots import field_sqrt, quadratic_roots, roots_in_field

from oracles import close, embed

F = FieldSpec(120)


def test_field_spec_degree_is_totient():
    for n in (1, 2, 3, 4, 5, 12, 20, 24, 120):
        phi = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
        assert FieldSpec(n).phi_N == phi
        assert FieldSpec(n).conductor == n


def test_field_spec_rejects_bad_conductor():
    with pytest.raises(FieldError):
        FieldSpec(0)


def test_cyclotomic_poly_small_cases():
    assert list(cyclotomic_poly(1).coeffs()) == [-1, 1]
    assert list(cyclotomic_poly(4).coeffs()) == [1, 0, 1]
    assert list(cyclotomic_poly(5).coeffs()) == [1, 1, 1, 1, 1]
    assert list(cyclotomic_poly(6).coeffs()) == [1, -1, 1]


def test_parse_literal_examples():
    a = parse_cyc("z5^3 + z5^2 + 2", F)
    z5 = F.zeta(5)
    assert a == z5 ** 3 + z5 ** 2 + 2
    assert parse_cyc("0", F).is_zero()
    assert parse_cyc("z4*z4", F) == -1


def test_parse_errors():
    with pytest.raises(LiteralSyntaxError):
        parse_cyc("z5 +", F)
    with pytest.raises(LiteralSyntaxError):
        parse_cyc("x1", F)
    with pytest.raises(FieldError):
        parse_cyc("z7", F)


def test_arithmetic_examples():
    z5 = F.zeta(5)
    assert z5 + z5 ** 2 + z5 ** 3 + z5 ** 4 == -1
    z4 = F.zeta(4)
    assert (4 + 3 * z4) * (4 - 3 * z4) == 25
    z6 = F.zeta(6)
    prod = (z6 - 1) * (-z6)
    assert close(embed(prod), (embed(z6) - 1) * (-embed(z6)))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        F.one / F.zero
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()


def test_embedding_examples():
    assert embed_complex(F.one) == (1.0, 0.0)
    re, im = embed_complex(F.zeta(4))
    assert abs(re) < 1e-12 and abs(im - 1) < 1e-12
    s = sqrt6(F)
    assert s * s == 6
    assert abs(embed_complex(s)[0] - math.sqrt(6)) < 1e-12


def test_embedding_rejects_non_unit():
    with pytest.raises(FieldError):
        embed_complex(F.one, 2)


def test_render_is_minimal():
    assert render(F(Fraction(3, 7))) == "3/7"
    assert render(F.zeta(4)) == "z4"
    assert render(-F.zeta(3)) == "-z3"
    assert render(F.zeta(5) ** 2 + F.zeta(5) ** 3) == "z5^2 + z5^3"


def test_render_round_trip_on_registry_literals():
    literals = ["4+3*z4", "(8 - 3*z6)", "-z5^3 - z5^2 + 1", "63*(z5^3 + z5^2) + 145", "3*z6+5",
                "(z8 + z8^-1)*(z12 + z12^-1)", "z20^6 - z20^4 - 1", "-6+2*(z8 + z8^-1)*(z12 + z12^-1)"]
    for text in literals:
        a = parse_cyc(text, F)
        assert parse_cyc(render(a), F) == a


def test_galois_action():
    z5 = F.zeta(5)
    assert z5.galois(7) == F.zpow(7 * 24)
    assert F.zeta(4).conjugate() == -F.zeta(4)
    with pytest.raises(FieldError):
        z5.galois(2)


def test_sqrt6_branches_are_conjugate():
    s = sqrt6(F)
    others = {s.galois(k) for k in F.units}
    assert others == {s, -s}


def test_field_sqrt_and_quadratic():
    assert field_sqrt(F(-1)) in (F.zeta(4), -F.zeta(4))
    assert field_sqrt(F(2)) is not None  # sqrt 2 = z8 + z8^-1
    assert field_sqrt(F.zeta(5)) is not None
    rs = quadratic_roots(F.one, F.zero, F(-6))
    assert rs is not None and {r * r for r in rs} == {F(6)}
    assert quadratic_roots(F.one, F.zero, F(-7)) is None  # sqrt 7 needs conductor 28


def test_roots_in_field_multiplicities():
    one = F.one
    # (x - 1)^2 (x^2 + 1) (x^2 - 7)
    x_minus_1 = [-one, one]
    p = [one]
    for f in (x_minus_1, x_minus_1, [one, F.zero, one], [F(-7), F.zero, one]):
        out = [F.zero] * (len(p) + len(f) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(f):
                out[i + j] = out[i + j] + a * b
        p = out
    res = roots_in_field(p)
    assert dict(zip([r.key() for r in res.roots], res.multiplicities)) == {
        F(1).key(): 2, F.zeta(4).key(): 1, (-F.zeta(4)).key(): 1}
    assert res.residual_degree == 2
