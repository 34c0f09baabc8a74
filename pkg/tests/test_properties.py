"""Randomized exact property suites (1,000 trials each under the "exact" profile)."""

from __future__ import annotations

import functools
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from a5geom.cyclofield import FieldSpec, parse_cyc, render
from a5geom.grouprep import ProjPoint, orbit_of, stabilizer
from a5geom.lattice import blowup_context, k3_context, K3CurveClass
from a5geom.multipoly import MultiPoly, monomials
from a5geom.verify.scenario import Scenario

from oracles import close, embed, numeric_eval

F = FieldSpec(120)
SMALL = st.integers(-5, 5)


@functools.cache
def _scenario() -> Scenario:
    return Scenario.load()


@st.composite
def elems(draw, max_terms: int = 4):
    terms = draw(st.lists(st.tuples(st.integers(0, 119), SMALL, st.integers(1, 3)), max_size=max_terms))
    a = F.zero
    for j, num, den in terms:
        a = a + F(Fraction(num, den)) * F.zpow(j)
    return a


nonzero = elems().filter(lambda a: not a.is_zero())


@st.composite
def monomial_coeffs(draw):
    num = draw(st.integers(1, 5)) * draw(st.sampled_from([1, -1]))
    return F(Fraction(num, draw(st.integers(1, 3)))) * F.zpow(draw(st.integers(0, 119)))


@st.composite
def forms(draw, degree: int | None = None, nvars: int = 5):
    d = degree if degree is not None else draw(st.integers(1, 3))
    basis = monomials(nvars, d)
    chosen = draw(st.lists(st.sampled_from(basis), min_size=1, max_size=4, unique=True))
    terms = {e: draw(monomial_coeffs()) + draw(elems(1)) for e in chosen}
    terms = {e: c for e, c in terms.items() if not c.is_zero()} or {chosen[0]: F.one}
    return MultiPoly(F, nvars, terms)


points = st.lists(elems(2), min_size=5, max_size=5)


@st.composite
def sparse_linear(draw):
    idx = draw(st.lists(st.integers(0, 4), min_size=1, max_size=2, unique=True))
    return MultiPoly(F, 5, {tuple(1 if j == i else 0 for j in range(5)): draw(monomial_coeffs()) for i in idx})


linear_maps = st.lists(sparse_linear(), min_size=5, max_size=5)


# field

@given(elems(), elems(), elems())
def test_field_ring_axioms(a, b, c):
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero and a * F.one == a


@given(nonzero, elems())
def test_field_division(a, b):
    assert a * a.inverse() == F.one
    assert (b / a) * a == b


@given(elems(3), elems(3))
def test_embedding_is_a_homomorphism(a, b):
    assert close(embed(a + b), embed(a) + embed(b), 1e-9)
    assert close(embed(a * b), embed(a) * embed(b), 1e-8)


@given(elems(), elems(), st.sampled_from([7, 11, 13, 49, 119]))
def test_galois_is_multiplicative(a, b, k):
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)


@given(elems())
def test_render_parse_round_trip(a):
    assert parse_cyc(render(a), F) == a


# polynomials

@given(forms())
def test_euler_identity(f):
    d = f.degree()
    x = [MultiPoly.linear([1 if j == i else 0 for j in range(5)], F) for i in range(5)]
    euler = MultiPoly.zero(5, F)
    for i in range(5):
        euler = euler + x[i] * f.partial(i)
    assert euler == f.scale(F(d))


@given(forms(), points, nonzero)
def test_homogeneity(f, p, lam):
    assert f.evaluate([lam * c for c in p]) == lam ** f.degree() * f.evaluate(p)


@given(forms(), linear_maps, linear_maps)
def test_substitution_functoriality(f, g, h):
    left = f.substitute([gi.substitute(h) for gi in g])
    right = f.substitute(g).substitute(h)
    assert left == right


@given(forms(), linear_maps, points)
def test_substitution_commutes_with_evaluation(f, g, p):
    lhs = f.substitute(g).evaluate(p)
    assert lhs == f.evaluate([gi.evaluate(p) for gi in g])
    pc = [embed(c) for c in p]
    gc = [numeric_eval(gi, pc) for gi in g]
    scale = max([1.0] + [abs(v) for v in gc]) ** f.degree()
    assert abs(embed(lhs) - numeric_eval(f, gc)) <= 1e-7 * scale


# groups

@given(st.integers(0, 59), st.sampled_from(["std.S5", "std.S10", "std.S12", "Y1.S15", "std.generic"]),
       st.sampled_from(["A5-standard", "A5-nonstandard"]))
def test_orbit_stabilizer(gi, name, key):
    sc = _scenario()
    G = sc.group(key)
    p = G.elements[gi].act(sc.point(name))
    assert len(orbit_of(p, G)) * stabilizer(p, G).order == G.order


# lattices

classes = st.tuples(*[st.integers(-6, 6)] * 3)


def _k3():
    return k3_context(6, {"C": K3CurveClass.from_genus(12, 5), "Z": K3CurveClass.from_genus(8, 0)}, {("C", "Z"): 3})


def _cls(ctx, v):
    out = ctx.zero()
    for g, k in zip(ctx.generators(), v):
        out = out + g * k
    return out


@given(classes, classes, classes, st.integers(-4, 4))
def test_pairing_bilinear_symmetric(u, v, w, k):
    ctx = _k3()
    a, b, c = (_cls(ctx, t) for t in (u, v, w))
    assert ctx.pair(a, b) == ctx.pair(b, a)
    assert ctx.pair(a + b * k, c) == ctx.pair(a, c) + k * ctx.pair(b, c)


@given(st.tuples(SMALL, SMALL), st.tuples(SMALL, SMALL), st.tuples(SMALL, SMALL), st.tuples(SMALL, SMALL),
       st.integers(-4, 4), st.sampled_from(["quadric", "cubic"]), st.integers(1, 10), st.integers(0, 6))
def test_triple_multilinear_symmetric(u, v, w, t, k, amb, deg, genus):
    ctx = blowup_context(amb, [(deg, genus)])
    a, b, c, d = (_cls(ctx, s) for s in (u, v, w, t))
    base = ctx.triple(a, b, c)
    assert base == ctx.triple(b, c, a) == ctx.triple(c, a, b) == ctx.triple(b, a, c)
    assert ctx.triple(a + d * k, b, c) == base + k * ctx.triple(d, b, c)


PROPERTY_TESTS = (
    test_field_ring_axioms, test_field_division, test_embedding_is_a_homomorphism, test_galois_is_multiplicative,
    test_render_parse_round_trip, test_euler_identity, test_homogeneity, test_substitution_functoriality,
    test_substitution_commutes_with_evaluation, test_orbit_stabilizer, test_pairing_bilinear_symmetric,
    test_triple_multilinear_symmetric,
)
