"""Check kinds: each takes a scenario plus the descriptor's params and returns a JSON value.

The runner compares the returned value against the descriptor's expected value.
A kind may also register a canonicalizer that rewrites field literals in the
expected value into the same rendered form the computation produces.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable

from .. import lattice as lat
from .. import linalg
from ..cremona import build_cremona, conjugated_group, image_cubic, reverse_quadric
from ..cyclofield import render
from ..grouprep import (
    act_on_form,
    invariant_forms,
    is_invariant,
    small_orbits_on,
    stabilizer,
)
from ..multipoly import MultiPoly, in_span, monomials
from ..projvar import (
    CompleteIntersection,
    base_curve_free,
    classify_singularity,
    contains_curve,
    curve_sings_on_param,
    is_singular_at,
    jacobian_full_rank_at_samples,
    line_intersection,
    lines_pairwise_disjoint,
    linear_system_dim,
    pencil_singular_parameters,
    point_on_curve,
)
from .scenario import RegistryError, Scenario


class MissingInput(Exception):
    """An optional registry input is absent; the check is skipped with this reason."""


KINDS: dict[str, Callable] = {}
CANON: dict[str, Callable] = {}


def kind(name: str, canon: Callable | None = None):
    def deco(fn):
        KINDS[name] = fn
        if canon is not None:
            CANON[name] = canon
        return fn

    return deco


def _census_dict(census: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(census.items())}


def _ratio(sc: Scenario, text: str) -> str:
    a1, a2 = sc.parameter(text)
    return "[" + render(a1 / a2) + ":1]" if not a2.is_zero() else "[1:0]"


def _orbit_name(sc: Scenario, orbit, candidates) -> str | None:
    for name in candidates:
        if sc.orbit(name).key() == orbit.key():
            return name
    return None


def _type_census(reports) -> dict[str, int]:
    out: dict[str, int] = {}
    for r in reports:
        out[r.type] = out.get(r.type, 0) + 1
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# groups, orbits, invariants

@kind("group_census")
def group_census(sc: Scenario, group: str) -> dict:
    G = sc.group(group)
    return {"order": G.order, "census": _census_dict(G.order_census()), "honest_lift": G.honest_lift}


@kind("orbit")
def orbit(sc: Scenario, point: str) -> dict:
    e = sc.point_entry(point)
    orb = sc.orbit(point)
    G = sc.group(e["group"])
    stab = stabilizer(sc.point(point), G)
    out = {"length": len(orb), "stabilizer": stab.order, "orbit_stabilizer": len(orb) * stab.order == G.order}
    if e.get("on"):
        forms = sc.variety(e["on"])
        out["on_variety"] = all(f.evaluate(list(p.coords)).is_zero() for p in orb.points for f in forms)
    return out


@kind("stabilizer")
def stabilizer_check(sc: Scenario, point: str) -> dict:
    G = sc.group(sc.point_entry(point)["group"])
    st = stabilizer(sc.point(point), G)
    return {"order": st.order, "census": _census_dict(st.census())}


@kind("orbit_scan")
def orbit_scan(sc: Scenario, group: str, variety: str, max_len: int, points: list[str]) -> dict:
    G = sc.group(group)
    scan = small_orbits_on(G, sc.variety(variety), max_len)
    names = []
    unmatched = 0
    for o in scan.orbits:
        n = _orbit_name(sc, o, points)
        if n is None:
            unmatched += 1
        else:
            names.append(n)
    return {
        "lengths": scan.lengths,
        "matched": sorted(names),
        "unmatched": unmatched,
        "fixed_curve_families": len(scan.curve_families),
        "outside_field": len(scan.outside_field),
    }


@kind("points_on_variety")
def points_on_variety(sc: Scenario, variety: str, points: list[str]) -> dict:
    forms = sc.variety(variety)
    on, off = [], []
    for n in points:
        p = list(sc.point(n).coords)
        (on if all(f.evaluate(p).is_zero() for f in forms) else off).append(n)
    return {"on": sorted(on), "off": sorted(off)}


@kind("invariant_dim")
def invariant_dim(sc: Scenario, group: str, degree: int, contains: list[str] = ()) -> dict:
    basis = invariant_forms(sc.group(group), degree)
    return {"dim": len(basis), "contains": {n: in_span(sc.form(n), basis) for n in contains}}


@kind("is_invariant")
def is_invariant_check(sc: Scenario, group: str, form: str) -> dict:
    ok, scalars = is_invariant(sc.form(form), sc.group(group))
    return {"invariant": ok, "scalars": [render(c) if c is not None else None for c in scalars]}


# ---------------------------------------------------------------------------
# singularities

def _singular_census(sc: Scenario, forms, orbits) -> dict:
    sing = [o for o in orbits if is_singular_at(forms, o.points[0])]
    reports = [classify_singularity(forms, p) for o in sing for p in o.points]
    return {
        "singular_points": sum(len(o) for o in sing),
        "singular_orbit_lengths": sorted(len(o) for o in sing),
        "types": _type_census(reports),
    }


@kind("singular_census")
def singular_census(sc: Scenario, group: str, variety: str, max_len: int, orbits_from: str | None = None,
                    points: list[str] = ()) -> dict:
    """Singular points among the small orbits on a variety.

    With ``orbits_from`` the orbits are scanned on that (larger) variety and filtered
    by membership; otherwise the variety itself is scanned.
    """
    G = sc.group(group)
    forms = sc.variety(variety)
    scan = small_orbits_on(G, sc.variety(orbits_from or variety), max_len)
    orbits = [o for o in scan.orbits if all(f.evaluate(list(o.points[0].coords)).is_zero() for f in forms)]
    out = _singular_census(sc, forms, orbits)
    out["orbits_scanned"] = len(orbits)
    sing = [o for o in orbits if is_singular_at(forms, o.points[0])]
    out["singular_orbits"] = sorted(filter(None, (_orbit_name(sc, o, points) for o in sing)))
    return out


@kind("classify_point")
def classify_point(sc: Scenario, variety: str, point: str) -> dict:
    forms = sc.variety(variety)
    p = sc.point(point)
    if not is_singular_at(forms, p):
        return {"singular": False}
    return {"singular": True, "type": classify_singularity(forms, p).type}


# ---------------------------------------------------------------------------
# Cremona

@kind("cremona")
def cremona(sc: Scenario, group: str, quadric: str, orbit: str, max_len: int = 20,
            span: list[str] = (), target: str | None = None, equivalence_group: str | None = None,
            singular_candidates: list[str] = ()) -> dict:
    G = sc.group(group)
    X = sc.form(quadric)
    chi = build_cremona(sc.orbit(orbit))
    img = image_cubic(chi, X)
    eq = conjugated_group(chi, G, img)
    Y = img.cubic_source
    scan = small_orbits_on(G, [Y], max_len)
    census = _singular_census(sc, [Y], scan.orbits)
    out = {
        "certified": img.certified,
        "solution_dim": img.solution_dim,
        "involution": chi.involution_certified(),
        "equivariant": eq.ok,
        "reverse_quadric": reverse_quadric(img)[1],
        "singular_points": census["singular_points"],
        "types": census["types"],
        "cubic": str(Y),
    }
    sing = [o for o in scan.orbits if is_singular_at([Y], o.points[0])]
    if singular_candidates:
        out["singular_orbit"] = [_orbit_name(sc, o, singular_candidates) for o in sing]
    if span:
        out["in_span"] = in_span(Y, [sc.form(n) for n in span])
    if target:
        T = sc.form(target)
        out["equals_target"] = _proportional(Y, T)
        if equivalence_group:
            H = sc.group(equivalence_group)
            out["equivalent_to_target"] = any(_proportional(act_on_form(Y, h), T) for h in H.elements)
    return out


def _proportional(a: MultiPoly, b: MultiPoly) -> bool:
    return a.normalized() == b.normalized()


# ---------------------------------------------------------------------------
# pencils

def _pencil_params(sc: Scenario, pencil: str, orbits: list[str]) -> list[str]:
    p = sc.pencil(pencil)
    out = set()
    for name in orbits:
        hits = pencil_singular_parameters(p["A"], p["B"], p["X"], sc.orbit(name).points)
        for h in hits:
            if len(h.points) != len(sc.orbit(name)):
                out.add("partial orbit")
            elif h.parameter is None:
                out.add("every member")
            else:
                a, b = h.parameter
                out.add("[" + render(a / b) + ":1]" if not b.is_zero() else "[1:0]")
    return sorted(out)


def _canon_pencil(sc: Scenario, expected: dict) -> dict:
    out = dict(expected)
    for key in ("params", "params_other_branch"):
        if key in out:
            out[key] = sorted(_ratio(sc, t) for t in out[key])
    return out


@kind("pencil", canon=_canon_pencil)
def pencil(sc: Scenario, pencil: str, orbits: list[str], branches: dict[str, str] | None = None) -> dict:
    """Pencil parameters singular at the given orbits.

    ``branches`` maps a constant to its Galois-conjugate value; the computation is
    repeated with that substitution and must produce the same set of parameters.
    """
    out = {"params": _pencil_params(sc, pencil, orbits)}
    if branches:
        other = sc.with_constants(**branches)
        out["params_other_branch"] = _pencil_params(other, pencil, orbits)
    return out


@kind("pencil_orbit_members")
def pencil_orbit_members(sc: Scenario, pencil: str, orbits: list[str]) -> dict:
    """For orbits off the base locus: the unique member through the orbit is singular there."""
    p = sc.pencil(pencil)
    A, B, X = p["A"], p["B"], p["X"]
    result = {}
    for name in orbits:
        pts = sc.orbit(name).points
        v = list(pts[0].coords)
        a0, b0 = A.evaluate(v), B.evaluate(v)
        if a0.is_zero() and b0.is_zero():
            result[name] = "base locus"
            continue
        member = B.scale(a0) - A.scale(b0)  # a1 = -b0, a2 = a0
        forms = [X, member]
        on = all(member.evaluate(list(q.coords)).is_zero() for q in pts)
        sing = on and all(is_singular_at(forms, q) for q in pts)
        result[name] = "singular member" if sing else "smooth at orbit"
    return {"members": result}


@kind("singular_along_curve")
def singular_along_curve(sc: Scenario, curve: str, surface: str, general: str, through: str, avoid: str) -> dict:
    C = sc.curve(curve)
    forms = sc.variety(surface)
    return {
        "degree": C.degree,
        "through_all": all(point_on_curve(C, p) for p in sc.orbit(through).points),
        "meets_other": any(point_on_curve(C, p) for p in sc.orbit(avoid).points),
        "contained": contains_curve(forms, C),
        "rank_drop_identically": curve_sings_on_param(forms, C),
        "general_member_full_rank": jacobian_full_rank_at_samples(sc.variety(general), C),
    }


# ---------------------------------------------------------------------------
# containment and incidence

def _containing_member(sc: Scenario, pencil: str, curve) -> str | None:
    p = sc.pencil(pencil)
    pa, pb = curve.pullback(p["A"]), curve.pullback(p["B"])
    mons = sorted(set(pa.terms) | set(pb.terms))
    rows = [[pa.coefficient(m), pb.coefficient(m)] for m in mons]
    ker = linalg.kernel(rows, 2, sc.field) if rows else []
    if len(ker) != 1:
        return None
    a, b = ker[0]
    return "[" + render(a / b) + ":1]" if not b.is_zero() else "[1:0]"


def _canon_member(sc: Scenario, expected: dict) -> dict:
    out = dict(expected)
    if "containing_member" in out and out["containing_member"] is not None:
        out["containing_member"] = _ratio(sc, out["containing_member"])
    return out


@kind("contain_orbit", canon=_canon_member)
def contain_orbit(sc: Scenario, curve: str, group: str, variety: str | None = None,
                  pencil: str | None = None, member: str | None = None, not_in: str | None = None) -> dict:
    orb = sc.curve_orbit(curve, group)
    forms = sc.variety(variety) if variety else sc.pencil_member(pencil, member)
    out = {"orbit_size": len(orb), "contained": all(contains_curve(forms, c) for c in orb)}
    if not_in:
        out["in_excluded"] = any(contains_curve(sc.variety(not_in), c) for c in orb)
    if pencil:
        out["containing_member"] = _containing_member(sc, pencil, orb[0])
    return out


@kind("ci_contains")
def ci_contains(sc: Scenario, curve: str, container: str) -> dict:
    """A complete-intersection curve lies in V when each form of V is in its ideal (degreewise span)."""
    gens = sc.variety(curve)
    F = sc.field
    ok = True
    for f in sc.variety(container):
        d = f.degree()
        span = [g * MultiPoly.monomial(e, 1, F) for g in gens if g.degree() <= d
                for e in monomials(g.nvars, d - g.degree())]
        if not in_span(f, span):
            ok = False
    deg, genus = lat.ci_curve_genus([g.degree() for g in gens])
    return {"contained": ok, "degree": deg, "genus": genus}


@kind("lines")
def lines_check(sc: Scenario, curve: str, group: str, variety: str | None = None, meet_orbit: str | None = None) -> dict:
    orb = sc.curve_orbit(curve, group)
    out = {"lines": len(orb), "pairwise_disjoint": lines_pairwise_disjoint(orb)}
    if variety:
        out["contained"] = all(contains_curve(sc.variety(variety), c) for c in orb)
    if meet_orbit:
        pts = sc.orbit(meet_orbit)
        meets = [line_intersection(a, b) for a, b in itertools.combinations(orb, 2)]
        hit = [m for m in meets if m is not None]
        out["meeting_pairs"] = len(hit)
        out["meet_only_in_orbit"] = all(m in pts for m in hit)
        per_line = {sum(point_on_curve(L, p) for p in pts.points) for L in orb}
        out["orbit_points_per_line"] = sorted(per_line)
    return out


# ---------------------------------------------------------------------------
# linear systems

@kind("linear_system_dim")
def linear_system_dim_check(sc: Scenario, degree: int, points: list[str] = (), curves: list[str] = (),
                            curve_group: str | None = None, modulo: str | None = None) -> dict:
    cs = []
    for c in curves:
        cs.extend(sc.curve_orbit(c, curve_group) if curve_group else [sc.curve(c)])
    mod = sc.variety(modulo) if modulo else None
    return {"dim": linear_system_dim(degree, sc.points_named(points), cs, mod, field=sc.field)}


@kind("base_curve_free")
def base_curve_free_check(sc: Scenario, degree: int, curves: list[str], group: str, ambient: str,
                          probes: list[str]) -> dict:
    for n in list(curves) + list(probes):
        if not sc.has_curve(n):
            raise MissingInput(f"curve {n!r} is not in the registry (supply it with --registry)")
    cs = [c for n in curves for c in sc.curve_orbit(n, group)]
    ps = [c for n in probes for c in sc.curve_orbit(n, group)]
    cert = base_curve_free(degree, cs, sc.variety(ambient), ps)
    return {"certified": cert.ok, "system_dim": cert.system_dim,
            "witnessed_probes": sum(1 for _, w in cert.witnesses if w is not None), "probes": len(ps)}


# ---------------------------------------------------------------------------
# lattice

def _num(x: Fraction) -> int | str:
    return int(x) if x.denominator == 1 else str(x)


def _k3(h2: int, curves: dict) -> lat.IntersectionContext:
    cls = {}
    for name, c in curves.items():
        if "genus" in c:
            cls[name] = lat.K3CurveClass.from_genus(c["degree"], c["genus"])
        else:
            cls[name] = lat.K3CurveClass(c["degree"], c["square"])
    return lat.k3_context(h2, cls)


@kind("lattice_pair")
def lattice_pair(sc: Scenario, h2: int, curves: dict, a: str, b: str) -> dict:
    ctx = _k3(h2, curves)
    return {"value": _num(ctx.pair(ctx.parse(a), ctx.parse(b)))}


@kind("lattice_rr")
def lattice_rr(sc: Scenario, h2: int, curves: dict, divisor: str) -> dict:
    ctx = _k3(h2, curves)
    return {"h0_lower": _num(lat.rr_h0_lower(ctx.parse(divisor)))}


@kind("lattice_triple")
def lattice_triple(sc: Scenario, ambient: str, curves: list, classes: list[str]) -> dict:
    ctx = lat.blowup_context(ambient, [tuple(c) for c in curves])
    a, b, c = (ctx.parse(t) for t in classes)
    return {"value": _num(ctx.triple(a, b, c))}


@kind("lattice_anticanonical")
def lattice_anticanonical(sc: Scenario, ambient: str, curves: list) -> dict:
    return {"value": _num(lat.anticanonical_cube(ambient, [tuple(c) for c in curves]))}


@kind("lattice_det")
def lattice_det(sc: Scenario, matrix: list) -> dict:
    return {"value": _num(lat.det(matrix))}


@kind("lattice_degeneracy")
def lattice_degeneracy(sc: Scenario, f2: int, deg_f: int, c2: int, deg_c: int, h2: int) -> dict:
    roots = lat.degeneracy_solve(f2, deg_f, c2, deg_c, h2)
    adm = [r for r in roots if r.admissible]
    return {
        "admissible": [_num(r.value) for r in adm],
        "same_class": [r.same_class for r in adm],
        "rational_roots": [_num(r.value) for r in roots],
    }


@kind("lattice_genus")
def lattice_genus(sc: Scenario, ci: list | None = None, square: int | None = None) -> dict:
    if ci is not None:
        d, g = lat.ci_curve_genus(ci)
        return {"degree": d, "genus": g}
    return {"genus": lat.adjunction_genus(square)}


@kind("lattice_hodge")
def lattice_hodge(sc: Scenario, degree: int, h2: int) -> dict:
    hb = lat.hodge_bound(degree, h2)
    return {"ratio": _num(hb.ratio), "bound": hb.bound, "strict_even_bound": hb.strict_even_bound}


def _canon_ruled(sc: Scenario, expected: dict) -> dict:
    out = dict(expected)
    ctx = lat.ruled_surface_context()
    for key in ("E_restriction", "restriction"):
        if key in out:
            out[key] = str(ctx.parse(out[key]))
    return out


@kind("lattice_ruled", canon=_canon_ruled)
def lattice_ruled(sc: Scenario, candidates: list, printed_e_restriction: str = "s - 5f") -> dict:
    rep = lat.ruled_restriction_check(candidates=[tuple(c) for c in candidates],
                                      printed_e_restriction=printed_e_restriction)
    return {
        "E_restriction": str(rep.e_restriction),
        "restriction": str(rep.restriction),
        "degree_bounds": {f"{a},{b}": v for (a, b), v in rep.degree_bounds.items()},
        "excluded": {f"{a},{b}": v for (a, b), v in rep.excluded.items()},
        "diagonal_degree": _num(rep.diagonal_degree),
    }


def run_kind(sc: Scenario, name: str, params: dict):
    if name not in KINDS:
        raise RegistryError(f"unknown check kind {name!r}")
    return KINDS[name](sc, **params)


def canonical_expected(sc: Scenario, name: str, expected):
    fn = CANON.get(name)
    return fn(sc, expected) if fn else expected
