"""Hypersurfaces, complete intersections and rational curves in projective space."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cyclofield import CycElem, FieldSpec, default_field, render
from .grouprep import (
    FiniteMatrixGroup,
    LinearMap,
    ProjPoint,
    binary_restriction,
    points_on_line,
)
from .multipoly import MultiPoly, monomials
from . import linalg
from .roots import roots_in_field, trim


class VarietyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# varieties

@dataclass
class Hypersurface:
    form: MultiPoly
    name: str = ""

    def __post_init__(self):
        if self.form.is_zero() or not self.form.is_homogeneous():
            raise VarietyError("a hypersurface needs a nonzero homogeneous form")

    @property
    def forms(self) -> list[MultiPoly]:
        return [self.form]

    @property
    def degree(self) -> int:
        return self.form.degree()

    @property
    def field(self) -> FieldSpec:
        return self.form.field

    def contains_point(self, p) -> bool:
        return self.form.evaluate(list(p)).is_zero()


@dataclass
class CompleteIntersection:
    forms: list[MultiPoly]
    name: str = ""

    def __post_init__(self):
        if not self.forms:
            raise VarietyError("a complete intersection needs at least one form")
        for f in self.forms:
            if f.is_zero() or not f.is_homogeneous():
                raise VarietyError("defining forms must be nonzero and homogeneous")

    @property
    def field(self) -> FieldSpec:
        return self.forms[0].field

    @property
    def degrees(self) -> list[int]:
        return [f.degree() for f in self.forms]

    def contains_point(self, p) -> bool:
        return all(f.evaluate(list(p)).is_zero() for f in self.forms)


def _forms(V) -> list[MultiPoly]:
    if isinstance(V, MultiPoly):
        return [V]
    if isinstance(V, (list, tuple)):
        return list(V)
    return list(V.forms)


# ---------------------------------------------------------------------------
# singularities

@dataclass
class SingularityReport:
    point: ProjPoint
    corank: int
    type: str  # "A1", "A2", "smooth" or "other"

    def __str__(self) -> str:
        return f"{self.type} at {self.point} (corank {self.corank})"


def jacobian_at(forms: Sequence[MultiPoly], p: Sequence[CycElem]) -> list[list[CycElem]]:
    return [[g.evaluate(p) for g in f.gradient()] for f in forms]


def is_singular_at(V, p) -> bool:
    """Jacobian criterion: rank of the gradients at p is below the number of forms."""
    forms = _forms(V)
    pt = list(p)
    if not all(f.evaluate(pt).is_zero() for f in forms):
        raise VarietyError(f"point {p} is not on the variety")
    F = forms[0].field
    return linalg.rank(jacobian_at(forms, pt), F) < len(forms)


def _hessian(f: MultiPoly, p: Sequence[CycElem]) -> list[list[CycElem]]:
    grads = f.gradient()
    return [[g.partial(j).evaluate(p) for j in range(f.nvars)] for g in grads]


def _chart_index(p: ProjPoint) -> int:
    return next(i for i, c in enumerate(p.coords) if c == 1)


def _restrict_quadratic(H: list[list[CycElem]], basis: list[list[CycElem]]) -> list[list[CycElem]]:
    F = basis[0][0].field
    HB = [linalg.matvec(H, b) for b in basis]
    return [[sum((x * y for x, y in zip(bi, hb)), F.zero) for hb in HB] for bi in basis]


def classify_singularity(V, p: ProjPoint) -> SingularityReport:
    """A1/A2 classification in the affine chart centred at p.

    For a hypersurface the quadratic part is the Hessian on the chart hyperplane.
    For a complete intersection with all but one form smooth at p, the last form is
    corrected by a combination of the others to kill its gradient, and its quadratic
    part is taken on the tangent space of the smooth ones; only the A1 case is decided.
    """
    forms = _forms(V)
    Fd = forms[0].field
    pt = list(p.coords)
    if not is_singular_at(forms, p):
        return SingularityReport(p, 0, "smooth")
    j = _chart_index(p)
    n = len(pt)
    chart = [[Fd.one if i == k else Fd.zero for i in range(n)] for k in range(n) if k != j]
    if len(forms) == 1:
        f = forms[0]
        Q = _restrict_quadratic(_hessian(f, pt), chart)
        corank = len(chart) - linalg.rank(Q, Fd)
        if corank == 0:
            return SingularityReport(p, 0, "A1")
        if corank == 1:
            k = linalg.kernel(Q, len(chart), Fd)[0]
            direction = [Fd.zero] * n
            for c, b in zip(k, chart):
                direction = [d + c * x for d, x in zip(direction, b)]
            coeffs = binary_restriction(f, direction, pt)  # f(s*direction + t*p)
            if not coeffs[3].is_zero():
                return SingularityReport(p, 1, "A2")
        return SingularityReport(p, corank, "other")
    # complete intersection: smooth part = all forms but the last
    smooth, last = forms[:-1], forms[-1]
    Js = jacobian_at(smooth, pt)
    if linalg.rank(Js, Fd) < len(smooth):
        return SingularityReport(p, -1, "other")
    gl = [g.evaluate(pt) for g in last.gradient()]
    # solve gl = sum lam_i Js_i
    cols = linalg.transpose(Js)
    aug = [row + [-x] for row, x in zip(cols, gl)]
    ker = linalg.kernel(aug, len(smooth) + 1, Fd)
    sol = next(v for v in ker if not v[-1].is_zero())
    lam = [c / sol[-1] for c in sol[:-1]]
    H = last
    for l, f in zip(lam, smooth):
        H = H - f.scale(l)
    # tangent space of the smooth part inside the chart
    rows = [list(r) for r in Js] + [[Fd.one if i == j else Fd.zero for i in range(n)]]
    T = linalg.kernel(rows, n, Fd)
    Q = _restrict_quadratic(_hessian(H, pt), T)
    corank = len(T) - linalg.rank(Q, Fd)
    return SingularityReport(p, corank, "A1" if corank == 0 else "other")


# ---------------------------------------------------------------------------
# rational curves

@dataclass
class RationalCurve:
    """Parametrization [s:t] -> (phi_1(s,t), ..., phi_n(s,t)) by binary forms of a common degree."""

    forms: list[MultiPoly]
    name: str = ""

    def __post_init__(self):
        degs = {f.degree() for f in self.forms if not f.is_zero()}
        if len(degs) != 1 or any(f.nvars != 2 or not f.is_homogeneous() for f in self.forms):
            raise VarietyError("parametrizing forms must be binary forms of a common degree")

    @property
    def field(self) -> FieldSpec:
        return next(f for f in self.forms if not f.is_zero()).field

    @property
    def degree(self) -> int:
        return next(f.degree() for f in self.forms if not f.is_zero())

    @property
    def n(self) -> int:
        return len(self.forms)

    def point(self, s, t) -> ProjPoint:
        return ProjPoint([f.evaluate([s, t]) if not f.is_zero() else self.field.zero for f in self.forms])

    def coefficient_matrix(self) -> list[list[CycElem]]:
        """Rows = coordinates, columns = coefficients of s^e, s^(e-1) t, ..., t^e."""
        e = self.degree
        return [[f.coefficient((e - k, k)) for k in range(e + 1)] for f in self.forms]

    def span(self) -> list[list[CycElem]]:
        return linalg.row_space(linalg.transpose(self.coefficient_matrix()), self.field)

    def span_key(self) -> tuple:
        return tuple(tuple(c.key() for c in r) for r in self.span())

    def transform(self, g: LinearMap) -> "RationalCurve":
        Fd = self.field
        out = []
        for row in g.rows:
            acc = MultiPoly.zero(2, Fd)
            for c, f in zip(row, self.forms):
                if not c.is_zero() and not f.is_zero():
                    acc = acc + f.scale(c)
            out.append(acc)
        return RationalCurve(out, self.name)

    def pullback(self, form: MultiPoly) -> MultiPoly:
        """form(phi(s,t)) as a binary form."""
        Fd = self.field
        imgs = [f if not f.is_zero() else MultiPoly.zero(2, Fd) for f in self.forms]
        return form.substitute(imgs)

    @classmethod
    def line(cls, u: Sequence[CycElem], v: Sequence[CycElem], name: str = "") -> "RationalCurve":
        Fd = u[0].field
        s, t = MultiPoly.var(0, 2, Fd), MultiPoly.var(1, 2, Fd)
        return cls([s.scale(a) + t.scale(b) for a, b in zip(u, v)], name)

    def __str__(self) -> str:
        return "(" + ", ".join(str(f).replace("x1", "s").replace("x2", "t") for f in self.forms) + ")"


def line_from_equations(eqs: Sequence[MultiPoly], name: str = "") -> RationalCurve:
    """The line cut out by linear forms (their common kernel must be 2-dimensional)."""
    Fd = eqs[0].field
    n = eqs[0].nvars
    rows = [[f.coefficient(tuple(1 if i == j else 0 for i in range(n))) for j in range(n)] for f in eqs]
    ker = linalg.kernel(rows, n, Fd)
    if len(ker) != 2:
        raise VarietyError(f"linear forms cut out a subspace of projective dimension {len(ker) - 1}")
    return RationalCurve.line(ker[0], ker[1], name)


def _find_point_on_plane_conic(q: MultiPoly, basis: list[list[CycElem]]) -> list[CycElem] | None:
    Fd = q.field
    b = basis
    lines = [(b[i], b[j]) for i, j in itertools.combinations(range(3), 2)]
    for k in range(1, 4):
        for sgn in (1, -1):
            for i, j, l in itertools.permutations(range(3)):
                lines.append(([x + sgn * k * y for x, y in zip(b[i], b[j])], b[l]))
    for u, v in lines:
        pts, _, whole = points_on_line([q], u, v)
        if whole:
            return list(u)
        if pts:
            return pts[0]
    return None


def conic_from_plane(X: MultiPoly, plane_eqs: Sequence[MultiPoly], name: str = "") -> RationalCurve:
    """Parametrize the conic (plane cut out by linear forms) intersected with the quadric X."""
    Fd = X.field
    n = X.nvars
    rows = [[f.coefficient(tuple(1 if i == j else 0 for i in range(n))) for j in range(n)] for f in plane_eqs]
    basis = linalg.kernel(rows, n, Fd)
    if len(basis) != 3:
        raise VarietyError("linear forms do not cut out a plane")
    p0 = _find_point_on_plane_conic(X, basis)
    if p0 is None:
        raise VarietyError("no rational point found on the conic")
    # directions spanning the plane modulo p0
    dirs = [b for b in basis]
    chosen = []
    for d in dirs:
        if linalg.rank([p0] + chosen + [d], Fd) == len(chosen) + 2:
            chosen.append(d)
        if len(chosen) == 2:
            break
    s, t = MultiPoly.var(0, 2, Fd), MultiPoly.var(1, 2, Fd)
    d = [s.scale(a) + t.scale(b) for a, b in zip(chosen[0], chosen[1])]
    Qd = X.substitute(d)
    # bilinear form B(p0, d) = 1/2 sum_i p0_i dX/dx_i (d)
    grad0 = [g.evaluate(p0) for g in X.gradient()]
    Bd = MultiPoly.zero(2, Fd)
    for c, di in zip(grad0, d):
        Bd = Bd + di.scale(c)
    Bd = Bd / 2
    forms = [Qd.scale(a) - (Bd * di).scale(2) for a, di in zip(p0, d)]
    return RationalCurve(forms, name)


def rational_normal_curve(points: Sequence[ProjPoint], name: str = "") -> RationalCurve:
    """The rational normal curve of P^(n-1) through n + 2 points in general position."""
    Fd = points[0].field
    n = len(points[0])
    if len(points) != n + 2:
        raise VarietyError(f"need {n + 2} points")
    P = linalg.transpose([list(p.coords) for p in points[:n]])
    M = linalg.inverse(P, Fd)
    w = linalg.matvec(M, list(points[n].coords))
    if any(x.is_zero() for x in w):
        raise VarietyError("points are not in general position")
    q = [x / y for x, y in zip(linalg.matvec(M, list(points[n + 1].coords)), w)]
    if any(x.is_zero() for x in q) or len({x.key() for x in q}) < n:
        raise VarietyError("points are not in general position")
    a = [x.inverse() for x in q]
    s, t = MultiPoly.var(0, 2, Fd), MultiPoly.var(1, 2, Fd)
    ys = []
    for i in range(n):
        f = MultiPoly.const(1, 2, Fd)
        for j in range(n):
            if j != i:
                f = f * (t - s.scale(a[j]))
        ys.append(f)
    # undo the scaling by w and the change of coordinates
    ys = [y.scale(wi) for y, wi in zip(ys, w)]
    forms = []
    for row in P:
        acc = MultiPoly.zero(2, Fd)
        for c, y in zip(row, ys):
            if not c.is_zero():
                acc = acc + y.scale(c)
        forms.append(acc)
    return RationalCurve(forms, name)


def curve_parameters_of(C: RationalCurve, p: ProjPoint) -> list[tuple[CycElem, CycElem]]:
    """Parameters [s:t] with C(s,t) = p (exact)."""
    Fd = C.field
    pc = list(p.coords)
    minors = []
    for i, j in itertools.combinations(range(C.n), 2):
        m = C.forms[i].scale(pc[j]) - C.forms[j].scale(pc[i])
        if not m.is_zero():
            minors.append(m)
    cands: list[tuple[CycElem, CycElem]] = []
    e = C.degree
    if not minors:
        return []
    m = minors[0]
    uni = trim([m.coefficient((k, m.degree() - k)) for k in range(m.degree() + 1)])
    if m.coefficient((m.degree(), 0)).is_zero():
        cands.append((Fd.one, Fd.zero))
    if len(uni) > 1:
        for r in roots_in_field(uni).roots:
            cands.append((r, Fd.one))
    out = []
    for s, t in cands:
        vals = [f.evaluate([s, t]) if not f.is_zero() else Fd.zero for f in C.forms]
        if any(not v.is_zero() for v in vals) and ProjPoint(vals) == p:
            out.append((s, t))
    return out


def curve_orbit(C: RationalCurve, grp: FiniteMatrixGroup) -> list[RationalCurve]:
    """Distinct images g(C), identified by their linear span (valid for lines and plane conics on a quadric)."""
    seen: dict[tuple, RationalCurve] = {C.span_key(): C}
    frontier = [C]
    while frontier:
        nxt = []
        for c in frontier:
            for g in grp.generators:
                d = c.transform(g)
                k = d.span_key()
                if k not in seen:
                    seen[k] = d
                    nxt.append(d)
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


# ---------------------------------------------------------------------------
# containment and incidence

def contains_curve(V, C: RationalCurve) -> bool:
    return all(C.pullback(f).is_zero() for f in _forms(V))


def contains_curve_by_sampling(V, C: RationalCurve) -> bool:
    """Cross-check: vanishing at deg*e + 1 distinct parameter values."""
    Fd = C.field
    ok = True
    for f in _forms(V):
        for k in range(f.degree() * C.degree + 1):
            pt = [g.evaluate([Fd(k), Fd.one]) if not g.is_zero() else Fd.zero for g in C.forms]
            if not f.evaluate(pt).is_zero():
                ok = False
    return ok


def curve_sings_on_param(V, C: RationalCurve) -> bool:
    """True iff every maximal minor of the Jacobian of V's forms vanishes identically along C."""
    forms = _forms(V)
    if not contains_curve(forms, C):
        raise VarietyError("curve is not contained in the variety")
    k = len(forms)
    grads = [[C.pullback(g) for g in f.gradient()] for f in forms]
    n = len(grads[0])
    for cols in itertools.combinations(range(n), k):
        if k == 1:
            m = grads[0][cols[0]]
        elif k == 2:
            m = grads[0][cols[0]] * grads[1][cols[1]] - grads[0][cols[1]] * grads[1][cols[0]]
        else:
            raise NotImplementedError("only one or two defining forms are supported")
        if not m.is_zero():
            return False
    return True


def jacobian_full_rank_at_samples(V, C: RationalCurve, samples: int = 20, seed: int = 0) -> bool:
    """Whether the Jacobian has full rank at every sampled point of C (used as the negative check)."""
    forms = _forms(V)
    Fd = C.field
    rng = random.Random(seed)
    for _ in range(samples):
        s, t = Fd(rng.randint(-50, 50)), Fd(rng.randint(1, 50))
        pt = [f.evaluate([s, t]) if not f.is_zero() else Fd.zero for f in C.forms]
        if all(x.is_zero() for x in pt):
            continue
        if linalg.rank(jacobian_at(forms, pt), Fd) < len(forms):
            return False
    return True


def _line_basis(L: RationalCurve) -> list[list[CycElem]]:
    if L.degree != 1:
        raise VarietyError("not a line")
    M = L.coefficient_matrix()
    b = linalg.transpose(M)
    if linalg.rank(b, L.field) != 2:
        raise VarietyError("degenerate line")
    return b


def lines_meet(L1: RationalCurve, L2: RationalCurve) -> bool:
    return linalg.rank(_line_basis(L1) + _line_basis(L2), L1.field) <= 3


def lines_pairwise_disjoint(lines: Sequence[RationalCurve]) -> bool:
    for a, b in itertools.combinations(lines, 2):
        if lines_meet(a, b):
            return False
    return True


def line_intersection(L1: RationalCurve, L2: RationalCurve) -> ProjPoint | None:
    """The intersection point of two distinct meeting lines, else None."""
    Fd = L1.field
    b1, b2 = _line_basis(L1), _line_basis(L2)
    if linalg.rank(b1 + b2, Fd) != 3:
        return None
    cols = linalg.transpose([b1[0], b1[1], [-x for x in b2[0]], [-x for x in b2[1]]])
    ker = linalg.kernel(cols, 4, Fd)
    v = ker[0]
    pt = [v[0] * x + v[1] * y for x, y in zip(b1[0], b1[1])]
    return ProjPoint(pt)


def line_through(p: ProjPoint, q: ProjPoint) -> RationalCurve:
    return RationalCurve.line(list(p.coords), list(q.coords))


def point_on_curve(C: RationalCurve, p: ProjPoint) -> bool:
    return bool(curve_parameters_of(C, p))


# ---------------------------------------------------------------------------
# linear systems

def _monomial_pullbacks(C: RationalCurve, d: int, basis) -> list[MultiPoly]:
    Fd = C.field
    imgs = [f if not f.is_zero() else MultiPoly.zero(2, Fd) for f in C.forms]
    cache: dict[tuple, MultiPoly] = {(0,) * len(imgs): MultiPoly.const(1, 2, Fd)}

    def mono(e):
        if e in cache:
            return cache[e]
        i = max(k for k, x in enumerate(e) if x)
        prev = list(e)
        prev[i] -= 1
        v = mono(tuple(prev)) * imgs[i]
        cache[e] = v
        return v

    return [mono(e) for e in basis]


def condition_rows(d: int, points: Iterable = (), curves: Iterable[RationalCurve] = (), nvars: int = 5,
                   field: FieldSpec | None = None) -> tuple[list, list[list[CycElem]]]:
    Fd = field or default_field()
    basis = monomials(nvars, d)
    rows = []
    for p in points:
        pt = list(p)
        rows.append([MultiPoly.monomial(e, 1, Fd).evaluate(pt) for e in basis])
    for C in curves:
        pulls = _monomial_pullbacks(C, d, basis)
        de = d * C.degree
        for k in range(de + 1):
            rows.append([m.coefficient((de - k, k)) for m in pulls])
    return basis, rows


def linear_system(d: int, points: Iterable = (), curves: Iterable[RationalCurve] = (), nvars: int = 5,
                  field: FieldSpec | None = None) -> list[MultiPoly]:
    """Basis of the degree-d forms vanishing at the points and containing the curves."""
    Fd = field or default_field()
    basis, rows = condition_rows(d, points, curves, nvars, Fd)
    ker = linalg.kernel(rows, len(basis), Fd) if rows else linalg.identity(len(basis), Fd)
    return [MultiPoly(Fd, nvars, dict(zip(basis, v))) for v in ker]


def linear_system_dim(d: int, vanish_points: Iterable = (), contain_curves: Iterable[RationalCurve] = (),
                      modulo=None, nvars: int = 5, field: FieldSpec | None = None) -> int:
    """Dimension of the system, optionally of its image in H^0(V, O(d)) for V = modulo."""
    if d < 1:
        raise ValueError("degree must be positive")
    Fd = field or (_forms(modulo)[0].field if modulo is not None else default_field())
    members = linear_system(d, vanish_points, contain_curves, nvars, Fd)
    if modulo is None:
        return len(members)
    basis = monomials(nvars, d)
    mult: list[MultiPoly] = []
    for g in _forms(modulo):
        k = d - g.degree()
        if k >= 0:
            mult.extend(g * MultiPoly.monomial(e, 1, Fd) for e in monomials(nvars, k))
    if not mult:
        return len(members)
    rk = lambda fs: linalg.rank([f.coeff_vector(basis) for f in fs], Fd) if fs else 0
    inter = len(members) + rk(mult) - rk(members + mult)
    return len(members) - inter


@dataclass
class BaseCurveCertificate:
    ok: bool
    system_dim: int
    witnesses: list[tuple[str, MultiPoly | None]] = field(default_factory=list)


def base_curve_free(d: int, contain_curves: Sequence[RationalCurve], ambient, probe_curves: Sequence[RationalCurve],
                    nvars: int = 5) -> BaseCurveCertificate:
    """For each probe curve, exhibit a member of the system that does not contain it."""
    Fd = contain_curves[0].field if contain_curves else _forms(ambient)[0].field
    members = linear_system(d, (), contain_curves, nvars, Fd)
    dim = linear_system_dim(d, (), contain_curves, ambient, nvars, Fd)
    if dim < 2:
        raise VarietyError(f"system has dimension {dim} < 2")
    amb = _forms(ambient)
    cands = list(members)
    for a, b in itertools.combinations(members, 2):
        for k in (1, 2, -1):
            cands.append(a + b.scale(k))
    wit = []
    ok = True
    for C in probe_curves:
        hit = None
        for m in cands:
            # members that are multiples of the ambient form contain every probe on it
            if not C.pullback(m).is_zero():
                hit = m
                break
        wit.append((C.name, hit))
        if hit is None:
            ok = False
    return BaseCurveCertificate(ok, dim, wit)


# ---------------------------------------------------------------------------
# pencils

@dataclass
class PencilHit:
    parameter: tuple[CycElem, CycElem] | None  # None means every member is singular there
    points: list[ProjPoint]

    def ratio(self) -> CycElem | None:
        if self.parameter is None or self.parameter[1].is_zero():
            return None
        return self.parameter[0] / self.parameter[1]

    def __str__(self) -> str:
        if self.parameter is None:
            return f"all members ({len(self.points)} points)"
        a, b = self.parameter
        return f"[{render(a)}:{render(b)}] ({len(self.points)} points)"


def _normalize_param(a: CycElem, b: CycElem) -> tuple[CycElem, CycElem]:
    if not b.is_zero():
        return (a / b, b.field.one)
    return (a.field.one, a.field.zero)


def pencil_singular_parameters(A: MultiPoly, B: MultiPoly, X: MultiPoly,
                               candidate_points: Iterable[ProjPoint]) -> list[PencilHit]:
    """Members [a1:a2] of {a1 A + a2 B = 0} on X that are singular at the candidate points."""
    Fd = X.field
    gX, gA, gB = X.gradient(), A.gradient(), B.gradient()
    hits: dict[tuple | None, PencilHit] = {}
    for p in candidate_points:
        pt = list(p.coords)
        if not X.evaluate(pt).is_zero():
            raise VarietyError(f"candidate {p} is not on X")
        a0, b0 = A.evaluate(pt), B.evaluate(pt)
        vX = [g.evaluate(pt) for g in gX]
        vA = [g.evaluate(pt) for g in gA]
        vB = [g.evaluate(pt) for g in gB]
        params: list[tuple[CycElem, CycElem] | None] = []
        if not (a0.is_zero() and b0.is_zero()):
            a1, a2 = -b0, a0
            grad = [a1 * x + a2 * y for x, y in zip(vA, vB)]
            if linalg.rank([grad, vX], Fd) < 2:
                params.append(_normalize_param(a1, a2))
        else:
            # a1 vA + a2 vB - lam vX = 0
            cols = [list(r) for r in zip(vA, vB, [-x for x in vX])]
            ker = linalg.kernel(cols, 3, Fd)
            pa = [v[:2] for v in ker if not (v[0].is_zero() and v[1].is_zero())]
            if linalg.rank(pa, Fd) == 2 if pa else False:
                params.append(None)
            elif pa:
                params.append(_normalize_param(pa[0][0], pa[0][1]))
        for prm in params:
            key = None if prm is None else (prm[0].key(), prm[1].key())
            hits.setdefault(key, PencilHit(prm, []))
            hits[key].points.append(p)
    return list(hits.values())


def random_points_on_quadric(X: MultiPoly, base: Sequence[CycElem], count: int, seed: int = 0,
                             avoid=None) -> list[list[CycElem]]:
    """Field points on the quadric X: second intersections of random lines through a known point."""
    Fd = X.field
    rng = random.Random(seed)
    grad0 = [g.evaluate(list(base)) for g in X.gradient()]
    out = []
    while len(out) < count:
        v = [Fd(rng.randint(-6, 6)) + Fd.zeta(4) * rng.randint(-3, 3) for _ in range(X.nvars)]
        qv = X.evaluate(v)
        bv = sum((g * x for g, x in zip(grad0, v)), Fd.zero)  # = 2 B(base, v)
        if qv.is_zero() or bv.is_zero():
            continue
        pt = [qv * b - bv * x for b, x in zip(base, v)]
        if avoid is not None and avoid(pt):
            continue
        out.append(pt)
    return out
