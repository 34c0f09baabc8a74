"""Finite subgroups of PGL(5) given by generators: enumeration, orbits, invariants, fixed loci."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclofield import CycElem, FieldSpec, default_field, parse_cyc, render
from .multipoly import MultiPoly, monomials
from . import linalg
from .roots import RootResult, roots_in_field


class GroupError(ValueError):
    pass


# ---------------------------------------------------------------------------
# points and linear maps

class ProjPoint:
    """A point of P^(n-1) with first nonzero coordinate equal to 1."""

    __slots__ = ("coords", "_key")

    def __init__(self, coords: Sequence, field: FieldSpec | None = None):
        F = field or (coords[0].field if isinstance(coords[0], CycElem) else default_field())
        cs = [F.coerce(c) for c in coords]
        lead = next((c for c in cs if not c.is_zero()), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        if lead != 1:
            inv = lead.inverse()
            cs = [c * inv for c in cs]
        self.coords = tuple(cs)
        self._key = None

    @classmethod
    def parse(cls, text: str, field: FieldSpec | None = None) -> "ProjPoint":
        """Parse ``[a:b:c:d:e]`` with cyclotomic literal entries."""
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        return cls([parse_cyc(s, field) for s in body.split(":")], field)

    @property
    def field(self) -> FieldSpec:
        return self.coords[0].field

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(c.key() for c in self.coords)
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.key())

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self) -> str:
        return "[" + ":".join(render(c) for c in self.coords) + "]"

    __repr__ = __str__

    def galois(self, k: int) -> "ProjPoint":
        return ProjPoint([c.galois(k) for c in self.coords])


class LinearMap:
    """An invertible square matrix acting on column vectors: x -> A x."""

    __slots__ = ("rows", "field", "_key")

    def __init__(self, rows: Sequence[Sequence], field: FieldSpec | None = None):
        F = field or default_field()
        self.rows = tuple(tuple(F.coerce(x) for x in r) for r in rows)
        self.field = F
        self._key = None
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise GroupError("matrix must be square")

    @classmethod
    def from_images(cls, images: Sequence[str], field: FieldSpec | None = None) -> "LinearMap":
        """Matrix from coordinate images such as ("x4", "x1", "x5", "x2", "-x1-x2-x3-x4-x5")."""
        from .multipoly import parse_poly

        n = len(images)
        F = field or default_field()
        rows = []
        for s in images:
            p = parse_poly(s, F, n)
            if p.degree() != 1 or not p.is_homogeneous():
                raise GroupError(f"coordinate image {s!r} is not a linear form")
            row = [F.zero] * n
            for e, c in p.terms.items():
                row[e.index(1)] = c
            rows.append(row)
        return cls(rows, F)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(linalg.matmul([list(r) for r in self.rows], [list(r) for r in other.rows]), self.field)

    def apply(self, v: Sequence[CycElem]) -> list[CycElem]:
        return linalg.matvec([list(r) for r in self.rows], list(v))

    def act(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(self.apply(p.coords))

    def det(self) -> CycElem:
        return linalg.det([list(r) for r in self.rows], self.field)

    def inverse(self) -> "LinearMap":
        return LinearMap(linalg.inverse([list(r) for r in self.rows], self.field), self.field)

    def projective_key(self) -> tuple:
        if self._key is None:
            flat = [x for r in self.rows for x in r]
            lead = next(x for x in flat if not x.is_zero())
            inv = lead.inverse()
            self._key = tuple((x * inv).key() for x in flat)
        return self._key

    def scalar_multiple_of(self, other: "LinearMap") -> CycElem | None:
        """c with self = c * other, or None."""
        c = None
        for r1, r2 in zip(self.rows, other.rows):
            for a, b in zip(r1, r2):
                if b.is_zero():
                    if not a.is_zero():
                        return None
                    continue
                q = a / b
                if c is None:
                    c = q
                elif q != c:
                    return None
        return c

    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        return all(
            (x == d if i == j else x.is_zero()) for i, r in enumerate(self.rows) for j, x in enumerate(r)
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearMap) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(tuple(x.key() for r in self.rows for x in r))

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(render(x) for x in r) for r in self.rows) + "]"

    __repr__ = __str__


def identity_map(n: int = 5, field: FieldSpec | None = None) -> LinearMap:
    F = field or default_field()
    return LinearMap(linalg.identity(n, F), F)


# ---------------------------------------------------------------------------
# groups

@dataclass
class FiniteMatrixGroup:
    elements: list[LinearMap]
    generator_indices: list[int]
    field: FieldSpec
    perms: list[tuple[int, ...]]  # action on a regular orbit, used for the multiplication table
    _pt_to_elt: list[int]
    _elt_to_pt: list[int]
    honest_lift: bool
    name: str = ""
    _mult: dict = field(default_factory=dict, repr=False)
    _orders: list[int] | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def generators(self) -> list[LinearMap]:
        return [self.elements[i] for i in self.generator_indices]

    @property
    def n(self) -> int:
        return self.elements[0].n

    def mul(self, i: int, j: int) -> int:
        """Index of elements[i] @ elements[j]."""
        return self._pt_to_elt[self.perms[i][self._elt_to_pt[j]]]

    def identity_index(self) -> int:
        return 0

    def element_order(self, i: int) -> int:
        k, cur = 1, i
        while cur != 0:
            cur = self.mul(cur, i)
            k += 1
        return k

    def orders(self) -> list[int]:
        if self._orders is None:
            self._orders = [self.element_order(i) for i in range(self.order)]
        return self._orders

    def order_census(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for o in self.orders():
            out[o] = out.get(o, 0) + 1
        return dict(sorted(out.items()))

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(gens)
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(g, a)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(seen)

    def act(self, i: int, p: ProjPoint) -> ProjPoint:
        return self.elements[i].act(p)


def _regular_orbit(gens: list[LinearMap], F: FieldSpec, size: int) -> list[ProjPoint] | None:
    n = gens[0].n
    trials = [[F(v) for v in base] for base in (
        [1, 2, 3, 5, 7, 11, 13][:n],
        [1, 3, 7, 15, 31, 63, 127][:n],
        [2, -1, 4, 9, -5, 6, 17][:n],
    )]
    trials.append([F(1)] + [F.zeta(F.N) * (k + 2) + k for k in range(n - 1)])
    for v in trials:
        p0 = ProjPoint(v)
        pts = [p0]
        idx = {p0: 0}
        q = deque([p0])
        while q and len(pts) <= size:
            p = q.popleft()
            for g in gens:
                r = g.act(p)
                if r not in idx:
                    idx[r] = len(pts)
                    pts.append(r)
                    q.append(r)
        if len(pts) == size:
            return pts
    return None


def enumerate_group(
    generators: Sequence[LinearMap],
    bound: int = 10_000,
    name: str = "",
) -> FiniteMatrixGroup:
    """Projective closure of the generators."""
    if not generators:
        raise GroupError("at least one generator is required")
    F = generators[0].field
    n = generators[0].n
    gens = list(generators)
    for g in gens:
        if g.det().is_zero():
            raise GroupError(f"generator {g} is not invertible")
    ident = identity_map(n, F)
    elements = [ident]
    index = {ident.projective_key(): 0}
    words: list[tuple[int, int]] = [(-1, -1)]  # (parent, generator) with element = gen @ parent
    honest = True
    q = deque([0])
    while q:
        i = q.popleft()
        for gi, g in enumerate(gens):
            h = g @ elements[i]
            k = h.projective_key()
            j = index.get(k)
            if j is None:
                if len(elements) >= bound:
                    raise GroupError(f"group exceeds the bound of {bound} elements")
                index[k] = len(elements)
                elements.append(h)
                words.append((i, gi))
                q.append(len(elements) - 1)
            elif honest and h != elements[j]:
                honest = False
    gen_idx = [index[g.projective_key()] for g in gens]
    pts = _regular_orbit(gens, F, len(elements))
    if pts is None:
        raise GroupError("could not find a point with trivial stabilizer")
    pidx = {p: t for t, p in enumerate(pts)}
    gen_perm = [tuple(pidx[g.act(p)] for p in pts) for g in gens]
    perms: list[tuple[int, ...]] = [tuple(range(len(pts)))]
    for parent, gi in words[1:]:
        gp, pp = gen_perm[gi], perms[parent]
        perms.append(tuple(gp[pp[t]] for t in range(len(pts))))
    elt_to_pt = [perms[i][0] for i in range(len(elements))]
    pt_to_elt = [0] * len(pts)
    for i, t in enumerate(elt_to_pt):
        pt_to_elt[t] = i
    return FiniteMatrixGroup(elements, gen_idx, F, perms, pt_to_elt, elt_to_pt, honest, name)


# ---------------------------------------------------------------------------
# orbits and stabilizers

@dataclass
class PointOrbit:
    points: list[ProjPoint]
    group: FiniteMatrixGroup = field(repr=False)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return p in self._set

    @property
    def _set(self) -> set:
        return set(self.points)

    @property
    def representative(self) -> ProjPoint:
        return self.points[0]

    def key(self) -> frozenset:
        return frozenset(self.points)


def _canonical_sort(points: Iterable[ProjPoint]) -> list[ProjPoint]:
    return sorted(points, key=lambda p: p.key())


def orbit_of(p: ProjPoint, grp: FiniteMatrixGroup) -> PointOrbit:
    seen = {p}
    frontier = [p]
    gens = grp.generators
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = g.act(a)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return PointOrbit(_canonical_sort(seen), grp)


@dataclass
class Subgroup:
    group: FiniteMatrixGroup = field(repr=False)
    indices: frozenset[int]
    generators: list[int]

    @property
    def order(self) -> int:
        return len(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def matrices(self) -> list[LinearMap]:
        return [self.group.elements[i] for i in sorted(self.indices)]

    def census(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i in self.indices:
            o = self.group.orders()[i]
            out[o] = out.get(o, 0) + 1
        return dict(sorted(out.items()))


def _min_generators(grp: FiniteMatrixGroup, indices: Iterable[int]) -> list[int]:
    idx = sorted(indices, key=lambda i: (-grp.orders()[i], i))
    gens: list[int] = []
    span = frozenset({0})
    for i in idx:
        if i not in span:
            gens.append(i)
            span = grp.closure(gens)
    return gens


def subgroup_from(grp: FiniteMatrixGroup, gens: Iterable[int]) -> Subgroup:
    ind = grp.closure(gens)
    return Subgroup(grp, ind, _min_generators(grp, ind))


def stabilizer(p: ProjPoint, grp: FiniteMatrixGroup) -> Subgroup:
    ind = frozenset(i for i, g in enumerate(grp.elements) if g.act(p) == p)
    return Subgroup(grp, ind, _min_generators(grp, ind))


def subgroups(grp: FiniteMatrixGroup, max_join_order: int = 12) -> list[Subgroup]:
    """Nontrivial cyclic subgroups and the joins of pairs of them of order <= max_join_order."""
    cyc: dict[frozenset, int] = {}
    for i in range(1, grp.order):
        s = grp.closure([i])
        cyc.setdefault(s, i)
    out: dict[frozenset, list[int]] = {s: [g] for s, g in cyc.items()}
    cyc_items = sorted(cyc.items(), key=lambda t: (len(t[0]), t[1]))
    for (s1, g1), (s2, g2) in itertools.combinations(cyc_items, 2):
        if s1 <= s2 or s2 <= s1:
            continue
        j = grp.closure([g1, g2])
        if len(j) <= max_join_order and j not in out:
            out[j] = [g1, g2]
    subs = [Subgroup(grp, s, gens) for s, gens in out.items()]
    subs.sort(key=lambda s: (-s.order, sorted(s.indices)))
    return subs


# ---------------------------------------------------------------------------
# invariant forms

def act_on_form(F: MultiPoly, g: LinearMap) -> MultiPoly:
    """F o g, i.e. x -> F(g x)."""
    return F.linear_substitute([list(r) for r in g.rows])


def _linear_closure(grp: FiniteMatrixGroup, bound: int = 100_000) -> list[LinearMap]:
    if grp.honest_lift:
        return grp.elements
    seen = {grp.elements[0]}
    out = [grp.elements[0]]
    q = deque(out)
    while q:
        a = q.popleft()
        for g in grp.generators:
            b = g @ a
            if b not in seen:
                if len(out) >= bound:
                    raise GroupError("linear closure exceeds bound; scalars of infinite order?")
                seen.add(b)
                out.append(b)
                q.append(b)
    return out


def reynolds(F: MultiPoly, grp: FiniteMatrixGroup) -> MultiPoly:
    elts = _linear_closure(grp)
    acc = MultiPoly.zero(F.nvars, F.field)
    for g in elts:
        acc = acc + act_on_form(F, g)
    return acc / len(elts)


def invariant_forms(grp: FiniteMatrixGroup, degree: int) -> list[MultiPoly]:
    """Basis (reduced echelon in grlex monomial coordinates) of the invariant degree-d forms."""
    if degree < 1:
        raise ValueError("degree must be positive")
    Fd = grp.field
    n = grp.n
    basis = monomials(n, degree)
    elts = _linear_closure(grp)
    # images of each variable under each element, then monomials as products
    rows = []
    var_images = [[MultiPoly.linear(list(g.rows[i]), Fd) for i in range(n)] for g in elts]
    for e in basis:
        mono = MultiPoly.monomial(e, 1, Fd)
        acc = MultiPoly.zero(n, Fd)
        for imgs in var_images:
            acc = acc + mono.substitute(imgs)
        rows.append(acc.coeff_vector(basis))
    space = linalg.row_space(rows, Fd)
    out = []
    for r in space:
        out.append(MultiPoly(Fd, n, {e: c for e, c in zip(basis, r)}))
    return out


def is_invariant(F: MultiPoly, grp: FiniteMatrixGroup) -> tuple[bool, list[CycElem | None]]:
    """Whether F o g = c_g F for every generator; returns the scalars c_g."""
    if F.is_zero():
        raise ValueError("the zero form is trivially invariant")
    wit: list[CycElem | None] = []
    lt, lc = F.leading_term()
    ok = True
    for g in grp.generators:
        Fg = act_on_form(F, g)
        c = Fg.coefficient(lt) / lc
        if c.is_zero() or Fg != F.scale(c):
            ok = False
            wit.append(None)
        else:
            wit.append(c)
    return ok, wit


# ---------------------------------------------------------------------------
# fixed loci

def _eigen_candidates(g: LinearMap, order: int) -> list[CycElem]:
    F = g.field
    gn = g
    for _ in range(order - 1):
        gn = gn @ g
    if not gn.is_scalar():
        raise GroupError("element power is not scalar; wrong order")
    c = gn.rows[0][0]
    N = F.N
    j = next((j for j in range(N) if F.zpow(j) == c), None)
    if j is None:
        raise GroupError("scalar g^n is not a root of unity in the field")
    return [F.zpow(m) for m in range(N) if (m * order - j) % N == 0]


def fixed_locus(sub: Subgroup) -> list[list[list[CycElem]]]:
    """Joint projective eigenspaces of the subgroup's generators, as lists of basis vectors."""
    grp = sub.group
    F = grp.field
    n = grp.n
    if not sub.generators:
        return [linalg.identity(n, F)]
    gens = [grp.elements[i] for i in sub.generators]
    cands = [_eigen_candidates(g, grp.orders()[i]) for g, i in zip(gens, sub.generators)]
    out = []
    for lams in itertools.product(*cands):
        rows = []
        for g, lam in zip(gens, lams):
            for i, r in enumerate(g.rows):
                rows.append([x - lam if j == i else x for j, x in enumerate(r)])
        ker = linalg.kernel(rows, n, F)
        if ker:
            out.append(ker)
    return out


# ---------------------------------------------------------------------------
# small orbits on a hypersurface

@dataclass
class OutsideField:
    subgroup_order: int
    line_basis: list[list[CycElem]]
    residual: list[CycElem]  # monic factor (coefficients low to high) with no roots in the field


@dataclass
class FixedCurveFamily:
    subgroup_order: int
    subspace: list[list[CycElem]]
    note: str


@dataclass
class OrbitScan:
    orbits: list[PointOrbit]
    curve_families: list[FixedCurveFamily]
    outside_field: list[OutsideField]

    @property
    def lengths(self) -> list[int]:
        return sorted(len(o) for o in self.orbits)


def binary_restriction(form: MultiPoly, u: Sequence[CycElem], v: Sequence[CycElem]) -> list[CycElem]:
    """Coefficients c_k (of s^k t^(d-k)) of form(s u + t v)."""
    Fd = form.field
    s = MultiPoly.var(0, 2, Fd)
    t = MultiPoly.var(1, 2, Fd)
    images = [s.scale(a) + t.scale(b) for a, b in zip(u, v)]
    images = [im if not im.is_zero() else MultiPoly.zero(2, Fd) for im in images]
    r = _substitute_linear_forms(form, images)
    d = form.degree()
    return [r.coefficient((k, d - k)) for k in range(d + 1)]


def _substitute_linear_forms(form: MultiPoly, images: list[MultiPoly]) -> MultiPoly:
    # images may contain zero forms, which MultiPoly.substitute accepts as degree-free
    return form.substitute(images)


def points_on_line(forms: Sequence[MultiPoly], u, v) -> tuple[list[list[CycElem]], list[list[CycElem]], bool]:
    """Common zeros on the line spanned by u, v.

    Returns (points, residual factors outside the field, whole_line_contained).
    """
    Fd = forms[0].field
    polys = []
    for f in forms:
        c = binary_restriction(f, u, v)
        if any(not x.is_zero() for x in c):
            polys.append(c)
    if not polys:
        return [], [], True
    c = polys[0]
    pts: list[list[CycElem]] = []
    residuals = []
    # [s:t] = [1:0] is a zero iff the s^d coefficient vanishes
    if c[-1].is_zero():
        pts.append(list(u))
    # remaining zeros: t = 1, s = root of sum c_k s^k
    from .roots import trim

    uni = trim(c)
    if len(uni) > 1:
        res = roots_in_field(uni)
        for r in res.roots:
            pts.append([r * a + b for a, b in zip(u, v)])
        if res.residual:
            residuals.append(res.residual)
    kept = []
    for p in pts:
        if all(f.evaluate(p).is_zero() for f in forms):
            kept.append(p)
    return kept, residuals, False


def small_orbits_on(
    grp: FiniteMatrixGroup,
    X,
    max_len: int,
    max_join_order: int = 12,
) -> OrbitScan:
    """Every orbit of length <= max_len on X (a Hypersurface, CompleteIntersection or list of forms)."""
    if max_len > grp.order:
        raise ValueError("max_len exceeds the group order")
    forms = _forms_of(X)
    min_stab = -(-grp.order // max_len)
    found: dict[frozenset, PointOrbit] = {}
    families: list[FixedCurveFamily] = []
    outside: list[OutsideField] = []
    seen_spaces: set = set()
    for sub in subgroups(grp, max_join_order):
        if sub.order < min_stab:
            continue
        for space in fixed_locus(sub):
            key = tuple(tuple(c.key() for c in r) for r in linalg.row_space(space, grp.field))
            if key in seen_spaces:
                continue
            seen_spaces.add(key)
            dim = len(space) - 1
            cands: list[list[CycElem]] = []
            if dim == 0:
                if all(f.evaluate(space[0]).is_zero() for f in forms):
                    cands.append(space[0])
            elif dim == 1:
                pts, res, whole = points_on_line(forms, space[0], space[1])
                if whole:
                    families.append(FixedCurveFamily(sub.order, space, "fixed line contained in X"))
                cands.extend(pts)
                for r in res:
                    outside.append(OutsideField(sub.order, space, r))
            else:
                families.append(FixedCurveFamily(sub.order, space, f"fixed subspace of projective dimension {dim}"))
                continue
            for c in cands:
                p = ProjPoint(c)
                if any(p in o for o in found.values()):
                    continue
                orb = orbit_of(p, grp)
                if len(orb) <= max_len:
                    found[orb.key()] = orb
    orbits = sorted(found.values(), key=lambda o: (len(o), o.points[0].key()))
    return OrbitScan(orbits, families, outside)


def _forms_of(X) -> list[MultiPoly]:
    if isinstance(X, MultiPoly):
        return [X]
    if hasattr(X, "forms"):
        return list(X.forms)
    return list(X)
