"""The Cremona transformation centred at a five-point orbit on a quadric threefold.

With y = M x sending the orbit to the coordinate points, the map is
y -> (prod_{j != i} y_j)_i.  The image of the quadric is a cubic G(z); it is found
from sampled points and then certified by exact reduction of G(cremona(y))
modulo the quadric written in y-coordinates.

The group acts on y by monomial matrices g' = M g M^-1 and on the target z by the
inverse transpose of g'.  Since the quadric's Gram matrix A intertwines g with
g^-T, the substitution z = M^-T A w gives a cubic in w on which the original
matrices act; this is the "source frame" image.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cyclofield import CycElem, FieldSpec
from .grouprep import (
    FiniteMatrixGroup,
    LinearMap,
    PointOrbit,
    ProjPoint,
    enumerate_group,
    is_invariant,
)
from .multipoly import MultiPoly, monomials
from .projvar import Hypersurface, random_points_on_quadric
from . import linalg


class CremonaError(ValueError):
    pass


@dataclass
class CremonaMap:
    orbit: list[ProjPoint]
    M: list[list[CycElem]]
    Minv: list[list[CycElem]]
    field: FieldSpec
    degree: int = 4

    @property
    def n(self) -> int:
        return len(self.M)

    def adapted_forms(self) -> list[MultiPoly]:
        """The monomial map y_i -> prod_{j != i} y_j."""
        n = self.n
        return [MultiPoly.monomial(tuple(0 if j == i else 1 for j in range(n)), 1, self.field) for i in range(n)]

    def forms(self) -> list[MultiPoly]:
        """The map in source coordinates: x -> cremona(M x) (target in adapted coordinates)."""
        ys = [MultiPoly.linear(list(r), self.field) for r in self.M]
        return [m.substitute(ys) for m in self.adapted_forms()]

    def to_adapted(self, x: Sequence[CycElem]) -> list[CycElem]:
        return linalg.matvec(self.M, list(x))

    def apply_adapted(self, y: Sequence[CycElem]) -> list[CycElem]:
        out = []
        for i in range(self.n):
            acc = self.field.one
            for j, v in enumerate(y):
                if j != i:
                    acc = acc * v
            out.append(acc)
        return out

    def involution_certified(self) -> bool:
        """cremona(cremona(y))_i = (prod y)^3 * y_i, checked exactly."""
        mono = self.adapted_forms()
        twice = [m.substitute(mono) for m in mono]
        n = self.n
        for i, t in enumerate(twice):
            expect = tuple(3 + (1 if j == i else 0) for j in range(n))
            if len(t) != 1 or t.coefficient(expect) != 1:
                return False
        return True


def build_cremona(orbit: PointOrbit | Sequence[ProjPoint]) -> CremonaMap:
    pts = list(orbit.points if isinstance(orbit, PointOrbit) else orbit)
    if len(pts) != 5:
        raise CremonaError(f"orbit must have length 5, got {len(pts)}")
    F = pts[0].field
    P = linalg.transpose([list(p.coords) for p in pts])
    if linalg.det(P, F).is_zero():
        raise CremonaError("orbit points are not in general position")
    Minv = P
    M = linalg.inverse(P, F)
    return CremonaMap(pts, M, Minv, F)


def quadric_gram(X: MultiPoly) -> list[list[CycElem]]:
    """Symmetric A with X(x) = x^T A x."""
    n = X.nvars
    F = X.field
    A = [[F.zero] * n for _ in range(n)]
    for e, c in X.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            A[i][i] = A[i][i] + c
        else:
            A[i][j] = A[i][j] + c / 2
            A[j][i] = A[j][i] + c / 2
    return A


@dataclass
class CremonaImage:
    chi: CremonaMap
    quadric_adapted: MultiPoly      # F_X(M^-1 y)
    cubic_adapted: MultiPoly        # G(z)
    cubic_source: MultiPoly         # G(M^-T A w)
    solution_dim: int
    remainder: MultiPoly

    @property
    def certified(self) -> bool:
        return self.solution_dim == 1 and self.remainder.is_zero()


def _adapted_samples(qy: MultiPoly, count: int, seed: int) -> list[list[CycElem]]:
    """Points of {qy = 0} with small coordinates and no zero entry.

    qy vanishes at e_1, so it is linear in y_1: pick y_2..y_n from a short list
    of Gaussian integers and solve for y_1.
    """
    import random

    F = qy.field
    n = qy.nvars
    rng = random.Random(seed)
    small = [F(a) + F.zeta(4) * b for a in (-2, -1, 1, 2) for b in (-1, 0, 1)]
    lin = qy.partial(0)  # coefficient of y_1 (qy has no y_1^2 term)
    rest = MultiPoly(F, n, {e: c for e, c in qy.terms.items() if e[0] == 0})
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 100 * count:
            raise CremonaError("could not sample points on the quadric")
        tail = [rng.choice(small) for _ in range(n - 1)]
        y = [F.zero] + tail
        a = lin.evaluate(y)
        if a.is_zero():
            continue
        y[0] = -rest.evaluate(y) / a
        if any(v.is_zero() for v in y):
            continue
        out.append(y)
    return out


def image_cubic(chi: CremonaMap, X: MultiPoly, samples: int = 45, seed: int = 1) -> CremonaImage:
    F = chi.field
    n = chi.n
    for p in chi.orbit:
        if not X.evaluate(list(p.coords)).is_zero():
            raise CremonaError(f"orbit point {p} is not on the quadric")
    qy = X.linear_substitute(chi.Minv)
    basis = monomials(n, 3)

    rows = []
    for y in _adapted_samples(qy, samples, seed):
        z = chi.apply_adapted(y)
        rows.append([MultiPoly.monomial(e, 1, F).evaluate(z) for e in basis])
    ker = linalg.kernel(rows, len(basis), F)
    if not ker:
        raise CremonaError("no cubic contains the image")
    G = MultiPoly(F, n, dict(zip(basis, ker[0]))).normalized()
    composite = G.substitute(chi.adapted_forms())
    rem = composite.reduce_by(qy)
    A = quadric_gram(X)
    Mt_inv = linalg.transpose(chi.Minv)  # (M^-1)^T = M^-T
    S = linalg.matmul(Mt_inv, A)
    src = G.linear_substitute(S).normalized()
    return CremonaImage(chi, qy, G, src, len(ker), rem)


def reverse_quadric(img: CremonaImage, samples: int = 30, seed: int = 2) -> tuple[MultiPoly, bool]:
    """Recover the quadric from the cubic: q(cremona(z)) must reduce to 0 modulo G.

    Returns the quadric (in adapted y-coordinates) found from points of the image and
    whether it is proportional to F_X(M^-1 y) with the exact reduction certificate.
    """
    chi = img.chi
    F = chi.field
    n = chi.n
    X_src = None
    basis = monomials(n, 2)
    # points of Y in adapted coordinates come from points of X
    Xform = img.quadric_adapted
    base_y = [F.one] + [F.zero] * (n - 1)  # e_1 lies on the quadric in adapted coordinates
    pts = random_points_on_quadric(Xform, base_y, samples, seed, avoid=lambda y: any(v.is_zero() for v in y))
    rows = []
    for y in pts:
        z = chi.apply_adapted(y)
        w = chi.apply_adapted(z)
        rows.append([MultiPoly.monomial(e, 1, F).evaluate(w) for e in basis])
    ker = linalg.kernel(rows, len(basis), F)
    if len(ker) != 1:
        return MultiPoly.zero(n, F), False
    q = MultiPoly(F, n, dict(zip(basis, ker[0])))
    proportional = q.normalized() == Xform.normalized()
    rem = q.substitute(chi.adapted_forms()).reduce_by(img.cubic_adapted)
    return q, proportional and rem.is_zero()


@dataclass
class EquivarianceReport:
    ok: bool
    monomial: bool
    scalars: list[CycElem | None]
    source_invariant: bool


def conjugated_generators(chi: CremonaMap, grp: FiniteMatrixGroup) -> list[LinearMap] | None:
    """For each generator g, the target action h = (M g M^-1)^-T, or None if some g' is not monomial."""
    out = []
    for g in grp.generators:
        gp = linalg.matmul(linalg.matmul(chi.M, [list(r) for r in g.rows]), chi.Minv)
        for row in gp:
            if sum(1 for x in row if not x.is_zero()) != 1:
                return None
        h = linalg.transpose(linalg.inverse(gp, chi.field))
        out.append(LinearMap(h, chi.field))
    return out


def conjugated_group(chi: CremonaMap, grp: FiniteMatrixGroup, img: CremonaImage) -> EquivarianceReport:
    hs = conjugated_generators(chi, grp)
    if hs is None:
        return EquivarianceReport(False, False, [], False)
    G = img.cubic_adapted
    scal = []
    ok = True
    lt, lc = G.leading_term()
    for h in hs:
        Gh = G.linear_substitute([list(r) for r in h.rows])
        c = Gh.coefficient(lt) / lc
        if c.is_zero() or Gh != G.scale(c):
            ok = False
            scal.append(None)
        else:
            scal.append(c)
    src_ok, _ = is_invariant(img.cubic_source, grp)
    return EquivarianceReport(ok and src_ok, True, scal, src_ok)


def target_group(chi: CremonaMap, grp: FiniteMatrixGroup) -> FiniteMatrixGroup:
    hs = conjugated_generators(chi, grp)
    if hs is None:
        raise CremonaError("orbit is not invariant under the group")
    return enumerate_group(hs, name=grp.name + " (adapted)")
