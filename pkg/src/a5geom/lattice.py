"""Exact divisor-class arithmetic on surfaces and on blowups of threefolds.

Two kinds of context share one class type:

* a surface context carries a symmetric pairing matrix on named generators;
* a threefold context carries a symmetric trilinear table.

Classes are rational combinations of the generators and support the usual
arithmetic, so ``ctx.pair(3*H - C, 4*H - C)`` reads like the hand computation.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Number = int | Fraction


class LatticeError(ValueError):
    pass


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class IntersectionContext:
    def __init__(self, names: Sequence[str], pairing: Sequence[Sequence[Number]] | None = None,
                 trilinear: Mapping[tuple[int, int, int], Number] | None = None, label: str = ""):
        self.names = list(names)
        if len(set(self.names)) != len(self.names):
            raise LatticeError("generator names must be distinct")
        n = len(self.names)
        self.label = label
        self.pairing = None
        self.trilinear = None
        if (pairing is None) == (trilinear is None):
            raise LatticeError("give exactly one of a pairing matrix or a trilinear table")
        if pairing is not None:
            P = [[_q(x) for x in row] for row in pairing]
            if len(P) != n or any(len(r) != n for r in P):
                raise LatticeError("pairing matrix has the wrong shape")
            if any(P[i][j] != P[j][i] for i in range(n) for j in range(n)):
                raise LatticeError("pairing matrix is not symmetric")
            self.pairing = P
        else:
            T: dict[tuple[int, int, int], Fraction] = {}
            for key, v in trilinear.items():
                k = tuple(sorted(key))
                if k in T and T[k] != _q(v):
                    raise LatticeError(f"conflicting entries for {k}")
                T[k] = _q(v)
            self.trilinear = T

    @property
    def kind(self) -> str:
        return "surface" if self.pairing is not None else "threefold"

    def __getitem__(self, name: str) -> "DivisorClass":
        try:
            i = self.names.index(name)
        except ValueError:
            raise LatticeError(f"unknown generator {name!r}") from None
        return DivisorClass(self, tuple(Fraction(int(j == i)) for j in range(len(self.names))))

    def generators(self) -> list["DivisorClass"]:
        return [self[n] for n in self.names]

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, tuple(Fraction(0) for _ in self.names))

    def parse(self, text: str) -> "DivisorClass":
        """Parse a linear combination such as ``3H - C`` or ``-s + 5f``."""
        s = text.replace(" ", "").replace("*", "")
        if not s:
            raise LatticeError("empty class")
        if s[0] not in "+-":
            s = "+" + s
        names = sorted(self.names, key=len, reverse=True)
        pat = re.compile(r"([+-])(\d+(?:/\d+)?)?(" + "|".join(map(re.escape, names)) + r")")
        pos = 0
        acc = self.zero()
        for m in pat.finditer(s):
            if m.start() != pos:
                break
            c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            acc = acc + self[m.group(3)] * (c if m.group(1) == "+" else -c)
            pos = m.end()
        if pos != len(s):
            raise LatticeError(f"cannot parse class {text!r}")
        return acc

    def pair(self, a: "DivisorClass", b: "DivisorClass") -> Fraction:
        if self.pairing is None:
            raise LatticeError("pair() needs a surface context")
        self._check(a, b)
        P = self.pairing
        return sum((x * y * P[i][j] for i, x in enumerate(a.coords) if x
                    for j, y in enumerate(b.coords) if y), Fraction(0))

    def triple(self, a: "DivisorClass", b: "DivisorClass", c: "DivisorClass") -> Fraction:
        if self.trilinear is None:
            raise LatticeError("triple() needs a threefold context")
        self._check(a, b, c)
        T = self.trilinear
        total = Fraction(0)
        for (i, x), (j, y), (k, z) in itertools.product(
                *[[(i, v) for i, v in enumerate(d.coords) if v] for d in (a, b, c)]):
            total += x * y * z * T.get(tuple(sorted((i, j, k))), Fraction(0))
        return total

    def _check(self, *classes: "DivisorClass") -> None:
        for d in classes:
            if d.ctx is not self:
                raise LatticeError("classes belong to a different context")

    def __repr__(self) -> str:
        return f"IntersectionContext({self.label or self.kind}, {self.names})"


@dataclass(frozen=True)
class DivisorClass:
    ctx: IntersectionContext
    coords: tuple[Fraction, ...]

    def _same(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass) or other.ctx is not self.ctx:
            raise LatticeError("classes belong to a different context")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return DivisorClass(self.ctx, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return DivisorClass(self.ctx, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.ctx, tuple(-a for a in self.coords))

    def __mul__(self, k: Number) -> "DivisorClass":
        if isinstance(k, DivisorClass):
            raise TypeError("use ctx.pair or ctx.triple for intersection products")
        k = _q(k)
        return DivisorClass(self.ctx, tuple(a * k for a in self.coords))

    __rmul__ = __mul__

    def __str__(self) -> str:
        parts = []
        for c, n in zip(self.coords, self.ctx.names):
            if c == 0:
                continue
            mag = abs(c)
            body = n if mag == 1 else f"{mag}{n}"
            parts.append(("-" if c < 0 else "+") + body)
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s


# ---------------------------------------------------------------------------
# constructors

def surface_context(names: Sequence[str], pairing: Sequence[Sequence[Number]], label: str = "") -> IntersectionContext:
    return IntersectionContext(names, pairing=pairing, label=label)


@dataclass(frozen=True)
class K3CurveClass:
    degree: int
    self_intersection: int

    def __post_init__(self):
        if self.self_intersection % 2:
            raise LatticeError("curve classes on a K3 surface have even self-intersection")

    @classmethod
    def from_genus(cls, degree: int, genus: int) -> "K3CurveClass":
        return cls(degree, 2 * genus - 2)

    @property
    def genus(self) -> int:
        return adjunction_genus(self.self_intersection)


def k3_context(h2: int, curves: Mapping[str, K3CurveClass] | None = None,
               cross: Mapping[tuple[str, str], Number] | None = None, label: str = "") -> IntersectionContext:
    """Context spanned by the hyperplane class H and the given curve classes.

    Products between two different curves default to 0 unless given in ``cross``.
    """
    curves = dict(curves or {})
    names = ["H"] + list(curves)
    n = len(names)
    P = [[Fraction(0)] * n for _ in range(n)]
    P[0][0] = Fraction(h2)
    for i, name in enumerate(names[1:], start=1):
        c = curves[name]
        P[0][i] = P[i][0] = Fraction(c.degree)
        P[i][i] = Fraction(c.self_intersection)
    for (a, b), v in (cross or {}).items():
        i, j = names.index(a), names.index(b)
        P[i][j] = P[j][i] = _q(v)
    return surface_context(names, P, label)


AMBIENT_DEGREE = {"quadric": 2, "cubic": 3}
# -K = (5 - d) H for a smooth degree-d hypersurface in P^4
AMBIENT_INDEX = {"quadric": 3, "cubic": 2}


@dataclass(frozen=True)
class BlownUpCurve:
    degree: int
    genus: int
    k_dot: int | None = None  # K_X . C; defaults to -index * degree

    def canonical_degree(self, ambient: str) -> int:
        return self.k_dot if self.k_dot is not None else -AMBIENT_INDEX[ambient] * self.degree


def blowup_context(ambient: str | int, curves: Iterable[BlownUpCurve | tuple] = ()) -> IntersectionContext:
    """Trilinear table on (H, E) for the blowup of disjoint smooth curves.

    H^3 = deg X, H^2 E = 0, H E^2 = -sum deg C_i and
    E^3 = -sum deg N_{C_i/X} = sum (2 - 2 g_i + K_X . C_i).
    """
    if isinstance(ambient, int):
        amb = {v: k for k, v in AMBIENT_DEGREE.items()}.get(ambient)
        if amb is None:
            raise LatticeError(f"unsupported ambient degree {ambient}")
        ambient = amb
    if ambient not in AMBIENT_DEGREE:
        raise LatticeError(f"unknown ambient {ambient!r}")
    cs = [c if isinstance(c, BlownUpCurve) else BlownUpCurve(*c) for c in curves]
    for c in cs:
        if c.genus < 0 or c.degree <= 0:
            raise LatticeError(f"invalid curve data {c}")
    h3 = AMBIENT_DEGREE[ambient]
    if not cs:
        return IntersectionContext(["H"], trilinear={(0, 0, 0): h3}, label=ambient)
    he2 = -sum(c.degree for c in cs)
    e3 = sum(2 - 2 * c.genus + c.canonical_degree(ambient) for c in cs)
    table = {(0, 0, 0): h3, (0, 0, 1): 0, (0, 1, 1): he2, (1, 1, 1): e3}
    return IntersectionContext(["H", "E"], trilinear=table, label=f"blowup of {ambient}")


def anticanonical_cube(ambient: str, curves: Iterable[BlownUpCurve | tuple] = ()) -> Fraction:
    ctx = blowup_context(ambient, curves)
    k = AMBIENT_INDEX[ambient] * ctx["H"]
    if "E" in ctx.names:
        k = k - ctx["E"]
    return ctx.triple(k, k, k)


# ---------------------------------------------------------------------------
# genus formulas and bounds

def adjunction_genus(c2: int) -> int:
    """Arithmetic genus of a curve on a K3 surface: C^2 = 2g - 2."""
    if c2 % 2:
        raise LatticeError("odd self-intersection on a K3 surface")
    return c2 // 2 + 1


def ci_curve_genus(degrees: Sequence[int]) -> tuple[int, int]:
    """(degree, genus) of a complete-intersection curve in P^4 cut by three forms."""
    if len(degrees) != 3 or any(d < 1 for d in degrees):
        raise LatticeError("a curve in P^4 is cut out by three positive-degree forms")
    deg = math.prod(degrees)
    two_g_minus_2 = deg * (sum(degrees) - 5)
    return deg, two_g_minus_2 // 2 + 1


@dataclass(frozen=True)
class HodgeBound:
    ratio: Fraction          # (C.H)^2 / H^2
    bound: int               # floor(ratio)
    strict_even_bound: int   # largest even integer < ratio (C not numerically proportional to H)
    equality_possible: bool  # ratio is an even integer

    def admits(self, c2: int, proportional: bool = False) -> bool:
        if proportional:
            return c2 == self.ratio
        return c2 <= self.strict_even_bound


def hodge_bound(c_dot_h: int, h2: int) -> HodgeBound:
    if h2 <= 0:
        raise LatticeError("H^2 must be positive")
    r = Fraction(c_dot_h * c_dot_h, h2)
    fl = math.floor(r)
    strict = fl - 1 if fl == r else fl
    if strict % 2:
        strict -= 1
    return HodgeBound(r, fl, strict, r.denominator == 1 and r.numerator % 2 == 0)


def rr_h0_lower(D: DivisorClass) -> Fraction:
    """Riemann-Roch lower bound h^0(D) >= 2 + D^2/2 on a K3 surface."""
    return 2 + D.ctx.pair(D, D) / 2


# ---------------------------------------------------------------------------
# degeneracy of a 3x3 intersection matrix

def det(M: Sequence[Sequence[Number]]) -> Fraction:
    """Exact determinant by Bareiss elimination."""
    A = [[_q(x) for x in row] for row in M]
    n = len(A)
    if any(len(r) != n for r in A):
        raise LatticeError("matrix is not square")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else Fraction(1)


def degeneracy_matrix(f2: Number, x: Number, deg_f: Number, c2: Number, deg_c: Number, h2: Number) -> list[list[Fraction]]:
    return [[_q(f2), _q(x), _q(deg_f)], [_q(x), _q(c2), _q(deg_c)], [_q(deg_f), _q(deg_c), _q(h2)]]


@dataclass(frozen=True)
class DegeneracyRoot:
    value: Fraction
    integral: bool
    nonnegative: bool
    same_class: bool  # x = F^2, consistent with C = F

    @property
    def admissible(self) -> bool:
        return self.integral


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def degeneracy_solve(f2: Number, deg_f: Number, c2: Number, deg_c: Number, h2: Number) -> list[DegeneracyRoot]:
    """Rational x = F.C making the intersection matrix of (F, C, H) singular.

    The determinant is -H^2 x^2 + 2 deg_F deg_C x + F^2 (C^2 H^2 - deg_C^2) - C^2 deg_F^2.
    Irrational roots are omitted since an intersection number is an integer.
    """
    f2, deg_f, c2, deg_c, h2 = map(_q, (f2, deg_f, c2, deg_c, h2))
    if h2 <= 0:
        raise LatticeError("H^2 must be positive")
    a = -h2
    b = 2 * deg_f * deg_c
    c = f2 * (c2 * h2 - deg_c ** 2) - c2 * deg_f ** 2
    disc = b * b - 4 * a * c
    r = _rational_sqrt(disc)
    if r is None:
        return []
    vals = sorted({(-b + r) / (2 * a), (-b - r) / (2 * a)})
    return [DegeneracyRoot(v, v.denominator == 1, v >= 0, v == f2) for v in vals]


# ---------------------------------------------------------------------------
# the exceptional ruled surface over a rational curve

def ruled_surface_context() -> IntersectionContext:
    """P^1 x P^1 with a section s (s^2 = 0) and a fibre f."""
    return surface_context(["s", "f"], [[0, 1], [1, 0]], "E = P1 x P1")


def exceptional_self_restriction(ctx: IntersectionContext, normal_degree: int) -> DivisorClass:
    """E|_E as the class with E|_E . f = -1 and (E|_E)^2 = -deg N.

    On E = P(N) the divisor E restricts to the tautological O(-1), which has degree
    -1 on each fibre; its square is E^3 = -deg N.  Writing E|_E = -s + b f gives
    -2b = -deg N.
    """
    if normal_degree % 2:
        raise LatticeError("a balanced normal bundle on P^1 x P^1 needs even degree")
    return -ctx["s"] + (normal_degree // 2) * ctx["f"]


@dataclass
class RuledRestrictionReport:
    e_restriction: DivisorClass
    h_restriction: DivisorClass
    restriction: DivisorClass            # (2H - E)|_E
    printed_e_restriction_agrees: bool
    degree_bounds: dict[tuple[int, int], int]   # (a, b) -> (as + bf).(2H - E)|_E
    excluded: dict[tuple[int, int], bool]        # b >= 9 contradicts b < 9 - 2r <= 9
    diagonal_degree: Fraction

    @property
    def ok(self) -> bool:
        return all(self.excluded.values()) and all(v <= 17 for v in self.degree_bounds.values())


def ruled_restriction_check(curve_degree: int = 4, genus: int = 0, ambient: str = "quadric",
                            candidates: Sequence[tuple[int, int]] = ((0, 12), (1, 11), (1, 13), (2, 10)),
                            printed_e_restriction: str = "s - 5f", degree_cap: int = 17,
                            mult_cap: int = 9) -> RuledRestrictionReport:
    """Recompute (2H - E)|_E on the exceptional divisor over a rational normal quartic."""
    ctx = ruled_surface_context()
    k_dot = -AMBIENT_INDEX[ambient] * curve_degree
    normal_degree = -k_dot + 2 * genus - 2
    EE = exceptional_self_restriction(ctx, normal_degree)
    HH = curve_degree * ctx["f"]
    R = 2 * HH - EE
    bounds = {}
    excluded = {}
    for a, b in candidates:
        C = a * ctx["s"] + b * ctx["f"]
        bounds[(a, b)] = int(ctx.pair(C, R))
        # s . ((3 - 2r) s + (9 - 2r) f) = 9 - 2r <= 9 must exceed b
        excluded[(a, b)] = b >= mult_cap
    delta = ctx["s"] + ctx["f"]
    return RuledRestrictionReport(EE, 2 * HH, R, ctx.parse(printed_e_restriction) == EE,
                                  bounds, excluded, ctx.pair(delta, R))
