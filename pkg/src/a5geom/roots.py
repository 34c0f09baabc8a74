"""Exact roots in Q(zeta_N) of univariate polynomials with coefficients in Q(zeta_N).

A root r has power-basis coordinates c = V^{-1} (sigma_k(r))_k where V is the
Vandermonde matrix of the embeddings.  Each sigma_k(r) must be one of the complex
roots of sigma_k(f), so a root in the field is a choice of one complex root per
conjugate pair of embeddings for which the reconstructed coordinates are rational
with known denominator.  The choices are searched meet-in-the-middle over two
halves of the embeddings; every numerical candidate is then verified exactly.
Floating point only proposes candidates; it never decides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cyclofield import CycElem, FieldSpec

UPoly = list  # list[CycElem], index = power of the variable


def trim(p: UPoly) -> UPoly:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def deriv(p: UPoly) -> UPoly:
    return trim([c * i for i, c in enumerate(p)][1:])


def evaluate(p: UPoly, x: CycElem) -> CycElem:
    acc = x.field.zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def divmod_upoly(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    F = b[-1].field
    inv = b[-1].inverse()
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while r and len(r) >= len(b):
        c = r[-1] * inv
        shift = len(r) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] = r[shift + i] - c * bc
        r.pop()
        r = trim(r)
    return trim(q), r


def monic(p: UPoly) -> UPoly:
    inv = p[-1].inverse()
    return [c * inv for c in p]


def gcd_upoly(a: UPoly, b: UPoly) -> UPoly:
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_upoly(a, b)
        a, b = b, r
    return monic(a) if a else a


def squarefree_part(p: UPoly) -> UPoly:
    p = trim(p)
    d = deriv(p)
    if not d:
        return monic(p)
    g = gcd_upoly(p, d)
    q, _ = divmod_upoly(p, g)
    return monic(q)


@dataclass
class RootResult:
    roots: list[CycElem]
    multiplicities: list[int]
    residual: UPoly = field(default_factory=list)  # monic factor with no roots in the field

    @property
    def residual_degree(self) -> int:
        return max(len(self.residual) - 1, 0)


@lru_cache(maxsize=None)
def _embedding_data(N: int):
    F = FieldSpec(N)
    units = F.units
    V = np.exp(2j * np.pi * np.outer(units, np.arange(F.phi)) / N)
    W = np.linalg.inv(V)
    half = [i for i, k in enumerate(units) if 2 * k < N]
    if N <= 2:
        half = [0]
    return units, W, half


def _denominator_lcm(p: UPoly) -> int:
    den = 1
    for c in p:
        den = math.lcm(den, int(c._p.denom()))
    return den


def _numeric_roots(p: UPoly, k: int) -> np.ndarray:
    cs = [c.embed(k) for c in reversed(p)]
    return np.roots(cs)


def _candidates(p: UPoly) -> list[CycElem]:
    """Field roots of a monic squarefree polynomial p of degree >= 1."""
    F = p[0].field
    deg = len(p) - 1
    if deg == 1:
        return [-p[0]]
    units, W, half = _embedding_data(F.N)
    D = _denominator_lcm(p)
    real_field = F.N <= 2
    opts = []
    for a in half:
        z = _numeric_roots(p, units[a]) * D
        col = W[:, a]
        if real_field:
            opts.append(np.real(np.outer(z, col)))
        else:
            opts.append(2.0 * np.real(np.outer(z, col)))
    phi = F.phi
    scale = sum(float(np.abs(o).max()) for o in opts) + 1.0
    tol = min(0.2, max(1e-7, 1e-11 * scale))

    def combine(parts):
        S = np.zeros((1, phi))
        for o in parts:
            S = (S[:, None, :] + o[None, :, :]).reshape(-1, phi)
        return S

    mid = len(opts) // 2
    SL, SR = combine(opts[:mid]), combine(opts[mid:])
    x = np.mod(SL[:, 0], 1.0)
    y = np.mod(-SR[:, 0], 1.0)
    order = np.argsort(y)
    ys = y[order]
    ext = np.concatenate([ys - 1.0, ys, ys + 1.0])
    ext_idx = np.concatenate([order, order, order])
    lo = np.searchsorted(ext, x - tol, side="left")
    hi = np.searchsorted(ext, x + tol, side="right")
    counts = hi - lo
    li = np.repeat(np.arange(len(x)), counts)
    offsets = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    rj = ext_idx[np.repeat(lo, counts) + offsets]
    found: dict[tuple, CycElem] = {}
    chunk = 200000
    for s in range(0, len(li), chunk):
        v = SL[li[s:s + chunk]] + SR[rj[s:s + chunk]]
        ok = np.all(np.abs(v - np.round(v)) < tol, axis=1)
        for row in np.round(v[ok]).astype(np.int64):
            key = tuple(int(t) for t in row)
            if key in found:
                continue
            r = F.from_coeffs([Fraction(t, D) for t in key])
            if evaluate(p, r).is_zero():
                found[key] = r
                if len(found) == deg:
                    return list(found.values())
    return list(found.values())


def roots_in_field(p: UPoly) -> RootResult:
    """All roots of p in its coefficient field, with multiplicities and the rootless cofactor."""
    p = trim(p)
    if len(p) <= 1:
        raise ValueError("roots of a constant polynomial are undefined")
    sf = squarefree_part(p)
    roots: list[CycElem] = []
    rest = sf
    # exact linear factors first, then the numeric search for the rest
    for r in _candidates(sf) if len(sf) > 1 else []:
        q, rem = divmod_upoly(rest, [-r, r.field.one])
        if not rem:
            roots.append(r)
            rest = q
    roots.sort(key=lambda r: r.key())
    mults = []
    full = p
    for r in roots:
        m = 0
        while True:
            q, rem = divmod_upoly(full, [-r, r.field.one])
            if rem:
                break
            full, m = q, m + 1
        mults.append(m)
    residual = monic(full) if len(full) > 1 else []
    return RootResult(roots, mults, residual)


def field_sqrt(a: CycElem) -> CycElem | None:
    """A square root of a in the field, or None."""
    if a.is_zero():
        return a
    F = a.field
    res = roots_in_field([-a, F.zero, F.one])
    return res.roots[0] if res.roots else None


def quadratic_roots(a: CycElem, b: CycElem, c: CycElem) -> list[CycElem] | None:
    """Roots of a x^2 + b x + c (a != 0) via the quadratic formula; None if outside the field."""
    disc = b * b - a * c * 4
    s = field_sqrt(disc)
    if s is None:
        return None
    two_a = a * 2
    r1, r2 = (-b + s) / two_a, (-b - s) / two_a
    return [r1] if r1 == r2 else [r1, r2]
