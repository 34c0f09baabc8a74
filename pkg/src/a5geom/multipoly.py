"""Multivariate polynomials over Q(zeta_N).

A polynomial is a mapping from exponent tuples to nonzero field elements.  The
term order is graded lexicographic with x1 > x2 > ... throughout.  Products
accumulate unreduced flint polynomials and reduce modulo Phi_N once per output
coefficient.
"""

from __future__ import annotations

import heapq
import itertools
import re
from typing import Iterable, Mapping, Sequence

from flint import fmpq_poly

from .cyclofield import CycElem, FieldSpec, LiteralSyntaxError, default_field, parse_cyc, render
from . import linalg

Exp = tuple


def grlex_key(e: Exp) -> tuple:
    return (sum(e), e)


def monomials(nvars: int, degree: int) -> list[Exp]:
    """All exponent tuples of the given total degree, in descending grlex order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grlex_key, reverse=True)
    return out


class MultiPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: FieldSpec, nvars: int, terms: Mapping[Exp, CycElem] | None = None):
        self.field = field
        self.nvars = nvars
        self.terms: dict[Exp, CycElem] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                c = field.coerce(c)
                if not c.is_zero():
                    self.terms[tuple(e)] = c

    @classmethod
    def _raw(cls, field: FieldSpec, nvars: int, terms: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p.field, p.nvars, p.terms = field, nvars, terms
        return p

    # constructors -------------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int = 5, field: FieldSpec | None = None) -> "MultiPoly":
        return cls._raw(field or default_field(), nvars, {})

    @classmethod
    def const(cls, c, nvars: int = 5, field: FieldSpec | None = None) -> "MultiPoly":
        F = field or default_field()
        return cls(F, nvars, {(0,) * nvars: F.coerce(c)})

    @classmethod
    def var(cls, i: int, nvars: int = 5, field: FieldSpec | None = None) -> "MultiPoly":
        F = field or default_field()
        e = [0] * nvars
        e[i] = 1
        return cls._raw(F, nvars, {tuple(e): F.one})

    @classmethod
    def linear(cls, coeffs: Sequence, field: FieldSpec | None = None) -> "MultiPoly":
        F = field or default_field()
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(F, n, terms)

    @classmethod
    def monomial(cls, e: Exp, c=1, field: FieldSpec | None = None) -> "MultiPoly":
        F = field or default_field()
        return cls(F, len(e), {tuple(e): F.coerce(c)})

    # basic structure ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exp, CycElem]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exp, CycElem]:
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def coefficient(self, e: Exp) -> CycElem:
        return self.terms.get(tuple(e), self.field.zero)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, CycElem)):
            return self == MultiPoly.const(other, self.nvars, self.field) if other != 0 else self.is_zero()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset((e, c.key()) for e, c in self.terms.items()))

    # arithmetic -----------------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.const(other, self.nvars, self.field)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly._raw(self.field, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "MultiPoly":
        c = self.field.coerce(c)
        if c.is_zero():
            return MultiPoly._raw(self.field, self.nvars, {})
        return MultiPoly._raw(self.field, self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        acc: dict[Exp, fmpq_poly] = {}
        for e1, c1 in self.terms.items():
            p1 = c1._p
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = p1 * c2._p
                s = acc.get(e)
                acc[e] = prod if s is None else s + prod
        F = self.field
        terms = {}
        for e, p in acc.items():
            c = F._wrap(p)
            if not c.is_zero():
                terms[e] = c
        return MultiPoly._raw(F, self.nvars, terms)

    def __rmul__(self, other) -> "MultiPoly":
        return self.scale(other)

    def __truediv__(self, c) -> "MultiPoly":
        return self.scale(self.field.coerce(c).inverse())

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1, self.nvars, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # calculus and evaluation ------------------------------------------------------
    def partial(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MultiPoly._raw(self.field, self.nvars, terms)

    def gradient(self) -> list["MultiPoly"]:
        return [self.partial(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence) -> CycElem:
        F = self.field
        pt = [F.coerce(x) for x in point]
        if len(pt) != self.nvars:
            raise ValueError("point has wrong number of coordinates")
        powers: list[dict[int, CycElem]] = [{0: F.one, 1: x} for x in pt]

        def pw(i: int, k: int) -> CycElem:
            d = powers[i]
            if k not in d:
                d[k] = pw(i, k - 1) * pt[i]
            return d[k]

        acc = F.zero
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            acc = acc + t
        return acc

    __call__ = evaluate

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """p(images[0], ..., images[n-1]); images share a variable count."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        degs = {im.degree() for im in images if not im.is_zero()}
        if any(not im.is_homogeneous() for im in images) or len(degs) > 1:
            raise ValueError("substitution images must be homogeneous of a common degree")
        m = images[0].nvars
        F = self.field
        cache: dict[tuple[int, int], MultiPoly] = {}

        def pw(i: int, k: int) -> MultiPoly:
            if k == 0:
                return MultiPoly.const(1, m, F)
            if (i, k) not in cache:
                cache[(i, k)] = images[i] if k == 1 else pw(i, k - 1) * images[i]
            return cache[(i, k)]

        # share partial products across monomials through a prefix cache
        prefix: dict[Exp, MultiPoly] = {}

        def mono(e: Exp) -> MultiPoly:
            last = max((i for i, k in enumerate(e) if k), default=None)
            if last is None:
                return MultiPoly.const(1, m, F)
            if e in prefix:
                return prefix[e]
            head = list(e)
            head[last] = 0
            head = tuple(head)
            val = pw(last, e[last]) if not any(head) else mono(head) * pw(last, e[last])
            prefix[e] = val
            return val

        acc: dict[Exp, fmpq_poly] = {}
        for e, c in self.terms.items():
            for e2, c2 in mono(e).terms.items():
                prod = c._p * c2._p
                s = acc.get(e2)
                acc[e2] = prod if s is None else s + prod
        terms = {}
        for e, p in acc.items():
            v = F._wrap(p)
            if not v.is_zero():
                terms[e] = v
        return MultiPoly._raw(F, m, terms)

    def linear_substitute(self, matrix: Sequence[Sequence[CycElem]]) -> "MultiPoly":
        """p(A x): variable i is replaced by the i-th row of A as a linear form."""
        rows = [MultiPoly.linear(list(r), self.field) for r in matrix]
        return self.substitute(rows)

    def reduce_by(self, d: "MultiPoly") -> "MultiPoly":
        """Remainder of division by the single polynomial d (grlex)."""
        if d.is_zero():
            raise ZeroDivisionError("reduction by the zero polynomial")
        lt, lc = d.leading_term()
        inv = lc.inverse()
        tail = [(e, c * inv) for e, c in d.terms.items() if e != lt]
        work = dict(self.terms)
        heap = [(-sum(e), tuple(-x for x in e)) for e in work]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, ne = heapq.heappop(heap)
            e = tuple(-x for x in ne)
            c = work.pop(e, None)
            if c is None or c.is_zero():
                continue
            if all(a >= b for a, b in zip(e, lt)):
                q = tuple(a - b for a, b in zip(e, lt))
                for te, tc in tail:
                    ee = tuple(a + b for a, b in zip(q, te))
                    old = work.get(ee)
                    if old is None:
                        work[ee] = -(c * tc)
                        heapq.heappush(heap, (-sum(ee), tuple(-x for x in ee)))
                    else:
                        work[ee] = old - c * tc
            else:
                rem[e] = c
        return MultiPoly._raw(self.field, self.nvars, rem)

    def map_coeffs(self, f) -> "MultiPoly":
        return MultiPoly(self.field, self.nvars, {e: f(c) for e, c in self.terms.items()})

    def galois(self, k: int) -> "MultiPoly":
        return self.map_coeffs(lambda c: c.galois(k))

    def coeff_vector(self, basis: Sequence[Exp]) -> list[CycElem]:
        return [self.terms.get(e, self.field.zero) for e in basis]

    def normalized(self) -> "MultiPoly":
        """Scale so that the leading coefficient is 1."""
        if self.is_zero():
            return self
        return self / self.leading_term()[1]

    # text -------------------------------------------------------------------------
    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({render_poly(self)!r})"


def render_poly(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            (f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}") for i, k in enumerate(e) if k
        )
        lit = render(c)
        simple = re.fullmatch(r"-?[0-9/]+|-?z\d+(\^\d+)?|-?[0-9/]+\*z\d+(\^\d+)?", lit) is not None
        neg = lit.startswith("-") and simple
        body = lit[1:] if neg else lit
        if not simple:
            body = f"({body})"
        if mono:
            if body == "1":
                term = mono
            else:
                term = f"{body}*{mono}"
        else:
            term = body
        parts.append(("-" if neg else "+", term))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, t in parts[1:]:
        out += f" {s} {t}"
    return out


_PTOK = re.compile(r"\s*(?:(\d+)|z(\d+)|x(\d+)|([-+*/^()]))")


def parse_poly(text: str, field: FieldSpec | None = None, nvars: int = 5) -> MultiPoly:
    """Parse a polynomial literal: cyclotomic literals combined with variables x1..xn."""
    F = field or default_field()
    toks = []
    pos = 0
    text_s = text.rstrip()
    while pos < len(text_s):
        m = _PTOK.match(text_s, pos)
        if not m or m.end() == pos:
            raise LiteralSyntaxError(f"unexpected character at {pos} in {text!r}")
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            toks.append(("root", int(m.group(2))))
        elif m.group(3) is not None:
            i = int(m.group(3))
            if not 1 <= i <= nvars:
                raise LiteralSyntaxError(f"variable x{i} out of range")
            toks.append(("var", i - 1))
        else:
            toks.append(("op", m.group(4)))
        pos = m.end()
    idx = [0]

    def peek():
        return toks[idx[0]] if idx[0] < len(toks) else None

    def take(op=None):
        t = peek()
        if t is None or (op is not None and t != ("op", op)):
            raise LiteralSyntaxError(f"expected {op or 'token'} in {text!r}")
        idx[0] += 1
        return t

    def expr():
        v = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            w = term()
            v = v + w if op == "+" else v - w
        return v

    def term():
        v = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            w = unary()
            if op == "*":
                v = v * w
            else:
                if w.degree() > 0:
                    raise LiteralSyntaxError("division by a non-constant polynomial")
                if w.is_zero():
                    raise ZeroDivisionError("division by zero")
                v = v / w.coefficient((0,) * nvars)
        return v

    def unary():
        t = peek()
        if t == ("op", "-"):
            take()
            return -unary()
        if t == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            t = take()
            if t[0] != "int":
                raise LiteralSyntaxError("exponent must be a non-negative integer")
            return base ** t[1]
        return base

    def atom():
        t = take()
        if t[0] == "int":
            return MultiPoly.const(t[1], nvars, F)
        if t[0] == "root":
            return MultiPoly.const(F.zeta(t[1]), nvars, F)
        if t[0] == "var":
            return MultiPoly.var(t[1], nvars, F)
        if t == ("op", "("):
            v = expr()
            take(")")
            return v
        raise LiteralSyntaxError(f"unexpected token in {text!r}")

    if not toks:
        raise LiteralSyntaxError("empty polynomial literal")
    out = expr()
    if peek() is not None:
        raise LiteralSyntaxError(f"trailing input in {text!r}")
    return out


def variables(nvars: int = 5, field: FieldSpec | None = None) -> list[MultiPoly]:
    return [MultiPoly.var(i, nvars, field) for i in range(nvars)]


def forms_basis_matrix(forms: Sequence[MultiPoly], degree: int) -> tuple[list[Exp], list[list[CycElem]]]:
    basis = monomials(forms[0].nvars, degree)
    return basis, [f.coeff_vector(basis) for f in forms]


def span_dimension(forms: Sequence[MultiPoly]) -> int:
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        return 0
    F = forms[0].field
    exps = sorted({e for f in forms for e in f.terms}, key=grlex_key, reverse=True)
    return linalg.rank([f.coeff_vector(exps) for f in forms], F)


def in_span(p: MultiPoly, forms: Sequence[MultiPoly]) -> bool:
    return span_dimension(list(forms) + [p]) == span_dimension(forms)
