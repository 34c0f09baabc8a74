"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) of
Q[z]/Phi_N(z).  The polynomial kernel is python-flint's ``fmpq_poly``;
everything above it (canonical reduction, Galois action, literal parsing and
rendering) lives here.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from flint import fmpq, fmpq_mat, fmpq_poly

Scalar = Union[int, Fraction, "CycElem"]

DEFAULT_CONDUCTOR = 120


class FieldError(ValueError):
    pass


class LiteralSyntaxError(FieldError):
    pass


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> fmpq_poly:
    """Phi_n by exact division of z^n - 1 by Phi_d for the proper divisors d."""
    num = fmpq_poly([-1] + [0] * (n - 1) + [1])
    for d in _divisors(n)[:-1]:
        q, r = divmod(num, cyclotomic_poly(d))
        if not r.is_zero():
            raise ArithmeticError(f"Phi_{d} does not divide z^{n}-1")
        num = q
    return num


class FieldSpec:
    """The field Q(zeta_N); instances are cached per conductor."""

    _cache: dict[int, "FieldSpec"] = {}

    def __new__(cls, N: int = DEFAULT_CONDUCTOR):
        if N in cls._cache:
            return cls._cache[N]
        if not isinstance(N, int) or N < 1:
            raise FieldError(f"conductor must be a positive integer, got {N!r}")
        self = super().__new__(cls)
        self.N = N
        self.modulus = cyclotomic_poly(N)
        self.phi = self.modulus.degree()
        self.units = [k for k in range(1, N + 1) if math.gcd(k, N) == 1]
        self._zpow: dict[int, CycElem] = {}
        cls._cache[N] = self
        return self

    # the spec-level field names
    @property
    def conductor(self) -> int:
        return self.N

    @property
    def phi_N(self) -> int:
        return self.phi

    def __repr__(self) -> str:
        return f"FieldSpec(N={self.N})"

    def __reduce__(self):
        return (FieldSpec, (self.N,))

    # constructors -----------------------------------------------------
    def _wrap(self, p: fmpq_poly) -> "CycElem":
        if p.degree() >= self.phi:
            p = p % self.modulus
        return CycElem(self, p)

    def __call__(self, x) -> "CycElem":
        return self.coerce(x)

    def coerce(self, x) -> "CycElem":
        if isinstance(x, CycElem):
            if x.field is not self:
                raise FieldError("elements belong to different fields")
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return CycElem(self, fmpq_poly([x]))
        if isinstance(x, Fraction):
            return CycElem(self, fmpq_poly([fmpq(x.numerator, x.denominator)]))
        if isinstance(x, str):
            return parse_cyc(x, self)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    @property
    def zero(self) -> "CycElem":
        return CycElem(self, fmpq_poly([]))

    @property
    def one(self) -> "CycElem":
        return CycElem(self, fmpq_poly([1]))

    def zpow(self, j: int) -> "CycElem":
        """zeta_N^j."""
        j %= self.N
        e = self._zpow.get(j)
        if e is None:
            e = self._wrap(fmpq_poly([0] * j + [1]))
            self._zpow[j] = e
        return e

    def zeta(self, k: int, j: int = 1) -> "CycElem":
        """zeta_k^j = exp(2 pi i j / k); k must divide N."""
        if k < 1 or self.N % k:
            raise FieldError(f"root order {k} does not divide conductor {self.N}")
        return self.zpow((self.N // k) * j)

    def from_coeffs(self, coeffs: Iterable) -> "CycElem":
        cs = [fmpq(c.numerator, c.denominator) if isinstance(c, Fraction) else c for c in coeffs]
        return self._wrap(fmpq_poly(cs))

    def sqrt_int(self, n: int) -> "CycElem":
        """Positive square root of a small integer when it lies in the field (real embedding k=1)."""
        from .roots import field_sqrt  # local import: roots depends on this module

        r = field_sqrt(self(n))
        if r is None:
            raise FieldError(f"sqrt({n}) is not in Q(zeta_{self.N})")
        return r if r.embed(1).real > 0 else -r


def default_field() -> FieldSpec:
    return FieldSpec(DEFAULT_CONDUCTOR)


class CycElem:
    """An element of Q(zeta_N) in canonical (fully reduced) power-basis form."""

    __slots__ = ("field", "_p", "_key")

    def __init__(self, field: FieldSpec, p: fmpq_poly):
        self.field = field
        self._p = p
        self._key = None

    # structure ------------------------------------------------------------
    @property
    def coeffs(self) -> list[Fraction]:
        cs = [Fraction(int(c.p), int(c.q)) for c in self._p.coeffs()]
        return cs + [Fraction(0)] * (self.field.phi - len(cs))

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.field.N, tuple(int(c) for c in self._p.numer().coeffs()), int(self._p.denom()))
        return self._key

    def __hash__(self) -> int:
        return hash(self.key())

    def __eq__(self, other) -> bool:
        if isinstance(other, CycElem):
            return self.field is other.field and self._p == other._p
        try:
            return self._p == self.field.coerce(other)._p
        except TypeError:
            return NotImplemented

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def __bool__(self) -> bool:
        return not self._p.is_zero()

    def is_rational(self) -> bool:
        return self._p.degree() <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is not rational")
        return self.coeffs[0]

    # arithmetic -----------------------------------------------------------
    def _other(self, other) -> fmpq_poly | None:
        if isinstance(other, CycElem):
            if other.field is not self.field:
                raise FieldError("elements belong to different fields")
            return other._p
        if isinstance(other, int):
            return fmpq_poly([other])
        if isinstance(other, Fraction):
            return fmpq_poly([fmpq(other.numerator, other.denominator)])
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CycElem(self.field, self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CycElem(self.field, self._p - o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CycElem(self.field, o - self._p)

    def __neg__(self):
        return CycElem(self.field, -self._p)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        p = self._p * o
        if p.degree() >= self.field.phi:
            p = p % self.field.modulus
        return CycElem(self.field, p)

    __rmul__ = __mul__

    def inverse(self) -> "CycElem":
        if self._p.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self._p.degree() == 0:
            return CycElem(self.field, fmpq_poly([1 / self._p[0]]))
        g, s, _ = self._p.xgcd(self.field.modulus)
        # Phi_N is irreducible, so g is a nonzero constant
        return CycElem(self.field, (s / g[0]) % self.field.modulus)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if isinstance(other, CycElem):
            return self * other.inverse()
        if o.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        return CycElem(self.field, self._p / o[0])

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CycElem(self.field, o) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # Galois action and embeddings -------------------------------------------
    def galois(self, k: int) -> "CycElem":
        """Apply the automorphism z -> z^k (k coprime to N)."""
        N = self.field.N
        if math.gcd(k, N) != 1:
            raise FieldError(f"{k} is not coprime to {N}")
        k %= N
        if k == 1 or self._p.degree() <= 0:
            return self
        out = fmpq_poly([])
        for j, c in enumerate(self._p.coeffs()):
            if c != 0:
                out += c * self.field.zpow(j * k)._p
        return CycElem(self.field, out)

    def conjugate(self) -> "CycElem":
        return self.galois(-1)

    def embed(self, root_choice: int = 1) -> complex:
        N = self.field.N
        if math.gcd(root_choice, N) != 1:
            raise FieldError(f"root choice {root_choice} is not coprime to {N}")
        w = cmath.exp(2j * math.pi * root_choice / N)
        acc = 0j
        for c in reversed(self._p.coeffs()):
            acc = acc * w + float(c)
        return acc

    # presentation -------------------------------------------------------------
    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"CycElem({render(self)!r}, N={self.field.N})"


def embed_complex(a: CycElem, root_choice: int = 1) -> tuple[float, float]:
    """Float image of ``a`` under z -> exp(2 pi i root_choice / N).  Diagnostics only."""
    z = a.embed(root_choice)
    return (z.real, z.imag)


# ---------------------------------------------------------------------------
# rendering

def _subfield_coords(a: CycElem, m: int) -> list[Fraction] | None:
    """Coordinates of ``a`` in the power basis of Q(zeta_m), or None if a is not in it."""
    F = a.field
    step = F.N // m
    if any(a.galois(k) != a for k in F.units if k % m == 1):
        return None
    dm = cyclotomic_poly(m).degree()
    cols = [F.zpow(step * j).coeffs for j in range(dm)]
    target = a.coeffs
    aug = fmpq_mat(F.phi, dm + 1, [
        fmpq(v.numerator, v.denominator)
        for i in range(F.phi)
        for v in [cols[j][i] for j in range(dm)] + [target[i]]
    ])
    red, rank = aug.rref()
    out = []
    for j in range(dm):
        v = red[j, dm]
        out.append(Fraction(int(v.p), int(v.q)))
    return out


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render(a: CycElem) -> str:
    """Minimal canonical literal: power basis of the smallest cyclotomic subfield containing a."""
    if a.is_rational():
        return _fmt_rational(a.coeffs[0])
    N = a.field.N
    for m in _divisors(N):
        if m <= 2:
            continue
        coords = _subfield_coords(a, m)
        if coords is not None:
            break
    else:  # pragma: no cover - m = N always succeeds
        raise AssertionError
    pieces: list[str] = []
    for j, c in enumerate(coords):
        if c == 0:
            continue
        if j == 0:
            body = _fmt_rational(abs(c))
        else:
            sym = f"z{m}" if j == 1 else f"z{m}^{j}"
            body = sym if abs(c) == 1 else f"{_fmt_rational(abs(c))}*{sym}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|z(\d+)|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out: list[tuple[str, str]] = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise LiteralSyntaxError(f"unexpected character at {pos} in {text!r}")
        if m.group(1) is not None:
            out.append(("int", m.group(1)))
        elif m.group(2) is not None:
            out.append(("root", m.group(2)))
        else:
            out.append(("op", m.group(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, field: FieldSpec):
        self.toks = _tokenize(text)
        self.i = 0
        self.F = field
        self.text = text

    def peek(self) -> tuple[str, str] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, op: str | None = None) -> tuple[str, str]:
        t = self.peek()
        if t is None or (op is not None and t != ("op", op)):
            raise LiteralSyntaxError(f"expected {op or 'token'} in {self.text!r}")
        self.i += 1
        return t

    def parse(self) -> CycElem:
        if not self.toks:
            raise LiteralSyntaxError("empty literal")
        v = self.expr()
        if self.peek() is not None:
            raise LiteralSyntaxError(f"trailing input in {self.text!r}")
        return v

    def expr(self) -> CycElem:
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self) -> CycElem:
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                if w.is_zero():
                    raise ZeroDivisionError(f"division by zero in {self.text!r}")
                v = v / w
        return v

    def unary(self) -> CycElem:
        t = self.peek()
        if t == ("op", "-"):
            self.take()
            return -self.unary()
        if t == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> CycElem:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "int":
                raise LiteralSyntaxError(f"exponent must be an integer in {self.text!r}")
            return base ** (sign * int(t[1]))
        return base

    def atom(self) -> CycElem:
        t = self.take()
        if t[0] == "int":
            return self.F(int(t[1]))
        if t[0] == "root":
            return self.F.zeta(int(t[1]))
        if t == ("op", "("):
            v = self.expr()
            self.take(")")
            return v
        raise LiteralSyntaxError(f"unexpected {t[1]!r} in {self.text!r}")


def parse_cyc(text: str, spec: FieldSpec | None = None) -> CycElem:
    """Parse a cyclotomic literal such as ``"z5^3 + z5^2 + 2"``."""
    return _Parser(text, spec or default_field()).parse()


def sqrt6(F: FieldSpec | None = None) -> CycElem:
    """sqrt(6) = (z8 + z8^-1)(z12 + z12^-1), positive at the standard embedding."""
    F = F or default_field()
    return (F.zeta(8) + F.zeta(8, -1)) * (F.zeta(12) + F.zeta(12, -1))
