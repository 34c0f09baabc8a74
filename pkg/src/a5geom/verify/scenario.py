"""Load the JSON registries and resolve named groups, forms, points and curves.

Strings in the registry may reference constants and other forms as ``{name}``;
references expand to parenthesized text before parsing.  Everything resolved is
cached on the scenario, which is safe because all values are immutable.
"""

from __future__ import annotations

import json
import os
import re
import threading
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from ..cyclofield import FieldSpec, FieldError, LiteralSyntaxError
from ..grouprep import FiniteMatrixGroup, LinearMap, PointOrbit, ProjPoint, enumerate_group, orbit_of
from ..multipoly import MultiPoly, parse_poly
from ..projvar import RationalCurve, conic_from_plane, curve_orbit, line_from_equations, rational_normal_curve

REGISTRY_ENV = "A5GEOM_REGISTRY"
BUILTIN_FILES = ("groups.json", "varieties.json", "curves.json", "checks.json")
_REF = re.compile(r"\{([A-Za-z_][\w.]*)\}")


class RegistryError(ValueError):
    pass


def _read_builtin(name: str) -> dict:
    text = resources.files("a5geom.verify").joinpath("registry").joinpath(name).read_text(encoding="utf-8")
    return json.loads(text)


def _merge(base: dict, extra: Mapping) -> None:
    for k, v in extra.items():
        if k == "schema":
            continue
        if isinstance(v, Mapping) and isinstance(base.get(k), dict):
            _merge(base[k], v)
        elif isinstance(v, list) and isinstance(base.get(k), list):
            base[k].extend(v)
        else:
            base[k] = v


def registry_paths(explicit: Iterable[str | os.PathLike] | None = None) -> list[Path]:
    """Extra registry files: explicit paths first, else the environment override."""
    paths = [Path(p) for p in (explicit or [])]
    if not paths and os.environ.get(REGISTRY_ENV):
        paths = [Path(p) for p in os.environ[REGISTRY_ENV].split(os.pathsep) if p]
    out = []
    for p in paths:
        if p.is_dir():
            out.extend(sorted(p.glob("*.json")))
        elif p.exists():
            out.append(p)
        else:
            raise RegistryError(f"registry path {p} does not exist")
    return out


def load_data(extra_paths: Iterable[str | os.PathLike] | None = None) -> dict:
    data: dict = {}
    for name in BUILTIN_FILES:
        _merge(data, _read_builtin(name))
    for p in registry_paths(extra_paths):
        try:
            _merge(data, json.loads(Path(p).read_text(encoding="utf-8")))
        except json.JSONDecodeError as exc:
            raise RegistryError(f"{p}: {exc}") from exc
    return data


class Scenario:
    def __init__(self, data: dict, conductor: int = 120, overrides: Mapping[str, str] | None = None):
        self.data = data
        self.field = FieldSpec(conductor)
        self.overrides = dict(overrides or {})
        for key, g in data.get("groups", {}).items():
            need = int(g.get("conductor", 1))
            if conductor % need:
                raise RegistryError(f"group {key} needs conductor divisible by {need}, got {conductor}")
        self._cache: dict[tuple, object] = {}
        self._lock = threading.RLock()

    @classmethod
    def load(cls, extra_paths=None, conductor: int = 120) -> "Scenario":
        return cls(load_data(extra_paths), conductor)

    def with_constants(self, **overrides: str) -> "Scenario":
        sc = Scenario(self.data, self.field.N, {**self.overrides, **overrides})
        return sc

    # -- text expansion ------------------------------------------------------
    def expand(self, text: str, depth: int = 0) -> str:
        if depth > 20:
            raise RegistryError("reference cycle in registry expressions")

        def sub(m):
            name = m.group(1)
            if name in self.overrides:
                return "(" + self.expand(self.overrides[name], depth + 1) + ")"
            consts = self.data.get("constants", {})
            forms = self.data.get("forms", {})
            if name in consts:
                return "(" + self.expand(consts[name], depth + 1) + ")"
            if name in forms:
                return "(" + self.expand(forms[name], depth + 1) + ")"
            raise RegistryError(f"unknown reference {{{name}}}")

        return _REF.sub(sub, text)

    def _cached(self, key: tuple, build):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        val = build()
        with self._lock:
            return self._cache.setdefault(key, val)

    # -- forms and varieties ---------------------------------------------------
    def expr(self, text: str, nvars: int = 5) -> MultiPoly:
        try:
            return parse_poly(self.expand(text), self.field, nvars)
        except (LiteralSyntaxError, FieldError) as exc:
            raise RegistryError(f"cannot parse {text!r}: {exc}") from exc

    def scalar(self, text: str):
        from ..cyclofield import parse_cyc

        try:
            return parse_cyc(self.expand(text), self.field)
        except (LiteralSyntaxError, FieldError) as exc:
            raise RegistryError(f"cannot parse {text!r}: {exc}") from exc

    def form(self, name: str) -> MultiPoly:
        forms = self.data.get("forms", {})
        if name not in forms:
            return self.expr(name)
        return self._cached(("form", name), lambda: self.expr(forms[name]))

    def variety(self, name: str) -> list[MultiPoly]:
        vs = self.data.get("varieties", {})
        if name not in vs:
            raise RegistryError(f"unknown variety {name!r}")
        return self._cached(("variety", name), lambda: [self.form(f) for f in vs[name]])

    def pencil(self, name: str) -> dict:
        p = self.data.get("pencils", {}).get(name)
        if p is None:
            raise RegistryError(f"unknown pencil {name!r}")
        return {
            "group": self.group(p["group"]),
            "X": self.form(p["quadric"]),
            "A": self.expr(p["A"]),
            "B": self.expr(p["B"]),
        }

    def pencil_member(self, name: str, param: str) -> list[MultiPoly]:
        """Forms cutting {a1 A + a2 B = 0} on the pencil's quadric, param given as "[a1:a2]"."""
        a1, a2 = self.parameter(param)
        p = self.pencil(name)
        return [p["X"], p["A"].scale(a1) + p["B"].scale(a2)]

    def parameter(self, text: str):
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise RegistryError(f"pencil parameter must look like [a1:a2], got {text!r}")
        parts = _split_top(body[1:-1], ":")
        if len(parts) != 2:
            raise RegistryError(f"pencil parameter must have two entries, got {text!r}")
        return self.scalar(parts[0]), self.scalar(parts[1])

    # -- groups, points, orbits ------------------------------------------------
    def group(self, key: str) -> FiniteMatrixGroup:
        groups = self.data.get("groups", {})
        if key not in groups:
            raise RegistryError(f"unknown group {key!r}")

        def build():
            gens = []
            for M in groups[key]["generators"]:
                gens.append(LinearMap([[self.scalar(c) for c in row] for row in M], self.field))
            return enumerate_group(gens, name=key)

        return self._cached(("group", key), build)

    def point_entry(self, name: str) -> dict:
        pts = self.data.get("points", {})
        if name not in pts:
            raise RegistryError(f"unknown point {name!r}")
        return pts[name]

    def point(self, name: str) -> ProjPoint:
        e = self.point_entry(name)

        def build():
            body = e["rep"].strip()
            if not (body.startswith("[") and body.endswith("]")):
                raise RegistryError(f"bad point literal {e['rep']!r}")
            return ProjPoint([self.scalar(c) for c in _split_top(body[1:-1], ":")], self.field)

        return self._cached(("point", name), build)

    def orbit(self, name: str) -> PointOrbit:
        e = self.point_entry(name)
        return self._cached(("orbit", name), lambda: orbit_of(self.point(name), self.group(e["group"])))

    def points_named(self, names: Iterable[str]) -> list[ProjPoint]:
        out = []
        for n in names:
            out.extend(self.orbit(n).points)
        return out

    # -- curves ------------------------------------------------------------------
    def has_curve(self, name: str) -> bool:
        return name in self.data.get("curves", {})

    def curve(self, name: str) -> RationalCurve:
        cs = self.data.get("curves", {})
        if name not in cs:
            raise RegistryError(f"unknown curve {name!r}")
        e = cs[name]

        def build():
            kind = e.get("type")
            if kind == "line":
                return line_from_equations([self.expr(t) for t in e["equations"]], name)
            if kind == "conic":
                return conic_from_plane(self.form(e["quadric"]), [self.expr(t) for t in e["plane"]], name)
            if kind == "rnc":
                pts = self.orbit(e["through"]).points
                return rational_normal_curve(pts[: len(pts[0]) + 2], name)
            if kind == "param":
                forms = [self.expr(_binary(t), nvars=2) for t in e["forms"]]
                return RationalCurve(forms, name)
            raise RegistryError(f"curve {name!r} has unknown type {kind!r}")

        return self._cached(("curve", name), build)

    def curve_orbit(self, name: str, group: str) -> list[RationalCurve]:
        return self._cached(("curve_orbit", name, group), lambda: curve_orbit(self.curve(name), self.group(group)))


def _binary(text: str) -> str:
    """Parametrizations are written in s, t; the polynomial parser knows x1, x2."""
    return re.sub(r"\bt\b", "x2", re.sub(r"\bs\b", "x1", text))


def _split_top(text: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out]
