"""Run registry checks and assemble reports."""

from __future__ import annotations

import fnmatch
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .checks import KINDS, MissingInput, canonical_expected, run_kind
from .scenario import RegistryError, Scenario, load_data

REPORT_SCHEMA = 1
CATEGORIES = ("orbit", "invariant", "singularity", "containment", "dimension", "cremona", "lattice")
SOURCES = ("printed", "derived", "trivial")
COMPARATORS = {
    "lt": lambda a, b: a < b,
    "le": lambda a, b: a <= b,
    "gt": lambda a, b: a > b,
    "ge": lambda a, b: a >= b,
}


@dataclass(frozen=True)
class CheckDescriptor:
    id: str
    anchor: str
    category: str
    kind: str
    params: dict
    expected: Any
    source: str
    requires: tuple[str, ...] = ()
    note: str | None = None

    @classmethod
    def from_entry(cls, cid: str, e: dict) -> "CheckDescriptor":
        for key in ("anchor", "category", "kind", "expected", "source"):
            if key not in e:
                raise RegistryError(f"check {cid!r} lacks {key!r}")
        if e["category"] not in CATEGORIES:
            raise RegistryError(f"check {cid!r} has unknown category {e['category']!r}")
        if e["source"] not in SOURCES:
            raise RegistryError(f"check {cid!r} has unknown source {e['source']!r}")
        if e["kind"] not in KINDS:
            raise RegistryError(f"check {cid!r} has unknown kind {e['kind']!r}")
        return cls(cid, e["anchor"], e["category"], e["kind"], dict(e.get("params", {})), e["expected"],
                   e["source"], tuple(e.get("requires", ())), e.get("note"))

    def to_dict(self) -> dict:
        d = {"id": self.id, "anchor": self.anchor, "category": self.category, "kind": self.kind,
             "params": self.params, "expected": self.expected, "source": self.source}
        if self.requires:
            d["requires"] = list(self.requires)
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class CheckReport:
    id: str
    anchor: str
    category: str
    status: str  # "pass", "fail" or "skipped-with-reason"
    computed: Any = None
    expected: Any = None
    wall_time: float = 0.0
    reason: str | None = None
    diff: list[dict] = field(default_factory=list)

    def to_dict(self, timings: bool = False) -> dict:
        d = {"id": self.id, "anchor": self.anchor, "category": self.category, "status": self.status,
             "expected": self.expected, "computed": self.computed}
        if self.reason:
            d["reason"] = self.reason
        if self.diff:
            d["diff"] = self.diff
        if timings:
            d["wall_time"] = round(self.wall_time, 3)
        return d


def descriptors(data: dict) -> list[CheckDescriptor]:
    checks = data.get("checks", {})
    return sorted((CheckDescriptor.from_entry(k, v) for k, v in checks.items()), key=lambda d: d.id)


def select(descs: Sequence[CheckDescriptor], pattern: str | None) -> list[CheckDescriptor]:
    """Descriptors whose id matches any of the comma-separated globs; empty pattern selects all."""
    if not pattern:
        return list(descs)
    pats = [p.strip() for p in pattern.split(",") if p.strip()]
    out = [d for d in descs if any(fnmatch.fnmatchcase(d.id, p) for p in pats)]
    if not out:
        raise RegistryError(f"no check id matches {pattern!r}")
    return out


# ---------------------------------------------------------------------------
# comparison

def _is_comparator(x) -> bool:
    return isinstance(x, dict) and len(x) == 1 and next(iter(x)) in COMPARATORS


def _matches(expected, computed) -> bool:
    if _is_comparator(expected):
        op, bound = next(iter(expected.items()))
        return isinstance(computed, (int, float)) and COMPARATORS[op](computed, bound)
    return expected == computed


def compare(expected, computed) -> list[dict]:
    """Mismatches between expected and computed.

    A dict expected value is compared key by key at the top level, so the registry
    only pins what it states; nested values must match exactly.
    """
    if isinstance(expected, dict) and not _is_comparator(expected) and isinstance(computed, dict):
        out = []
        for k in expected:
            if k not in computed:
                out.append({"key": k, "expected": expected[k], "computed": "<missing>"})
            elif not _matches(expected[k], computed[k]):
                out.append({"key": k, "expected": expected[k], "computed": computed[k]})
        return out
    if _matches(expected, computed):
        return []
    return [{"key": None, "expected": expected, "computed": computed}]


# ---------------------------------------------------------------------------
# execution

def _missing_requirement(sc: Scenario, req: str) -> str | None:
    section, _, name = req.partition(":")
    if name not in sc.data.get(section, {}):
        return f"optional input {section}/{name} is not in the registry"
    return None


def run_one(sc: Scenario, d: CheckDescriptor) -> CheckReport:
    rep = CheckReport(d.id, d.anchor, d.category, "fail", expected=d.expected)
    for req in d.requires:
        why = _missing_requirement(sc, req)
        if why:
            rep.status, rep.reason = "skipped-with-reason", why
            return rep
    t0 = time.perf_counter()
    try:
        expected = canonical_expected(sc, d.kind, d.expected)
        computed = run_kind(sc, d.kind, d.params)
    except MissingInput as exc:
        rep.status, rep.reason = "skipped-with-reason", str(exc)
        return rep
    except Exception as exc:  # a failing computation is a failed check, not a crash of the suite
        rep.reason = f"{type(exc).__name__}: {exc}"
        rep.wall_time = time.perf_counter() - t0
        return rep
    rep.wall_time = time.perf_counter() - t0
    rep.expected = expected
    rep.computed = computed
    rep.diff = compare(expected, computed)
    rep.status = "fail" if rep.diff else "pass"
    return rep


def _groups_used(descs: Iterable[CheckDescriptor], sc: Scenario) -> list[str]:
    names = set()
    for d in descs:
        for v in d.params.values():
            if isinstance(v, str) and v in sc.data.get("groups", {}):
                names.add(v)
    return sorted(names)


def run_checks(pattern: str | None = None, jobs: int = 1, conductor: int = 120,
               registry: Iterable[str] | None = None, scenario: Scenario | None = None) -> list[CheckReport]:
    """Run matching checks; groups are enumerated before any check that uses them."""
    sc = scenario or Scenario(load_data(registry), conductor)
    chosen = select(descriptors(sc.data), pattern)
    for g in _groups_used(chosen, sc):
        sc.group(g)
    if jobs <= 1:
        reports = [run_one(sc, d) for d in chosen]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(lambda d: run_one(sc, d), chosen))
    return sorted(reports, key=lambda r: r.id)


def exit_code(reports: Sequence[CheckReport]) -> int:
    return 1 if any(r.status == "fail" for r in reports) else 0


def summary(reports: Sequence[CheckReport]) -> dict[str, int]:
    out = {"pass": 0, "fail": 0, "skipped-with-reason": 0}
    for r in reports:
        out[r.status] += 1
    return out


# ---------------------------------------------------------------------------
# reports

def _lit(x) -> str:
    return json.dumps(x, sort_keys=True, ensure_ascii=False)


def emit_report(reports: Sequence[CheckReport], fmt: str = "json", timings: bool = False) -> str:
    if fmt == "json":
        doc = {"schema": REPORT_SCHEMA, "summary": summary(reports),
               "checks": [r.to_dict(timings) for r in sorted(reports, key=lambda r: r.id)]}
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt in ("md", "markdown"):
        return _markdown(reports, timings)
    raise ValueError(f"unknown report format {fmt!r}")


def _markdown(reports: Sequence[CheckReport], timings: bool) -> str:
    s = summary(reports)
    lines = ["# Verification report", "",
             f"{s['pass']} pass, {s['fail']} fail, {s['skipped-with-reason']} skipped", ""]
    groups: dict[str, list[CheckReport]] = {}
    for r in sorted(reports, key=lambda r: r.id):
        groups.setdefault(r.anchor, []).append(r)
    for anchor in sorted(groups):
        lines += [f"## {anchor}", ""]
        head = "| id | status | computed |" + (" time (s) |" if timings else "")
        lines += [head, "|---|---|---|" + ("---|" if timings else "")]
        for r in groups[anchor]:
            comp = r.reason if r.computed is None and r.reason else _lit(r.computed)
            row = f"| `{r.id}` | {r.status} | `{comp}` |"
            if timings:
                row += f" {r.wall_time:.2f} |"
            lines.append(row.replace("\n", " "))
        lines.append("")
        for r in groups[anchor]:
            if r.status != "fail":
                continue
            lines += [f"`{r.id}` differs:", "", "```diff"]
            if r.diff:
                for d in r.diff:
                    key = f"{d['key']}: " if d["key"] is not None else ""
                    lines += [f"- {key}{_lit(d['expected'])}", f"+ {key}{_lit(d['computed'])}"]
            else:
                lines += [f"- {_lit(r.expected)}", f"+ {r.reason}"]
            lines += ["```", ""]
    return "\n".join(lines).rstrip() + "\n"
