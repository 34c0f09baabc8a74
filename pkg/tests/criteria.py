"""Acceptance criteria mapped to registry check ids.

A criterion passes when each listed check passes; ids in ``may_skip`` may also
report skipped-with-reason (optional external inputs).
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    ids: tuple[str, ...]
    may_skip: tuple[str, ...] = field(default=())


_Y1 = ("S5a", "S5b", "S10a", "S10b", "S10c", "S10d", "S12a", "S12b", "S15")

CRITERIA = (
    Criterion(1, "group census and S5 extension",
              ("group.A5-standard", "group.A5-nonstandard", "group.S5-nonstandard", "group.S5-nonstandard.census")),
    Criterion(2, "orbit tables on X1, Y1, X2, Y2",
              ("scan.X1", "scan.Y1", "scan.X2", "scan.Y2")
              + tuple(f"orbit.std.{s}" for s in ("S5", "S5p", "S10", "S10p", "S12", "S12p"))
              + tuple(f"orbit.Y1.{s}" for s in _Y1)
              + tuple(f"orbit.ns.{s}" for s in ("S5", "S5p", "S12", "S12p"))
              + tuple(f"orbit.Y2.{s}" for s in ("S5", "S12", "S12p", "S15", "S20"))),
    Criterion(3, "invariant form dimensions",
              ("invariant.std.quadrics", "invariant.ns.quadrics", "invariant.ns.cubics")),
    Criterion(4, "singularity census of Y1, Y2 and Q on Y2",
              ("sing.Y1", "sing.Y2", "sing.Q_Y2")),
    Criterion(5, "Cremona images from both length-5 orbits on each quadric",
              ("cremona.std.S5", "cremona.std.S5p", "cremona.ns.S5", "cremona.ns.S5p")),
    Criterion(6, "pencil singular members and singular quartic curves",
              ("pencil.std.S5", "pencil.std.S10", "pencil.ns.S5", "pencil.ns.S12", "sing.ns.C4", "sing.ns.C4p")),
    Criterion(7, "curve containments",
              ("contain.ns.C5", "contain.ns.C1", "contain.ns.C2", "contain.ns.L12", "contain.ns.L12p",
               "contain.std.C1", "contain.std.C2", "contain.std.L12", "contain.std.L12p",
               "contain.B6", "lattice.genus.B6")),
    Criterion(8, "line disjointness",
              ("disjoint.std.L12", "disjoint.std.L12p", "disjoint.Y2.L6", "disjoint.Y2.L6p",
               "disjoint.Y2.L10", "disjoint.Y2.L10p")),
    Criterion(9, "linear system dimensions",
              ("dim.Y2.S15_S20", "dim.Y2.S20_S30a", "dim.Y2.S20_S30b", "dim.Y2.S20_S30c",
               "dim.Y2.S20_S30d", "dim.Y2.S20_S30line", "dim.Y2.cubics")),
    Criterion(10, "lattice ledger",
              ("lattice.detA", "lattice.pair.4H-C_sq", "lattice.pair.3H-C_4H-C", "lattice.degeneracy.1",
               "lattice.degeneracy.2", "lattice.blowup.C8", "lattice.blowup.C10", "lattice.blowup.L6",
               "lattice.blowup.L10", "lattice.blowup.C8C8p", "lattice.ruled.exclusion")),
    Criterion(11, "base-locus certificates",
              ("base.Y2.L6", "base.X2.C8"), may_skip=("base.X2.C8",)),
    Criterion(12, "property suites", ()),
)

# one line per evaluated criterion, printed in the pytest terminal summary
RESULTS: list[str] = []
