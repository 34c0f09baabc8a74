"""Recompute the intersection numbers used in the exclusion arguments."""

from __future__ import annotations

from a5geom.lattice import (
    K3CurveClass,
    anticanonical_cube,
    blowup_context,
    degeneracy_solve,
    det,
    k3_context,
    ruled_restriction_check,
)


def main() -> None:
    k3 = k3_context(6, {"C": K3CurveClass.from_genus(12, 0)})
    D = k3.parse("4H - C")
    print("(4H - C)^2 =", k3.pair(D, D))

    k3 = k3_context(6, {"C": K3CurveClass.from_genus(12, 5)})
    print("(3H - C).(4H - C) =", k3.pair(k3.parse("3H - C"), k3.parse("4H - C")))

    print("det =", det([[6, 8, 4], [8, -2, 7], [4, 7, 0]]))
    for args in ((-2, 16, -2, 16, 6), (-10, 10, 16, 16, 6)):
        print("degeneracy roots", args, "->", [str(r.value) for r in degeneracy_solve(*args) if r.admissible])

    for curve in ((8, 0), (10, 6)):
        print(f"(-K)^3 after blowing up (deg, g) = {curve}:", anticanonical_cube("quadric", [curve]))

    ctx = blowup_context("cubic", [(1, 0)] * 6)
    print("six lines: (3H-E).(2H-E)^2 =", ctx.triple(ctx.parse("3H - E"), ctx.parse("2H - E"), ctx.parse("2H - E")))

    rep = ruled_restriction_check()
    print("E|_E =", rep.e_restriction, " (2H - E)|_E =", rep.restriction)
    print("all candidate (a, b) excluded:", all(rep.excluded.values()))


if __name__ == "__main__":
    main()
