"""Small orbits on the invariant quadrics and cubics, and the singular points among them."""

from __future__ import annotations

from a5geom.grouprep import small_orbits_on
from a5geom.projvar import classify_singularity
from a5geom.verify.scenario import Scenario


def main() -> None:
    sc = Scenario.load()
    for group, form, max_len in (("A5-standard", "X1", 19), ("A5-nonstandard", "X2", 19),
                                 ("A5-nonstandard", "Y2", 20)):
        scan = small_orbits_on(sc.group(group), sc.form(form), max_len)
        print(f"{form}: orbits of length <= {max_len}: {scan.lengths}")

    Y2 = sc.variety("Y2")
    for name in ("Y2.S5", "Y2.S12", "Y2.S15", "Y2.S20"):
        types = sorted({classify_singularity(Y2, p).type for p in sc.orbit(name).points})
        print(f"  {name}: {types}")


if __name__ == "__main__":
    main()
