"""Map the nonstandard quadric through the Cremona transformation centred at a length-5 orbit."""

from __future__ import annotations

from a5geom.cremona import build_cremona, conjugated_group, image_cubic, reverse_quadric
from a5geom.grouprep import small_orbits_on
from a5geom.multipoly import in_span
from a5geom.projvar import classify_singularity
from a5geom.verify.scenario import Scenario


def main() -> None:
    sc = Scenario.load()
    G = sc.group("A5-nonstandard")
    chi = build_cremona(sc.orbit("ns.S5"))
    print("involution certified:", chi.involution_certified())

    img = image_cubic(chi, sc.form("X2"))
    print("image cubic certified:", img.certified, "(solution space dim", img.solution_dim, ")")
    print("cubic:", img.cubic_source)
    print("in span{f1, f2}:", in_span(img.cubic_source, [sc.form("f1"), sc.form("f2")]))
    print("equivariant:", conjugated_group(chi, G, img).ok)
    print("quadric recovered from the cubic:", reverse_quadric(img)[1])

    # singular points of an invariant cubic form whole orbits, so scanning small orbits finds them
    census: dict[str, int] = {}
    for orb in small_orbits_on(G, img.cubic_source, 20).orbits:
        t = classify_singularity([img.cubic_source], orb.points[0]).type
        if t != "smooth":
            census[t] = census.get(t, 0) + len(orb)
    print("singular points of the image:", census)


if __name__ == "__main__":
    main()
