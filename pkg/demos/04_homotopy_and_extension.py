"""Homotopies, strong homotopy equivalences and extending fibrations.

Run: python demos/04_homotopy_and_extension.py
"""

from __future__ import annotations

from ssx.core.nerves import boundary, build_standard, standard_simplex
from ssx.corpus import eqext_corpus, projection, skeletal_indiscrete, vertex
from ssx.homotopy import (
    dependent_product,
    equivalence_extend,
    extend_trivial_fibration,
    find_homotopy,
    she_witness_search,
    shrinkable_witness,
)
from ssx.subdivision import mu_simplex


def main() -> None:
    D1, B1 = standard_simplex(1), boundary(1)
    print("vertices of Delta^1 homotopic:", bool(find_homotopy(vertex(D1, (0,)), vertex(D1, (1,)))))
    w = find_homotopy(vertex(B1, (0,)), vertex(B1, (1,)))
    print("vertices of the boundary homotopic:", bool(w), "-", w.reason)

    for m, i in ((1, 0), (2, 1), (2, 2)):
        _, h = build_standard("horn", m, i)
        found = {k: bool(she_witness_search(h, k)) for k in (0, 1)}
        print(f"horn ({m},{i}) strong equivalence by orientation:", found)

    print("last vertex map of Delta^2 shrinkable:", bool(shrinkable_witness(mu_simplex(2))))

    _, i = build_standard("boundary", 1)
    _, fam = projection(D1, i.dom, 1)
    Pi = dependent_product(i, fam, 3)
    print("dependent product of a constant family, degrees 0..3:", [len(Pi.level(n)) for n in range(4)])

    case = eqext_corpus(fibres=(2,))[1]
    ext = equivalence_extend(case["i"], case["e"], case["x1"], case["y1"], cap=2)
    print(f"extension {case['name']} restricts to its input:", ext.fits)

    _, pr = projection(i.dom, skeletal_indiscrete(2), 0)
    over_b, ext = extend_trivial_fibration(i, pr, cap=2, check_maxdim=2)
    print("extended trivial fibration, degrees 0..2:", [len(ext.Y0.level(n)) for n in range(3)],
          "boundary lifting:", ext.fibrancy.holds)


if __name__ == "__main__":
    main()
