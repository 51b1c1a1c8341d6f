"""Cofibrations, lifting problems and a bounded factorisation.

Run: python demos/02_cofibrations_and_lifting.py
"""

from __future__ import annotations

from ssx.cofibrations import is_cofibrant, is_cofibration, shuffle_filtration
from ssx.core import hom_set
from ssx.core.nerves import boundary, build_standard, standard_simplex
from ssx.corpus import circle, skeletal_indiscrete, to_point
from ssx.lifting import has_rlp, soa_factorize, verify_bounded_fibration


def main() -> None:
    v = is_cofibrant(boundary(2))
    print("boundary of Delta^2 cofibrant:", v.holds, "complements:", v.to_json()["complement_sizes"])

    _, inc = build_standard("horn", 2, 1)
    print("horn inclusion is a cofibration under each condition:",
          {c: is_cofibration(inc, c).holds for c in ("i", "ii", "iii")})
    collapse = hom_set(standard_simplex(1), standard_simplex(0))[0]
    print("Delta^1 -> Delta^0 is a cofibration:", is_cofibration(collapse).holds)

    _, stages, _ = shuffle_filtration(1, 2)
    print("cells attached building Delta^1 x Delta^2:", [s.cells for s in stages])

    for X in (standard_simplex(0), standard_simplex(1), circle(), skeletal_indiscrete(2)):
        r = has_rlp(to_point(X), "horns", 2)
        print(f"{X.name} -> *: horn lifting {r.holds} ({r.qualifier})")

    _, f = build_standard("boundary", 1)
    F = soa_factorize(f, "trivcof-fib", stages=2, maxdim=1)
    print("factorising the boundary of Delta^1, middle object:", F.middle.gen_count())
    print("second factor passes the bounded fibration check:", verify_bounded_fibration(F))
    print("first factor is a cofibration:", is_cofibration(F.first).holds)


if __name__ == "__main__":
    main()
