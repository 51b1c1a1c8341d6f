"""Forgetting degeneracies and replacing by nerves of simplex categories.

Run: python demos/05_replacements.py
"""

from __future__ import annotations

from ssx.core.nerves import standard_simplex
from ssx.corpus import circle
from ssx.replacement import counit, forget_degeneracies, lu, simplex_category_nerve, tau


def main() -> None:
    pt = standard_simplex(0)
    print("U Delta^0 up to 4:", forget_degeneracies(pt, 4).sizes())
    print("LU Delta^0 in degrees 0..4:", [len(lu(pt, 4).level(n)) for n in range(5)])
    print("counit on the circle is simplicial:", counit(circle(), 2).is_valid())

    D1 = standard_simplex(1)
    T = simplex_category_nerve(D1, 2, 1)
    print("T_2 Delta^1 in degrees 0..1:", [len(T.level(n)) for n in range(2)])
    print("tau: T_2 Delta^1 -> Delta^1 simplicial:", tau(D1, 2, 1, T).is_valid())


if __name__ == "__main__":
    main()
