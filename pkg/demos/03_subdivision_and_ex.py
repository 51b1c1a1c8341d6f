"""Subdivision, Ex, and filling horns one stage up the tower.

Run: python demos/03_subdivision_and_ex.py
"""

from __future__ import annotations

from ssx.core import SimplicialMap, extensions, face, hom_set
from ssx.core.nerves import horn, standard_simplex
from ssx.corpus import circle
from ssx.subdivision import ex, ex_infty_horn_filler, ex_tower, sd_ex_transpose, subdivide


def main() -> None:
    for m in range(3):
        print(f"Sd Delta^{m} generators:", subdivide(standard_simplex(m)).obj.gen_count())

    E = ex(standard_simplex(1), 2)
    print("Ex Delta^1 in degrees 0..2:", [len(E.level(n)) for n in range(3)])

    # maps Sd A -> X correspond to maps A -> Ex X
    A, X = horn(2, 1), circle()
    SA = subdivide(A)
    EX = ex(X, A.dim)
    left = hom_set(SA.obj, X)
    right = hom_set(A, EX)
    print(f"|hom(Sd {A.name}, S1)| = {len(left)}, |hom({A.name}, Ex S1)| = {len(right)}")
    print("every transpose is simplicial:", all(sd_ex_transpose(G, SA, EX).is_valid() for G in left))

    # the circle is not Kan, but every horn in Ex S1 has a filler in Ex^2 S1
    T = ex_tower(X, 2, 2)
    H = horn(2, 0)
    horns = [SimplicialMap(H, T.stages[1], a) for a in extensions(H, T.stages[1])]
    good = 0
    for x in horns:
        fill = ex_infty_horn_filler(T, 1, x, 2, 0)
        good += all(
            T.stages[2].act(fill, face(2, j)) == T.units[1](x.images[tuple(v for v in range(3) if v != j)])
            for j in (1, 2)
        )
    print(f"filled {good} of {len(horns)} horns Lambda^(2,0) -> Ex S1")


if __name__ == "__main__":
    main()
