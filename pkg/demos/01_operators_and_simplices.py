"""Operators, normal forms and the standard objects.

Run: python demos/01_operators_and_simplices.py
"""

from __future__ import annotations

from ssx.core import build_standard, epi_mono_factorize, face, gen_simplex, hom_set
from ssx.core.constructions import product, pushout
from ssx.core.nerves import standard_simplex
from ssx.core.operators import Operator
from ssx.corpus import vertex


def main() -> None:
    # a monotone map [3] -> [2] splits into a degeneracy followed by a face
    phi = Operator((0, 0, 2, 2), 2)
    e, i = epi_mono_factorize(phi)
    print(f"{phi} = {i} . {e}")

    D2 = standard_simplex(2)
    print("Delta^2 generators by dimension:", D2.gen_count())
    print("Delta^2 simplices in degrees 0..3:", [len(D2.level(n)) for n in range(4)])

    edge = gen_simplex((0, 2), 1)
    x = D2.act(edge, Operator((0, 0, 1), 1))
    print("the edge (0,2) degenerated to dimension 2:", x)
    print("its faces:", [D2.act(x, face(2, i)) for i in range(3)])

    for kind, args in (("boundary", (2,)), ("horn", (2, 1))):
        X, inc = build_standard(kind, *args)
        print(f"{X.name}: generators {X.gen_count()}, maps into Delta^2: {len(hom_set(X, D2))}")

    prism = product([standard_simplex(1), standard_simplex(1)])
    print("Delta^1 x Delta^1 generators:", prism.obj.gen_count())

    # two intervals glued end to start make the horn with middle vertex 1
    D1 = standard_simplex(1)
    P = pushout(vertex(D1, (1,)), vertex(D1, (0,)))
    print("interval + interval glued at a vertex:", P.obj.gen_count())


if __name__ == "__main__":
    main()
