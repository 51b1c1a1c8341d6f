from __future__ import annotations

from ssx.core import identity_map, is_isomorphism
from ssx.core.constructions import finite_colimit, product, pullback, pushout
from ssx.core.nerves import build_standard, standard_simplex
from ssx.corpus import circle, discrete, to_point, vertex


def test_product_levels_multiply():
    for A, B in [(standard_simplex(1), standard_simplex(2)), (circle(), standard_simplex(1))]:
        P = product([A, B])
        for n in range(4):
            assert len(P.obj.level(n)) == len(A.level(n)) * len(B.level(n))


def test_prism_has_three_top_cells():
    P = product([standard_simplex(1), standard_simplex(2)])
    assert P.obj.gen_count()[-1] == 3


def test_pushout_of_endpoints_is_circle():
    _, inc = build_standard("boundary", 1)
    P = pushout(inc, to_point(inc.dom))
    assert P.obj.gen_count() == circle().gen_count()
    for n in range(4):
        assert len(P.obj.level(n)) == len(circle().level(n))


def test_pushout_is_universal_on_corpus():
    _, inc = build_standard("horn", 2, 1)
    P = pushout(inc, inc)
    # two triangles glued along a horn: 3 vertices, 2 + 2*1 edges, 2 triangles
    assert P.obj.gen_count() == [3, 4, 2]
    fold = P.induced([inc, identity_map(inc.cod), identity_map(inc.cod)])
    fold.check()


def test_pullback_of_vertex_is_fibre():
    X = standard_simplex(1)
    P = product([X, circle()])
    pr = P.projections[0]
    v = vertex(X, (0,))
    F = pullback(v, pr)
    assert F.obj.gen_count() == circle().gen_count()


def test_pullback_along_identity_is_iso():
    f = to_point(circle())
    L = pullback(identity_map(f.cod), f)
    assert is_isomorphism(L.projections[1])


def test_coproduct_levels_add():
    C = finite_colimit([discrete(2), standard_simplex(1)])
    for n in range(3):
        assert len(C.obj.level(n)) == 2 + n + 2
