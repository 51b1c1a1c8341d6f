from __future__ import annotations

from itertools import combinations

import pytest

from ssx.core import hom_set
from ssx.core.constructions import pushout
from ssx.core.nerves import boundary, horn, standard_simplex
from ssx.corpus import circle, skeletal_indiscrete, vertex
from ssx.replacement import (
    FgSemiSimplicialSet,
    adjunction_transpose,
    adjunction_untranspose,
    counit,
    forget_degeneracies,
    free_map,
    free_simplicial,
    lu,
    semi_homs,
    simplex_category_map,
    simplex_category_nerve,
    tau,
)


def semi_simplex(m: int, skip_top: bool = False) -> FgSemiSimplicialSet:
    items = []
    for k in range(m + 1):
        for c in combinations(range(m + 1), k + 1):
            if skip_top and k == m:
                continue
            fs = tuple(c[:i] + c[i + 1 :] for i in range(k + 1)) if k else ()
            items.append((c, (k, fs)))
    return FgSemiSimplicialSet(items, name=f"ss{m}")


def semi_circle() -> FgSemiSimplicialSet:
    return FgSemiSimplicialSet([("v", (0, ())), ("e", (1, ("v", "v")))], name="ssS1")


SEMI = [semi_simplex(1), semi_simplex(2, skip_top=True), semi_circle(), semi_simplex(2)]
TARGETS = [standard_simplex(1), circle(), skeletal_indiscrete(2)]


def test_forgetful_sizes():
    assert forget_degeneracies(standard_simplex(0), 2).sizes() == [1, 1, 1]
    assert forget_degeneracies(standard_simplex(1), 1).sizes() == [2, 3]
    assert forget_degeneracies(standard_simplex(2), 1).sizes() == [3, 6]


def test_free_on_semisimplicial_simplex_is_simplex():
    for m in range(4):
        assert free_simplicial(semi_simplex(m)).gen_count() == standard_simplex(m).gen_count()


def test_semisimplicial_validation():
    from ssx.core import PresentationError

    with pytest.raises(PresentationError):
        FgSemiSimplicialSet([("v", (0, ())), ("e", (1, ("v",)))])


@pytest.mark.parametrize("Y", SEMI, ids=lambda Y: Y.name)
@pytest.mark.parametrize("X", TARGETS, ids=lambda X: X.name)
def test_free_forgetful_bijection(Y, X):
    UX = forget_degeneracies(X, max(Y.dim, 0))
    LY = free_simplicial(Y)
    left = list(semi_homs(Y, UX))
    right = hom_set(LY, X)
    assert len(left) == len(right)
    for h in left:
        F = adjunction_transpose(h, X, LY)
        F.check()
        assert adjunction_untranspose(F, Y, UX).images == h.images
    for F in right:
        h = adjunction_untranspose(F, Y, UX)
        assert h.is_valid()
        assert adjunction_transpose(h, X, LY).images == F.images


def test_lu_of_point_doubles():
    assert [len(lu(standard_simplex(0), 4).level(n)) for n in range(5)] == [1, 2, 4, 8, 16]


def test_lu_level_formula():
    # (LU X)_n is the union of X_k over degeneracy operators [n] -> [k]
    from math import comb

    X = circle()
    for n in range(4):
        expected = sum(comb(n, k) * len(X.level(k)) for k in range(n + 1))
        assert len(lu(X, 3).level(n)) == expected


def test_counit_is_simplicial_and_surjective():
    X = boundary(2)
    eps = counit(X, 2)
    eps.check()
    for n in range(3):
        assert set(eps.on_level(n)) == set(X.level(n))


def test_free_map_functorial():
    Y = semi_simplex(1)
    h = next(iter(semi_homs(Y, semi_circle())))
    free_map(h, free_simplicial(Y), free_simplicial(semi_circle())).check()


def test_simplex_category_vertex_count():
    # objects of Delta_{<=2} / Delta^1 are the 2 + 3 + 4 simplices in degrees <= 2
    T = simplex_category_nerve(standard_simplex(1), 2, 0)
    assert len(T.level(0)) == 9
    assert len(simplex_category_nerve(standard_simplex(0), 1, 0).level(0)) == 2


@pytest.mark.parametrize("X", [standard_simplex(1), circle(), horn(2, 1)], ids=lambda X: X.name)
def test_tau_is_simplicial(X):
    T = simplex_category_nerve(X, 1, 2)
    tau(X, 1, 2, T).check(2)


def test_t_preserves_a_pushout():
    # two edges glued at a vertex give the horn Lambda^{2,1}
    D0, D1 = standard_simplex(0), standard_simplex(1)
    f, g = vertex(D1, (1,)), vertex(D1, (0,))
    P = pushout(f, g)
    N, d = 1, 2
    TA, TB = simplex_category_nerve(D0, N, d), simplex_category_nerve(D1, N, d)
    TP = simplex_category_nerve(P.obj, N, d)
    Tf, Tg = simplex_category_map(f, TA, TB), simplex_category_map(g, TA, TB)
    Q = pushout(Tf, Tg)
    cmp = Q.induced(
        [
            simplex_category_map(f.then(P.legs[1]), TA, TP),
            simplex_category_map(P.legs[1], TB, TP),
            simplex_category_map(P.legs[2], TB, TP),
        ]
    )
    for n in range(d + 1):
        img = cmp.on_level(n)
        assert len(set(img)) == len(img) == len(TP.level(n))
