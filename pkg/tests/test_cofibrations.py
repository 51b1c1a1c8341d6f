from __future__ import annotations

from math import comb

import pytest

from ssx.cofibrations import (
    is_cofibrant,
    is_cofibration,
    latching_object,
    pushout_product,
    shuffle_filtration,
    skeleton_filtration,
)
from ssx.core import hom_set, is_isomorphism
from ssx.core.nerves import boundary, build_standard, horn, standard_simplex
from ssx.corpus import circle, indiscrete_nerve, projection, skeletal_indiscrete, subcomplexes

CONDITIONS = ("i", "ii", "iii")


def levelwise_injective(f, upto: int) -> bool:
    for n in range(upto + 1):
        img = [f(x) for x in f.dom.level(n)]
        if len(set(img)) != len(img):
            return False
    return True


@pytest.mark.parametrize(
    "X", [standard_simplex(2), boundary(2), boundary(3), horn(3, 1), circle(), skeletal_indiscrete(2)],
    ids=lambda X: X.name,
)
def test_finitely_generated_objects_are_cofibrant(X):
    v = is_cofibrant(X)
    assert v.holds and v.qualifier == "total"


def test_truncated_nerve_reports_its_cap():
    v = is_cofibrant(indiscrete_nerve(2))
    assert v.holds and v.qualifier == "up to cap 2"


def test_complements_are_nondegenerate_simplices():
    v = is_cofibrant(standard_simplex(2))
    # image of sigma_0 on level 0 misses the three nondegenerate edges plus degenerate ones not in its image
    for (n, i), comp in v.complements.items():
        X = standard_simplex(2)
        assert len(comp) == len(X.level(n + 1)) - len(X.level(n))


def test_latching_object_of_simplex():
    L = latching_object(standard_simplex(2), 2)
    assert len(L.complement) == 1
    assert len(L.elements) == len(standard_simplex(2).level(2)) - 1


@pytest.mark.parametrize("cond", CONDITIONS)
def test_subcomplex_inclusions_are_cofibrations(cond):
    for _, inc in subcomplexes(standard_simplex(2)):
        v = is_cofibration(inc, cond)
        assert v.holds, v.certificate


@pytest.mark.parametrize("cond", CONDITIONS)
def test_collapse_is_rejected_with_certificate(cond):
    for f in hom_set(standard_simplex(1), standard_simplex(0)) + hom_set(boundary(2), standard_simplex(1)):
        v = is_cofibration(f, cond)
        assert v.holds == levelwise_injective(f, 3)
        if not v.holds:
            assert v.certificate["condition"]
            assert v.certificate.get("kind", "not-injective") == "not-injective"


def test_conditions_agree_with_injectivity_oracle():
    maps = [inc for _, inc in subcomplexes(projection(standard_simplex(1), standard_simplex(1))[0].obj)]
    maps += hom_set(standard_simplex(1), circle()) + hom_set(boundary(2), skeletal_indiscrete(1))
    for f in maps:
        verdicts = {c: is_cofibration(f, c).holds for c in CONDITIONS}
        assert len(set(verdicts.values())) == 1, verdicts
        assert verdicts["i"] == levelwise_injective(f, 4)


def test_skeleton_filtration_ends_at_boundary():
    for m in range(1, 4):
        stages = skeleton_filtration(m)
        assert [s.cells for s in stages] == [comb(m + 1, k + 1) for k in range(m)]
        last = stages[-1]
        assert last.obj.gen_count() == boundary(m).gen_count()


@pytest.mark.parametrize("m,n", [(m, n) for m in range(4) for n in range(4) if m + n <= 4])
def test_shuffle_filtration_reassembles(m, n):
    start, stages, L = shuffle_filtration(m, n)
    final = stages[-1]
    assert is_isomorphism(final.embedding)
    assert stages[m + n].cells == comb(m + n, m)
    assert final.obj.gen_count() == L.obj.gen_count()
    # only surjective pairs are attached, so none below max(m, n)
    assert all(s.cells == 0 for s in stages[: max(m, n)])


def test_shuffle_cells_are_shuffles():
    _, stages, _ = shuffle_filtration(1, 2)
    top = stages[3].index
    assert sorted(top) == [((0, 0, 0, 1), (0, 1, 2, 2)), ((0, 0, 1, 1), (0, 1, 1, 2)), ((0, 1, 1, 1), (0, 0, 1, 2))]


def test_pushout_product_of_boundaries():
    _, i = build_standard("boundary", 1)
    pp = pushout_product(i, i)
    assert pp.colimit.obj.gen_count() == [4, 4]
    assert pp.map.cod.gen_count() == [4, 5, 2]
    assert is_cofibration(pp.map).holds
