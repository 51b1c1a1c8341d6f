from __future__ import annotations

from itertools import product as cartesian
from math import comb

import pytest
from hypothesis import given, strategies as st

from ssx.core import (
    FgSimplicialSet,
    PresentationError,
    Simplex,
    count_homs,
    degeneracy,
    face,
    gen_simplex,
    hom_set,
    skeleton,
    truncate,
)
from ssx.core.nerves import boundary, horn, standard_simplex
from ssx.core.operators import Operator, compose
from ssx.corpus import circle, discrete, skeletal_indiscrete

OBJECTS = [standard_simplex(2), boundary(2), horn(2, 1), circle(), skeletal_indiscrete(2), discrete(3)]


def brute_force_homs(X: FgSimplicialSet, Y: FgSimplicialSet) -> int:
    """Try every dimension-respecting assignment of generators, keep the simplicial ones."""
    gens = X.all_generators()
    pools = [Y.level(X.gen_dim(g)) for g in gens]
    count = 0
    for choice in cartesian(*pools):
        img = dict(zip(gens, choice))
        ok = True
        for g in gens:
            for i, f in enumerate(X.gen_faces(g)):
                want = Y.act(img[f.gen], f.op) if not f.op.is_identity() else img[f.gen]
                if Y.act(img[g], face(X.gen_dim(g), i)) != want:
                    ok = False
                    break
            if not ok:
                break
        count += ok
    return count


def test_standard_simplex_levels():
    for m in range(4):
        D = standard_simplex(m)
        for n in range(4):
            assert len(D.level(n)) == comb(m + n + 1, n + 1)


def test_boundary_and_horn_counts():
    assert boundary(2).gen_count() == [3, 3]
    assert len(boundary(2).level(2)) == 9
    assert horn(2, 1).gen_count() == [3, 2]
    assert horn(3, 0).gen_count() == [4, 6, 3]


@pytest.mark.parametrize("X", OBJECTS, ids=lambda X: X.name)
def test_simplicial_identities_on_levels(X):
    for n in range(1, 4):
        for x in X.level(n):
            for j in range(n + 1):
                for i in range(j if n > 1 else 0):
                    assert X.act(X.act(x, face(n, j)), face(n - 1, i)) == X.act(
                        X.act(x, face(n, i)), face(n - 1, j - 1)
                    )
                assert X.act(X.act(x, degeneracy(n, j)), face(n + 1, j)) == x


@pytest.mark.parametrize("X", OBJECTS, ids=lambda X: X.name)
@given(data=st.data())
def test_action_is_functorial(X, data):
    n = data.draw(st.integers(0, 3))
    x = data.draw(st.sampled_from(X.level(n)))
    m = data.draw(st.integers(0, 3))
    k = data.draw(st.integers(0, 3))
    f = Operator(tuple(sorted(data.draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))), n)
    g = Operator(tuple(sorted(data.draw(st.lists(st.integers(0, m), min_size=k + 1, max_size=k + 1)))), m)
    assert X.act(X.act(x, f), g) == X.act(x, compose(f, g))


def test_normal_form_is_unique():
    X = skeletal_indiscrete(2)
    for n in range(4):
        seen = set()
        for x in X.level(n):
            nf = X.normal_form(x)
            assert nf.op.is_degeneracy()
            seen.add(nf)
        assert len(seen) == len(X.level(n))


def test_identity_violation_is_located():
    bad = [
        ("a", (0, ())),
        ("b", (0, ())),
        ("e", (1, (gen_simplex("b", 0), gen_simplex("a", 0)))),
        ("t", (2, (gen_simplex("e", 1), gen_simplex("e", 1), gen_simplex("e", 1)))),
    ]
    with pytest.raises(PresentationError, match="simplicial identity d_0 d_2 .* generator 't'"):
        FgSimplicialSet(bad)


def test_degenerate_generator_rejected():
    bad = [("a", (0, ())), ("e", (1, (gen_simplex("a", 0), gen_simplex("a", 0)))),
           ("t", (2, (Simplex(Operator((0, 0), 0), "a"),) * 3))]
    # a 2-cell with all faces degenerate at a is nondegenerate in the presentation
    FgSimplicialSet(bad)
    with pytest.raises(PresentationError):
        FgSimplicialSet([("a", (0, ())), ("e", (1, (gen_simplex("x", 0), gen_simplex("a", 0))))])


def test_empty_presentation():
    E = FgSimplicialSet([])
    assert E.level(0) == () and E.dim == -1


@pytest.mark.parametrize(
    "X,Y",
    [
        (standard_simplex(1), circle()),
        (boundary(2), standard_simplex(1)),
        (horn(2, 1), skeletal_indiscrete(2)),
        (circle(), skeletal_indiscrete(1)),
        (standard_simplex(2), boundary(2)),
    ],
    ids=lambda o: o.name,
)
def test_hom_enumeration_matches_brute_force(X, Y):
    assert count_homs(X, Y) == brute_force_homs(X, Y)
    for f in hom_set(X, Y):
        f.check()


def test_hom_counts_of_simplices():
    # maps Delta^m -> Delta^n are monotone maps [m] -> [n]
    for m in range(3):
        for n in range(3):
            assert count_homs(standard_simplex(m), standard_simplex(n)) == comb(m + n + 1, m + 1)


def test_skeleton_of_truncation_recovers_object():
    X = skeletal_indiscrete(2)
    K = skeleton(truncate(X, 3), 2)
    assert K.gen_count() == X.gen_count()
