from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, strategies as st

from ssx.core.operators import (
    Operator,
    compose,
    constant,
    degeneracy,
    enumerate_operators,
    epi_mono_factorize,
    face,
    identity,
    injections,
    surjections,
)


@st.composite
def operators(draw, max_dim: int = 5, dom: int | None = None, cod: int | None = None):
    m = draw(st.integers(0, max_dim)) if dom is None else dom
    n = draw(st.integers(0, max_dim)) if cod is None else cod
    vals = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return Operator(tuple(vals), n)


@st.composite
def composable(draw, max_dim: int = 4):
    f = draw(operators(max_dim))
    g = draw(operators(max_dim, dom=f.cod))
    h = draw(operators(max_dim, dom=g.cod))
    return h, g, f


def test_rejects_non_monotone():
    with pytest.raises(ValueError):
        Operator((1, 0), 1)
    with pytest.raises(ValueError):
        Operator((0, 3), 2)


def test_counts_match_binomials():
    from math import comb

    for m in range(5):
        for n in range(5):
            assert len(enumerate_operators(m, n)) == comb(m + n + 1, m + 1)
            assert len(injections(m, n)) == comb(n + 1, m + 1)
            assert len(surjections(n, m)) == (comb(n, m) if n >= m else 0)


@given(composable())
def test_composition_associative(t):
    h, g, f = t
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


@given(operators())
def test_identity_units(phi):
    assert compose(identity(phi.cod), phi) == phi
    assert compose(phi, identity(phi.dom)) == phi


@given(operators())
def test_factorisation_recomposes(phi):
    e, i = epi_mono_factorize(phi)
    assert e.is_degeneracy() and i.is_face()
    assert compose(i, e) == phi


def test_factorisation_unique_exhaustively():
    # tally every (epi, mono) pair by its composite; uniqueness means each operator once
    tally: Counter = Counter()
    for m in range(6):
        for n in range(6):
            for k in range(min(m, n) + 1):
                for e in surjections(m, k):
                    for i in injections(k, n):
                        tally[compose(i, e)] += 1
    everything = [phi for m in range(6) for n in range(6) for phi in enumerate_operators(m, n)]
    assert set(tally) == set(everything)
    assert all(c == 1 for c in tally.values())


def test_cosimplicial_identities():
    for n in range(1, 5):
        for i in range(n + 1):
            for j in range(i + 1, n + 2):
                # delta_j delta_i = delta_i delta_{j-1}
                assert compose(face(n + 1, j), face(n, i)) == compose(face(n + 1, i), face(n, j - 1))
        for i in range(n + 1):
            # sigma_i delta_i = sigma_i delta_{i+1} = id
            assert compose(degeneracy(n, i), face(n + 1, i)) == identity(n)
            assert compose(degeneracy(n, i), face(n + 1, i + 1)) == identity(n)


def test_constant():
    c = constant(3, 2, 1)
    assert c.values == (1, 1, 1, 1) and c.image() == (1,)
