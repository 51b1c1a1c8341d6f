from __future__ import annotations

from collections import deque

import pytest
from hypothesis import given, strategies as st

from ssx.core import NoWitness, SimplicialMap, hom_set, identity_map
from ssx.core.constructions import pullback
from ssx.core.nerves import boundary, build_standard, horn, standard_simplex
from ssx.corpus import circle, discrete, eqext_corpus, projection, skeletal_indiscrete, to_point, vertex
from ssx.homotopy import (
    PremiseError,
    TransferError,
    cylinder,
    dependent_product,
    equivalence_extend,
    extend_trivial_fibration,
    find_homotopy,
    find_homotopy_equivalence,
    mapping_path_factorize,
    pi_adjunction,
    retract_to_she,
    she_to_retract,
    she_witness_search,
    shrinkable_witness,
    transfer_she_along_pullback,
)
from ssx.lifting import has_rlp
from ssx.subdivision import mu_simplex

GRAPHS = [horn(2, 0), horn(2, 2), boundary(1), circle(), discrete(3), skeletal_indiscrete(1), horn(3, 1)]


def zigzag_distance(X, u, v) -> int | None:
    """Edges as an undirected graph; the shortest path length between two vertices."""
    adj: dict = {w: set() for w in X.generators.get(0, ())}
    for e in X.generators.get(1, ()):
        a, b = X.gen_faces(e)[1].gen, X.gen_faces(e)[0].gen
        adj[a].add(b)
        adj[b].add(a)
    seen = {u: 0}
    todo = deque([u])
    while todo:
        w = todo.popleft()
        for z in adj[w]:
            if z not in seen:
                seen[z] = seen[w] + 1
                todo.append(z)
    return seen.get(v)


@given(st.sampled_from(GRAPHS), st.data())
def test_vertex_homotopies_follow_the_edge_graph(X, data):
    u = data.draw(st.sampled_from(X.generators[0]))
    v = data.draw(st.sampled_from(X.generators[0]))
    bound = data.draw(st.integers(1, 3))
    w = find_homotopy(vertex(X, u), vertex(X, v), zigzag=bound)
    dist = zigzag_distance(X, u, v)
    expected = dist is not None and max(dist, 1) <= bound
    assert bool(w) == expected
    if w:
        assert w.check()


def test_endpoints_of_boundary_are_not_homotopic():
    w = find_homotopy(vertex(boundary(1), (0,)), vertex(boundary(1), (1,)), zigzag=4)
    assert isinstance(w, NoWitness) and "length <= 4" in w.reason


def test_zigzag_needs_a_backward_step():
    X = horn(2, 0)
    assert not find_homotopy(vertex(X, (1,)), vertex(X, (2,)), zigzag=1)
    w = find_homotopy(vertex(X, (1,)), vertex(X, (2,)), zigzag=2)
    assert w and w.length == 2 and {d for _, d in w.steps} == {0, 1}


def test_fiberwise_homotopy_respects_the_base():
    P, pr = projection(standard_simplex(1), standard_simplex(1), 0)
    maps = hom_set(standard_simplex(0), P.obj)
    f, g = maps[0], maps[1]
    w = find_homotopy(f, g, zigzag=1, fiberwise_over=pr)
    assert bool(w) == (pr(f.images[(0,)]) == pr(g.images[(0,)]))


def test_cylinder_ends():
    C = cylinder(standard_simplex(1))
    assert C.obj.gen_count() == [4, 5, 2]
    for k in (0, 1):
        assert C.ends[k].then(C.proj).same_as(identity_map(standard_simplex(1)))


def test_homotopy_equivalences():
    assert find_homotopy_equivalence(to_point(standard_simplex(1)))
    assert find_homotopy_equivalence(to_point(horn(2, 1)), zigzag=2)
    assert not find_homotopy_equivalence(to_point(boundary(1)), zigzag=2)


@pytest.mark.parametrize("m", range(3))
def test_last_vertex_maps_are_shrinkable(m):
    w = shrinkable_witness(mu_simplex(m))
    assert w and w.check()


def test_trivial_fibration_shrinkable():
    P, pr = projection(boundary(1), standard_simplex(1), 0)
    w = shrinkable_witness(pr)
    assert w and w.check()
    assert not shrinkable_witness(to_point(boundary(1)))


@pytest.mark.parametrize("m,i", [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)])
def test_horn_inclusions_are_strong_equivalences(m, i):
    _, h = build_standard("horn", m, i)
    for k in ([0] if i < m else []) + ([1] if i > 0 else []):
        w = she_witness_search(h, k)
        assert w and w.check() and w.retract.check(h)
        R = she_to_retract(w)
        back = retract_to_she(h, R)
        for a, b in ((back.g, w.g), (back.u, w.u), (back.v, w.v)):
            assert a.images == b.images


def test_wrong_orientation_has_no_witness():
    _, h = build_standard("horn", 2, 2)
    assert not she_witness_search(h, 0)
    _, b = build_standard("boundary", 1)
    assert not she_witness_search(b, 0) and not she_witness_search(b, 1)


def test_transfer_along_a_fibration():
    _, h = build_standard("horn", 1, 0)
    w = she_witness_search(h, 0)
    P, pr = projection(standard_simplex(1), skeletal_indiscrete(2), 0)
    w2, L = transfer_she_along_pullback(w, pr, fibration_maxdim=2)
    assert w2.check()
    # the fibre over vertex 0
    assert L.obj.gen_count() == skeletal_indiscrete(2).gen_count()


def test_transfer_refuses_a_non_fibration():
    _, h = build_standard("horn", 1, 0)
    w = she_witness_search(h, 0)
    _, p = build_standard("horn", 2, 0)
    # p: Lambda^{2,0} -> Delta^2 does not lie over Delta^1, so compose with a collapse
    q = hom_set(standard_simplex(2), standard_simplex(1))[3]
    with pytest.raises(TransferError):
        transfer_she_along_pullback(w, p.then(q), fibration_maxdim=2)


def test_mapping_path_factorisation():
    f = vertex(standard_simplex(1), (0,))
    M = mapping_path_factorize(f, cap=2)
    assert [len(M.middle.level(n)) for n in range(3)] == [2, 3, 4]
    for n in range(3):
        for x in f.dom.level(n):
            assert M.second(M.first(x)) == f(x)
            assert M.retraction(M.first(x)) == x
    assert has_rlp(M.second, "horns", 1).holds


def _pi_count(n: int) -> int:
    # y: [n] -> [1] with k vertices over 0; the fibre is hom(Delta^{k-1} + Delta^{n-k}, Delta^1)
    level = lambda j: 1 if j < 0 else j + 2  # noqa: E731
    return sum(level(k - 1) * level(n - k) for k in range(n + 2))


def test_dependent_product_sizes():
    _, i = build_standard("boundary", 1)
    P, pr = projection(standard_simplex(1), boundary(1), 1)
    Pi = dependent_product(i, pr, 3)
    assert [len(Pi.level(n)) for n in range(4)] == [_pi_count(n) for n in range(4)]


def test_dependent_product_of_empty_and_identity():
    from ssx.core.nerves import empty

    _, i = build_standard("boundary", 1)
    E = empty()
    a = SimplicialMap(E, boundary(1), {})
    assert [len(dependent_product(i, a, 2).level(n)) for n in range(3)] == [0, 0, 0]
    ident = identity_map(boundary(1))
    assert [len(dependent_product(i, ident, 2).level(n)) for n in range(3)] == [2, 3, 4]


def test_pi_adjunction_round_trips():
    _, i = build_standard("boundary", 1)
    P, pr = projection(discrete(2), boundary(1), 1)
    Pi = dependent_product(i, pr, 2)
    for b in hom_set(standard_simplex(1), standard_simplex(1)):
        adj = pi_adjunction(Pi, b)
        assert adj["left"] == adj["right"] and adj["round_trip"]


@pytest.mark.parametrize("case", eqext_corpus(fibres=(1, 2)), ids=lambda c: c["name"])
def test_equivalence_extension_restricts_to_input(case):
    ext = equivalence_extend(case["i"], case["e"], case["x1"], case["y1"], cap=2)
    assert ext.fits
    # independent count: simplices of i*Y0 and of X0 over each simplex of A agree
    i = case["i"]
    R = pullback(i, ext.over_b, cap=2)
    x0 = case["e"].then(case["x1"])
    for n in range(3):
        over_r: dict = {}
        for t in R.obj.level(n):
            over_r[t[0]] = over_r.get(t[0], 0) + 1
        over_x: dict = {}
        for x in case["e"].dom.level(n):
            over_x[x0(x)] = over_x.get(x0(x), 0) + 1
        assert over_r == over_x


def test_equivalence_extension_premise_failure():
    case = eqext_corpus(fibres=(2,), projections=False)[0]
    # X_1 over A with the wrong fibre size is not a restriction of Y_1
    P, pr = projection(case["i"].dom, discrete(3), 0)
    e = identity_map(P.obj)
    with pytest.raises(PremiseError):
        equivalence_extend(case["i"], e, pr, case["y1"], cap=2)


@pytest.mark.parametrize("kind,args", [("boundary", (1,)), ("horn", (2, 1))])
def test_trivial_fibration_extension(kind, args):
    _, i = build_standard(kind, *args)
    P, pr = projection(i.dom, skeletal_indiscrete(2), 0)
    assert has_rlp(pr, "boundaries", 2).holds
    over_b, ext = extend_trivial_fibration(i, pr, cap=2, check_maxdim=2)
    assert ext.fits and ext.fibrancy.holds
