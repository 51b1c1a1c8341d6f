"""Small named objects and maps used by the tests, demos and the ``report`` command."""

from __future__ import annotations

from typing import Hashable, Iterator

from .core.constructions import Limit, product
from .core.nerves import FiniteCategory, boundary, horn, nerve_of_category, standard_simplex
from .core.simplicial import (
    FgSimplicialSet,
    Simplex,
    SimplicialMap,
    gen_simplex,
    skeleton,
    subobject,
)
from .core.operators import Operator

__all__ = [
    "discrete",
    "circle",
    "indiscrete_category",
    "indiscrete_nerve",
    "skeletal_indiscrete",
    "to_point",
    "vertex",
    "subcomplexes",
    "projection",
    "standard_objects",
    "inclusion_corpus",
    "permutation_map",
    "eqext_corpus",
]


def discrete(k: int, name: str = "") -> FgSimplicialSet:
    return FgSimplicialSet([(j, (0, ())) for j in range(k)], name=name or f"disc{k}")


def circle() -> FgSimplicialSet:
    """One vertex and one loop."""
    return FgSimplicialSet([("v", (0, ())), ("e", (1, (gen_simplex("v", 0), gen_simplex("v", 0))))], name="S1")


def indiscrete_category(objects) -> FiniteCategory:
    """Exactly one arrow between any two objects."""
    objs = list(objects)
    morph = {(a, b): (a, b) for a in objs for b in objs}
    comp = {((b, c), (a, b)): (a, c) for a in objs for b in objs for c in objs}
    return FiniteCategory(objs, morph, comp, {a: (a, a) for a in objs})


def indiscrete_nerve(cap: int, objects=("a", "b")):
    """The nerve of the indiscrete category, tabulated to ``cap`` (it has cells in every dimension)."""
    return nerve_of_category(indiscrete_category(objects), cap=cap, name="NJ")


def skeletal_indiscrete(k: int, objects=("a", "b")) -> FgSimplicialSet:
    return skeleton(indiscrete_nerve(k, objects), k, name=f"sk{k}NJ")


def to_point(X: FgSimplicialSet) -> SimplicialMap:
    pt = standard_simplex(0)
    return SimplicialMap(
        X,
        pt,
        {g: Simplex(Operator((0,) * (X.gen_dim(g) + 1), 0), (0,)) for g in X.all_generators()},
    )


def vertex(X: FgSimplicialSet, v: Hashable) -> SimplicialMap:
    return SimplicialMap(standard_simplex(0), X, {(0,): gen_simplex(v, 0)})


def subcomplexes(X: FgSimplicialSet) -> Iterator[tuple[FgSimplicialSet, SimplicialMap]]:
    """Every face-closed set of generators, as an inclusion; exponential in ``X``."""
    gens = X.all_generators()
    below = {g: {f.gen for f in X.gen_faces(g)} for g in gens}

    def rec(pos: int, keep: frozenset) -> Iterator[frozenset]:
        if pos == len(gens):
            yield keep
            return
        g = gens[pos]
        yield from rec(pos + 1, keep)
        if below[g] <= keep:
            yield from rec(pos + 1, keep | {g})

    for keep in rec(0, frozenset()):
        yield subobject(X, keep, name=f"sub{len(keep)}")


def projection(X: FgSimplicialSet, Y: FgSimplicialSet, j: int = 0) -> tuple[Limit, SimplicialMap]:
    P = product([X, Y], name=f"{X.name}x{Y.name}")
    return P, P.projections[j]


def standard_objects(maxdim: int = 2) -> list[FgSimplicialSet]:
    out = [standard_simplex(m) for m in range(maxdim + 1)]
    out += [boundary(m) for m in range(1, maxdim + 1)]
    out += [horn(m, i) for m in range(1, maxdim + 1) for i in range(m + 1)]
    out += [circle(), discrete(2)]
    return out


def inclusion_corpus(prism_stride: int = 97) -> list[SimplicialMap]:
    """Subcomplex inclusions into objects of dimension <= 3.

    All of ``Delta^3``, ``Delta^1 x Delta^1`` and ``sk_2 NJ``, plus every
    ``prism_stride``-th subcomplex of ``Delta^1 x Delta^2``.
    """
    out = []
    square, _ = projection(standard_simplex(1), standard_simplex(1))
    for X in (standard_simplex(3), square.obj, skeletal_indiscrete(2), circle()):
        out += [inc for _, inc in subcomplexes(X)]
    prism, _ = projection(standard_simplex(1), standard_simplex(2))
    for j, (_, inc) in enumerate(subcomplexes(prism.obj)):
        if j % prism_stride == 0:
            out.append(inc)
    return out


def permutation_map(F: FgSimplicialSet, perm: tuple) -> SimplicialMap:
    return SimplicialMap(F, F, {j: gen_simplex(perm[j], 0) for j in F.all_generators()})


def eqext_corpus(fibres=(1, 2, 3), projections: bool = True) -> list[dict]:
    """Instances ``(i, e, x1, y1)`` over ``i`` in {boundary of Delta^1, Lambda^{2,1}}.

    ``Y_1 = B x F`` for discrete ``F``, ``X_1 = A x F`` and ``e`` is either
    ``id_A x sigma`` for a permutation ``sigma`` or the projection
    ``X_1 x Delta^1 -> X_1``.
    """
    from itertools import permutations

    from .core.constructions import product_map
    from .core.nerves import build_standard
    from .core.simplicial import identity_map

    out = []
    for kind, args in (("boundary", (1,)), ("horn", (2, 1))):
        _, i = build_standard(kind, *args)
        A, B = i.dom, i.cod
        for k in fibres:
            F = discrete(k)
            YL = product([B, F], name="Y1")
            XL = product([A, F], name="X1")
            x1, y1 = XL.projections[0], YL.projections[0]
            for perm in permutations(range(k)):
                e = product_map(identity_map(A), permutation_map(F, perm), XL, XL)
                out.append({"name": f"{kind}{args}-F{k}-{perm}", "i": i, "e": e, "x1": x1, "y1": y1})
            if projections:
                X0 = product([XL.obj, standard_simplex(1)], name="X0")
                out.append({"name": f"{kind}{args}-F{k}-proj", "i": i, "e": X0.projections[0], "x1": x1, "y1": y1})
    return out
