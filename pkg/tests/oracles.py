"""Independent brute-force oracles shared by the tests and the acceptance gate.

Nothing here uses the backtracking engine: maps are found by trying every
dimension-respecting assignment of generator images.
"""

from __future__ import annotations

import random
from itertools import product as cartesian

from ssx.core import SimplicialMap, face, gen_simplex, hom_set
from ssx.core.nerves import boundary, build_standard, horn, standard_simplex
from ssx.corpus import circle, projection, skeletal_indiscrete, to_point


def assignment_space(X, Y) -> int:
    size = 1
    for g in X.all_generators():
        size *= len(Y.level(X.gen_dim(g)))
    return size


def all_maps(X, Y) -> list[dict]:
    gens = X.all_generators()
    pools = [Y.level(X.gen_dim(g)) for g in gens]
    out = []
    for choice in cartesian(*pools):
        img = dict(zip(gens, choice))
        if all(
            Y.act(img[g], face(X.gen_dim(g), i)) == (img[f.gen] if f.op.is_identity() else Y.act(img[f.gen], f.op))
            for g in gens
            for i, f in enumerate(X.gen_faces(g))
        ):
            out.append(img)
    return out


def oracle_lifts(j, p, top, bottom) -> list[dict]:
    """Diagonals of the square, by exhaustive assignment."""
    A, B = j.dom, j.cod
    out = []
    for h in all_maps(B, p.dom):
        def on(s, h=h):
            y = h[s.gen]
            return y if s.op.is_identity() else p.dom.act(y, s.op)

        if all(on(j(gen_simplex(a, A.gen_dim(a)))) == top(gen_simplex(a, A.gen_dim(a))) for a in A.all_generators()) and all(
            p(h[b]) == bottom(gen_simplex(b, B.gen_dim(b))) for b in B.all_generators()
        ):
            out.append(h)
    return out


def left_pool() -> list[SimplicialMap]:
    out = [build_standard("boundary", m)[1] for m in range(3)]
    out += [build_standard("horn", m, i)[1] for m in (1, 2) for i in range(m + 1)]
    return out


def right_pool() -> list[SimplicialMap]:
    objs = [standard_simplex(1), horn(2, 1), boundary(2), circle(), skeletal_indiscrete(1), skeletal_indiscrete(2)]
    out = [to_point(X) for X in objs]
    square, pr = projection(standard_simplex(1), standard_simplex(1))
    out.append(pr)
    out += hom_set(boundary(2), standard_simplex(1))[:4]
    out += hom_set(horn(2, 0), standard_simplex(1))
    out += hom_set(standard_simplex(1), standard_simplex(1))
    return out


def random_squares(count: int, seed: int = 0, max_space: int = 20000, max_candidates: int = 200):
    """Deterministic random commuting squares ``(j, p, top, bottom)``."""
    rng = random.Random(seed)
    lefts, rights = left_pool(), right_pool()
    homs: dict = {}

    def maps(X, Y):
        key = (id(X), id(Y))
        if key not in homs:
            homs[key] = hom_set(X, Y)
        return homs[key]

    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 100 * count:
            raise RuntimeError("could not draw enough squares")
        j, p = rng.choice(lefts), rng.choice(rights)
        if assignment_space(j.cod, p.dom) > max_space:
            continue
        if len(maps(j.cod, p.dom)) > max_candidates:
            continue
        bottom = rng.choice(maps(j.cod, p.cod))
        tops = [
            t for t in maps(j.dom, p.dom)
            if all(p(t(gen_simplex(a, j.dom.gen_dim(a)))) == bottom(j(gen_simplex(a, j.dom.gen_dim(a)))) for a in j.dom.all_generators())
        ]
        if not tops:
            continue
        out.append((j, p, rng.choice(tops), bottom))
    return out
