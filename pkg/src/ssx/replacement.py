"""Semisimplicial sets with the free/forgetful adjunction, the replacement
``L U`` with its counit, and the simplex-category replacement ``T`` with ``tau``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable, Iterator, Mapping, Sequence

from .core.nerves import FiniteCategory, nerve_of_category
from .core.operators import Operator, enumerate_operators, face
from .core.search import Budget, as_budget
from .core.simplicial import (
    FgSimplicialSet,
    PresentationError,
    SimplicialMap,
    SimplicialSet,
    TruncatedSimplicialSet,
    gen_simplex,
    truncate,
)

__all__ = [
    "FgSemiSimplicialSet",
    "SemiMap",
    "semi_homs",
    "forget_degeneracies",
    "forget_map",
    "free_simplicial",
    "free_map",
    "lu",
    "counit",
    "adjunction_transpose",
    "adjunction_untranspose",
    "simplex_category",
    "simplex_category_nerve",
    "simplex_category_map",
    "tau",
]


class FgSemiSimplicialSet:
    """Finite semisimplicial set: ``simplices[name] = (dim, (d_0 name, ..., d_k name))``."""

    def __init__(
        self,
        simplices: Mapping[Hashable, tuple[int, Sequence[Hashable]]] | Sequence,
        name: str = "",
        validate: bool = True,
    ) -> None:
        items = list(simplices.items()) if isinstance(simplices, Mapping) else list(simplices)
        self.name = name
        self._dim: dict = {}
        self._faces: dict = {}
        by: dict = {}
        for x, (k, fs) in items:
            if x in self._dim:
                raise PresentationError(f"duplicate simplex {x!r}")
            self._dim[x] = k
            self._faces[x] = tuple(fs)
            by.setdefault(k, []).append(x)
        self.dim = max(by) if by else -1
        self.levels = {k: tuple(by.get(k, ())) for k in range(self.dim + 1)}
        if validate:
            self.validate()

    def level(self, k: int) -> tuple:
        return self.levels.get(k, ())

    def dim_of(self, x: Hashable) -> int:
        return self._dim[x]

    def face(self, x: Hashable, i: int) -> Hashable:
        return self._faces[x][i]

    def faces(self, x: Hashable) -> tuple:
        return self._faces[x]

    def all_simplices(self) -> list:
        return [x for k in range(self.dim + 1) for x in self.levels[k]]

    def sizes(self) -> list[int]:
        return [len(self.levels[k]) for k in range(self.dim + 1)]

    def validate(self) -> None:
        for x in self.all_simplices():
            k = self._dim[x]
            fs = self._faces[x]
            if len(fs) != (k + 1 if k > 0 else 0):
                raise PresentationError(f"{x!r} has {len(fs)} faces, expected {k + 1 if k else 0}")
            for f in fs:
                if f not in self._dim or self._dim[f] != k - 1:
                    raise PresentationError(f"face {f!r} of {x!r} is not a {k - 1}-simplex")
            for j in range(k + 1):
                for i in range(j):
                    if k >= 2 and self.face(fs[j], i) != self.face(fs[i], j - 1):
                        raise PresentationError(f"d_{i} d_{j} != d_{j - 1} d_{i} on {x!r}")

    def __repr__(self) -> str:
        return f"FgSemiSimplicialSet({self.name or '?'}, sizes={self.sizes()})"


@dataclass
class SemiMap:
    dom: FgSemiSimplicialSet
    cod: FgSemiSimplicialSet
    images: dict

    def __call__(self, x: Hashable) -> Hashable:
        return self.images[x]

    def is_valid(self) -> bool:
        for x in self.dom.all_simplices():
            y = self.images[x]
            if self.cod.dim_of(y) != self.dom.dim_of(x):
                return False
            if tuple(self.images[f] for f in self.dom.faces(x)) != self.cod.faces(y):
                return False
        return True

    def is_injective(self) -> bool:
        return len(set(self.images.values())) == len(self.images)


def semi_homs(
    Y: FgSemiSimplicialSet, Z: FgSemiSimplicialSet, budget: Budget | int | None = None
) -> Iterator[SemiMap]:
    """All semisimplicial maps ``Y -> Z`` in deterministic order."""
    bud = as_budget(budget)
    order = Y.all_simplices()
    index: dict = {}
    for z in Z.all_simplices():
        index.setdefault((Z.dim_of(z), Z.faces(z)), []).append(z)
    assign: dict = {}

    def rec(pos: int) -> Iterator[SemiMap]:
        if pos == len(order):
            yield SemiMap(Y, Z, dict(assign))
            return
        x = order[pos]
        key = (Y.dim_of(x), tuple(assign[f] for f in Y.faces(x)))
        for z in index.get(key, ()):
            bud.tick()
            assign[x] = z
            yield from rec(pos + 1)
        assign.pop(x, None)

    yield from rec(0)


def forget_degeneracies(X: SimplicialSet, cap: int) -> FgSemiSimplicialSet:
    """``U X`` up to ``cap``: every simplex, degenerate or not, named ``(n, x)``."""
    items = []
    for n in range(cap + 1):
        for x in X.level(n):
            fs = tuple((n - 1, X.act(x, face(n, i))) for i in range(n + 1)) if n else ()
            items.append(((n, x), (n, fs)))
    return FgSemiSimplicialSet(items, name=f"U{X.name}", validate=False)


def forget_map(f: SimplicialMap, UX: FgSemiSimplicialSet, UY: FgSemiSimplicialSet) -> SemiMap:
    return SemiMap(UX, UY, {(n, x): (n, f(x)) for (n, x) in UX.all_simplices()})


def free_simplicial(Y: FgSemiSimplicialSet, name: str = "") -> FgSimplicialSet:
    """``L Y``: one nondegenerate generator per simplex of ``Y``, same faces."""
    gens = [
        (x, (Y.dim_of(x), tuple(gen_simplex(f, Y.dim_of(x) - 1) for f in Y.faces(x))))
        for x in Y.all_simplices()
    ]
    return FgSimplicialSet(gens, name=name or f"L{Y.name}", validate=False)


def free_map(h: SemiMap, LY: FgSimplicialSet, LZ: FgSimplicialSet) -> SimplicialMap:
    return SimplicialMap(LY, LZ, {x: gen_simplex(h(x), h.dom.dim_of(x)) for x in h.dom.all_simplices()})


def lu(X: SimplicialSet, cap: int) -> TruncatedSimplicialSet:
    """``L U X`` tabulated up to ``cap``; ``(L U X)_n`` is the disjoint union of
    ``X_k`` over degeneracy operators ``[n] -> [k]``."""
    return truncate(free_simplicial(forget_degeneracies(X, cap)), cap, name=f"LU{X.name}")


def counit(X: SimplicialSet, cap: int) -> SimplicialMap:
    """``epsilon: L U X -> X`` on the generator presentation of ``L U_{<=cap} X``."""
    LUX = free_simplicial(forget_degeneracies(X, cap))
    return SimplicialMap(LUX, X, {(n, x): x for (n, x) in LUX.all_generators()})


def adjunction_transpose(h: SemiMap, X: SimplicialSet, LY: FgSimplicialSet | None = None) -> SimplicialMap:
    """``Y -> U X`` to ``L Y -> X``."""
    LY = LY or free_simplicial(h.dom)
    return SimplicialMap(LY, X, {y: h(y)[1] for y in h.dom.all_simplices()})


def adjunction_untranspose(F: SimplicialMap, Y: FgSemiSimplicialSet, UX: FgSemiSimplicialSet) -> SemiMap:
    """``L Y -> X`` to ``Y -> U X``."""
    return SemiMap(Y, UX, {y: (Y.dim_of(y), F.images[y]) for y in Y.all_simplices()})


# the simplex category replacement ------------------------------------------------------------


def simplex_category(X: SimplicialSet, N: int) -> FiniteCategory:
    """``Delta_{<=N} / X``: objects ``(k, x)``, arrows ``(src, dst, values)`` for
    operators ``phi: [k] -> [k']`` with ``x' . phi = x``."""
    objects = [(k, x) for k in range(N + 1) for x in X.level(k)]
    morph: dict = {}
    out: dict = {o: [] for o in objects}
    for k in range(N + 1):
        for k2 in range(N + 1):
            ops = enumerate_operators(k, k2)
            for x2 in X.level(k2):
                for op in ops:
                    x = X.act(x2, op)
                    name = ((k, x), (k2, x2), op.values)
                    morph[name] = ((k, x), (k2, x2))
                    out[(k, x)].append(name)
    comp = {}
    for f, (a, b) in morph.items():
        for g in out[b]:
            c = morph[g][1]
            vals = tuple(g[2][v] for v in f[2])
            comp[(g, f)] = (a, c, vals)
    ids = {(k, x): ((k, x), (k, x), tuple(range(k + 1))) for (k, x) in objects}
    return FiniteCategory(objects, morph, comp, ids)


def simplex_category_nerve(X: SimplicialSet, N: int, d: int) -> SimplicialSet:
    """``T_{<=N} X = N(Delta_{<=N} / X)`` tabulated to dimension ``d``."""
    T = nerve_of_category(simplex_category(X, N), cap=d, name=f"T{X.name}")
    T.source_cap = N
    T.base = X
    return T


def simplex_category_map(f: SimplicialMap, TX: SimplicialSet, TY: SimplicialSet) -> SimplicialMap:
    """``T f``: apply ``f`` to every object and arrow label."""

    def on(chain: tuple) -> tuple:
        objs, arrows = chain
        return (
            tuple((k, f(x)) for k, x in objs),
            tuple(((a[0], f(a[1])), (b[0], f(b[1])), v) for a, b, v in arrows),
        )

    return SimplicialMap(TX, TY, fn=on)


def tau(X: SimplicialSet, N: int, d: int, T: SimplicialSet | None = None) -> SimplicialMap:
    """``tau: T_{<=N} X -> X``: a chain goes to ``x_m . phibar`` where
    ``phibar(i)`` is the image of the last vertex ``k_i`` in ``[k_m]``."""
    T = T if T is not None else simplex_category_nerve(X, N, d)

    def fn(chain: tuple) -> Any:
        objs, arrows = chain
        km, xm = objs[-1]
        bar = []
        for i, (ki, _x) in enumerate(objs):
            v = ki
            for a in arrows[i:]:
                v = a[2][v]
            bar.append(v)
        return X.act(xm, Operator(tuple(bar), km))

    return SimplicialMap(T, X, fn=fn)
