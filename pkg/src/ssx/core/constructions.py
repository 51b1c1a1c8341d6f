"""Finite limits and colimits, computed levelwise, and internal homs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable, Sequence

from .operators import Operator, compose, degeneracy, face, identity
from .search import extensions
from .simplicial import (
    CapExceeded,
    FgSimplicialSet,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    TruncatedSimplicialSet,
    gen_simplex,
    regenerate,
)

__all__ = [
    "UnionFind",
    "Colimit",
    "Limit",
    "finite_colimit",
    "finite_limit",
    "coproduct",
    "pushout",
    "product",
    "pullback",
    "RepresentedHomSet",
    "exponential",
    "product_map",
]

Arrow = tuple[int, int, SimplicialMap]


class UnionFind:
    """Union-find keeping the earliest-inserted element as representative."""

    def __init__(self) -> None:
        self.parent: dict = {}
        self.rank: dict = {}

    def add(self, x: Hashable) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = len(self.rank)

    def find(self, x: Hashable) -> Hashable:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: Hashable, b: Hashable) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[rb] < self.rank[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra


def _top(X: SimplicialSet) -> int:
    return X.dim if isinstance(X, FgSimplicialSet) else X.cap


@dataclass
class Colimit:
    obj: SimplicialSet
    legs: list[SimplicialMap]
    tabulation: TruncatedSimplicialSet
    objects: list[SimplicialSet]
    arrows: list[Arrow]

    def element(self, j: int, x: Any, n: int) -> Any:
        """Image in the colimit of ``x`` from object ``j`` at level ``n``."""
        rep = self.tabulation._find(n, (j, x))
        if isinstance(self.obj, FgSimplicialSet):
            return self.tabulation.normal_form(rep, n)
        return rep

    def induced(self, maps: Sequence[SimplicialMap], check: bool = True) -> SimplicialMap:
        """The map out of the colimit determined by a compatible cocone."""
        if check:
            for s, t, f in self.arrows:
                if not f.then(maps[t]).same_as(maps[s], upto=_top(self.objects[s])):
                    raise ValueError(f"cocone not compatible along arrow {s}->{t}")
        cod = maps[0].cod if maps else None
        if isinstance(self.obj, FgSimplicialSet):
            return SimplicialMap(
                self.obj, cod, {(j, x): maps[j](x) for (j, x) in self.obj.all_generators()}
            )
        return SimplicialMap(self.obj, cod, fn=lambda e: maps[e[0]](e[1]))


def finite_colimit(
    objects: Sequence[SimplicialSet], arrows: Sequence[Arrow] = (), name: str = ""
) -> Colimit:
    """Colimit of a finite diagram.

    Each level is the disjoint union of the objects' levels modulo the
    relation generated by the arrows, maintained with union-find.  When every
    object is finitely generated the result is re-presented by generators
    (nondegenerate classes), named by their representative ``(j, x)``.
    """
    objects = list(objects)
    arrows = list(arrows)
    all_fg = all(isinstance(X, FgSimplicialSet) for X in objects)
    if all_fg:
        D = max((X.dim for X in objects), default=-1)
    else:
        D = min(X.cap for X in objects if not isinstance(X, FgSimplicialSet))
    D = max(D, 0)
    ufs: dict[int, UnionFind] = {}

    def uf_at(n: int) -> UnionFind:
        uf = ufs.get(n)
        if uf is None:
            uf = UnionFind()
            for j, X in enumerate(objects):
                for x in X.level(n):
                    uf.add((j, x))
            for s, t, f in arrows:
                for x in objects[s].level(n):
                    uf.union((s, x), (t, f(x)))
            ufs[n] = uf
        return uf

    def level(n: int) -> list:
        uf = uf_at(n)
        return [e for e in uf.parent if uf.find(e) == e]

    def action(e: tuple, op: Operator) -> tuple:
        j, x = e
        return uf_at(op.dom).find((j, objects[j].act(x, op)))

    T = TruncatedSimplicialSet(D, level, action, name=name, dim_bound=D if all_fg else None)
    T._find = lambda n, e: uf_at(n).find(e)
    if all_fg:
        obj = regenerate(T, D)
        obj.name = name
        legs = [
            SimplicialMap(
                X,
                obj,
                {
                    g: T.normal_form(T._find(X.gen_dim(g), (j, gen_simplex(g, X.gen_dim(g)))), X.gen_dim(g))
                    for g in X.all_generators()
                },
            )
            for j, X in enumerate(objects)
        ]
    else:
        obj = T
        legs = [
            SimplicialMap(X, T, fn=lambda x, j=j: uf_at(_level_of(objects[j], x)).find((j, x)))
            for j, X in enumerate(objects)
        ]
    return Colimit(obj, legs, T, objects, arrows)


def _level_of(X: SimplicialSet, x: Any) -> int:
    if isinstance(x, Simplex):
        return x.dim
    lv = getattr(X, "level_of", None)
    if lv is not None:
        return lv(x)
    for n in range((X.cap or 0) + 1):
        if X.contains(x, n):
            return n
    raise ValueError(f"{x!r} is not a simplex of {X!r}")


def coproduct(objects: Sequence[SimplicialSet], name: str = "") -> Colimit:
    return finite_colimit(objects, [], name=name)


def pushout(f: SimplicialMap, g: SimplicialMap, name: str = "") -> Colimit:
    """Pushout of ``B <- A -> C``; legs are ``[A, B, C]``."""
    if f.dom is not g.dom:
        raise ValueError("pushout legs need a common domain")
    return finite_colimit([f.dom, f.cod, g.cod], [(0, 1, f), (0, 2, g)], name=name)


@dataclass
class Limit:
    obj: SimplicialSet
    projections: list[SimplicialMap]
    tabulation: TruncatedSimplicialSet
    objects: list[SimplicialSet]
    arrows: list[Arrow]

    def element(self, tup: tuple, n: int) -> Any:
        """The limit simplex with the given components."""
        if isinstance(self.obj, FgSimplicialSet):
            T = self.tabulation
            if n <= T.cap:
                return T.normal_form(tuple(tup), n)
            return _normal_form_above(self.objects, tuple(tup), n, T)
        return tuple(tup)

    def pair(self, maps: Sequence[SimplicialMap], dom: SimplicialSet | None = None) -> SimplicialMap:
        """The map into the limit with the given components."""
        W = dom if dom is not None else maps[0].dom
        if isinstance(W, FgSimplicialSet):
            imgs = {}
            for g in W.all_generators():
                k = W.gen_dim(g)
                s = gen_simplex(g, k)
                imgs[g] = self.element(tuple(m(s) for m in maps), k)
            return SimplicialMap(W, self.obj, imgs)
        return SimplicialMap(
            W, self.obj, fn=lambda x: self.element(tuple(m(x) for m in maps), _level_of(W, x))
        )


def _normal_form_above(objects: Sequence[SimplicialSet], tup: tuple, n: int, T: TruncatedSimplicialSet) -> Simplex:
    """Normal form of a tuple above the tabulated range, peeling degeneracies componentwise."""

    def act(t: tuple, op: Operator) -> tuple:
        return tuple(X.act(x, op) for X, x in zip(objects, t))

    eta = identity(n)
    while n > T.cap:
        for i in range(n):
            y = act(tup, face(n, i))
            if act(y, degeneracy(n - 1, i)) == tup:
                eta = compose(degeneracy(n - 1, i), eta)
                tup, n = y, n - 1
                break
        else:
            raise ValueError("nondegenerate simplex above the dimension bound")
    base = T.normal_form(tup, n)
    return Simplex(compose(base.op, eta), base.gen)


def finite_limit(
    objects: Sequence[SimplicialSet],
    arrows: Sequence[Arrow] = (),
    cap: int | None = None,
    name: str = "",
) -> Limit:
    """Limit of a finite diagram, computed levelwise as compatible tuples.

    With finitely generated inputs the result is re-presented by generators;
    nondegenerate simplices of a limit embed into a product, so their
    dimension is bounded by the sum of dimensions of the objects not already
    determined through arrows.
    """
    objects = list(objects)
    arrows = list(arrows)
    all_fg = all(isinstance(X, FgSimplicialSet) for X in objects)
    incoming: dict[int, list] = {j: [] for j in range(len(objects))}
    for s, t, f in arrows:
        incoming[t].append((s, f))
    bound = None
    if all_fg:
        determined = _determined(len(objects), arrows)
        free = [j for j in range(len(objects)) if j not in determined]
        bound = sum(max(objects[j].dim, 0) for j in free) if objects else 0
        if any(X.dim < 0 for X in objects):
            bound = 0
    top = cap if cap is not None else bound
    if top is None:
        raise CapExceeded("a cap is required for limits of truncated objects")
    for X in objects:
        if X.cap is not None and X.cap < top:
            raise CapExceeded(f"input tabulated to {X.cap} < {top}")
    # evaluate determined objects after their sources
    order = _eval_order(len(objects), arrows)

    def level(n: int) -> list:
        out = []
        partial: dict[int, Any] = {}

        def rec(pos: int) -> None:
            if pos == len(order):
                out.append(tuple(partial[j] for j in range(len(objects))))
                return
            j = order[pos]
            forced = None
            for s, f in incoming[j]:
                if s in partial:
                    forced = f(partial[s])
                    break
            cands = [forced] if forced is not None else objects[j].level(n)
            for x in cands:
                ok = True
                partial[j] = x
                for s, t, f in arrows:
                    if s in partial and t in partial and (s == j or t == j):
                        if f(partial[s]) != partial[t]:
                            ok = False
                            break
                if ok:
                    rec(pos + 1)
                del partial[j]

        rec(0)
        out.sort(key=lambda tup: tuple(objects[j].index(n)[tup[j]] for j in range(len(objects))))
        return out

    def action(tup: tuple, op: Operator) -> tuple:
        return tuple(objects[j].act(x, op) for j, x in enumerate(tup))

    T = TruncatedSimplicialSet(top, level, action, name=name, dim_bound=bound)
    T.level_of = lambda tup: _level_of(objects[0], tup[0]) if objects else 0
    if all_fg and (cap is None or cap >= bound):
        obj = regenerate(T, bound)
        obj.name = name
        projections = [
            SimplicialMap(obj, X, {tup: tup[j] for tup in obj.all_generators()})
            for j, X in enumerate(objects)
        ]
    else:
        obj = T
        projections = [SimplicialMap(T, X, fn=lambda tup, j=j: tup[j]) for j, X in enumerate(objects)]
    return Limit(obj, projections, T, objects, arrows)


def _determined(N: int, arrows: Sequence[Arrow]) -> set:
    """Objects reachable from a source-free object, or everything if some are not."""
    has_in = {t for _s, t, _f in arrows}
    free = [j for j in range(N) if j not in has_in]
    seen = set(free)
    todo = list(free)
    while todo:
        x = todo.pop()
        for s, t, _f in arrows:
            if s == x and t not in seen:
                seen.add(t)
                todo.append(t)
    if len(seen) < N:
        return set()
    return set(range(N)) - set(free)


def _eval_order(N: int, arrows: Sequence[Arrow]) -> list[int]:
    has_in = {t for _s, t, _f in arrows}
    order = [j for j in range(N) if j not in has_in]
    placed = set(order)
    while len(order) < N:
        progress = False
        for s, t, _f in arrows:
            if s in placed and t not in placed:
                order.append(t)
                placed.add(t)
                progress = True
        if not progress:
            for j in range(N):
                if j not in placed:
                    order.append(j)
                    placed.add(j)
                    break
    return order


def product(objects: Sequence[SimplicialSet], cap: int | None = None, name: str = "") -> Limit:
    return finite_limit(objects, [], cap=cap, name=name)


def pullback(f: SimplicialMap, g: SimplicialMap, cap: int | None = None, name: str = "") -> Limit:
    """Pullback of ``X -f-> Z <-g- A``; components ordered ``(X, A, Z)``."""
    if f.cod is not g.cod:
        raise ValueError("pullback legs need a common codomain")
    return finite_limit([f.dom, g.dom, f.cod], [(0, 2, f), (1, 2, g)], cap=cap, name=name)


class RepresentedHomSet(TruncatedSimplicialSet):
    """Levels ``n -> hom(R_n, K)`` with action by precomposition.

    ``R(n)`` is a finitely generated object and ``R_map(op)`` the induced map
    ``R_m -> R_n`` for ``op: [m] -> [n]``.  Elements are tuples of images
    listed in the generator order of ``R_n``.
    """

    def __init__(
        self,
        cap: int,
        R: Callable[[int], FgSimplicialSet],
        R_map: Callable[[Operator], SimplicialMap],
        K: SimplicialSet,
        name: str = "",
        level_filter: Callable[[int, dict], bool] | None = None,
        dim_bound: int | None = None,
    ) -> None:
        self.K = K
        self._R = R
        self._R_map = R_map
        self._R_cache: dict[int, FgSimplicialSet] = {}
        self._Rmap_cache: dict = {}
        self._filter = level_filter
        super().__init__(cap, self._enumerate, self._precompose, name=name, dim_bound=dim_bound)
        self._level_of: dict = {}

    def rep(self, n: int) -> FgSimplicialSet:
        if n not in self._R_cache:
            self._R_cache[n] = self._R(n)
        return self._R_cache[n]

    def rep_map(self, op: Operator) -> SimplicialMap:
        key = (op.values, op.cod)
        if key not in self._Rmap_cache:
            self._Rmap_cache[key] = self._R_map(op)
        return self._Rmap_cache[key]

    def gens(self, n: int) -> list:
        return self.rep(n).all_generators()

    def _enumerate(self, n: int) -> list:
        R = self.rep(n)
        gens = R.all_generators()
        out = []
        for a in extensions(R, self.K):
            if self._filter is not None and not self._filter(n, a):
                continue
            out.append(tuple(a[g] for g in gens))
        return out

    def as_dict(self, e: tuple, n: int) -> dict:
        return dict(zip(self.gens(n), e))

    def from_dict(self, a: dict, n: int) -> tuple:
        return tuple(a[g] for g in self.gens(n))

    def as_map(self, e: tuple, n: int) -> SimplicialMap:
        return SimplicialMap(self.rep(n), self.K, self.as_dict(e, n))

    def evaluate(self, e: tuple, n: int, s: Simplex) -> Any:
        """Value of the element ``e`` of level ``n`` at a simplex of ``R_n``."""
        idx = self._gen_pos(n)
        y = e[idx[s.gen]]
        return y if s.op.is_identity() else self.K.act(y, s.op)

    def _gen_pos(self, n: int) -> dict:
        cache = self.__dict__.setdefault("_gp", {})
        if n not in cache:
            cache[n] = {g: j for j, g in enumerate(self.gens(n))}
        return cache[n]

    def _precompose(self, e: tuple, op: Operator) -> tuple:
        m, n = op.dom, op.cod
        Rm = self.rep(m)
        rho = self.rep_map(op)
        return tuple(self.evaluate(e, n, rho.images[g]) for g in Rm.all_generators())

    def level_of(self, e: tuple) -> int:
        for n in range(self.cap + 1):
            if len(e) == len(self.gens(n)) and self.contains(e, n):
                return n
        raise ValueError("not an element")


def exponential(
    A: FgSimplicialSet,
    K: SimplicialSet,
    cap: int,
    name: str = "",
    level_filter: Callable[[int, dict], bool] | None = None,
) -> RepresentedHomSet:
    """``K^A`` up to ``cap``: level ``n`` is ``hom(Delta^n x A, K)``.

    ``level_filter`` cuts out a subobject; it must be stable under precomposition.
    """
    from .nerves import standard_simplex, operator_simplex

    prods: dict[int, Limit] = {}

    def cyl(n: int) -> Limit:
        if n not in prods:
            prods[n] = product([standard_simplex(n), A])
        return prods[n]

    def R(n: int) -> FgSimplicialSet:
        return cyl(n).obj

    def R_map(op: Operator) -> SimplicialMap:
        src, dst = cyl(op.dom), cyl(op.cod)
        opmap = SimplicialMap(
            standard_simplex(op.dom),
            standard_simplex(op.cod),
            fn=None,
            images={
                g: operator_simplex(Operator(tuple(op.values[v] for v in g), op.cod))
                for g in standard_simplex(op.dom).all_generators()
            },
        )
        return dst.pair([src.projections[0].then(opmap), src.projections[1]], dom=src.obj)

    if K.cap is not None and cap + max(A.dim, 0) > K.cap:
        raise CapExceeded("target not tabulated high enough for this cap")
    E = RepresentedHomSet(
        cap, R, R_map, K, name=name or f"{K.name}^{A.name}", level_filter=level_filter
    )
    E.cylinder = cyl
    return E


def product_map(f: SimplicialMap, g: SimplicialMap, src: Limit | None = None, dst: Limit | None = None) -> SimplicialMap:
    """``f x g`` between binary products."""
    src = src or product([f.dom, g.dom])
    dst = dst or product([f.cod, g.cod])
    return dst.pair([src.projections[0].then(f), src.projections[1].then(g)], dom=src.obj)
