"""Latching objects, cofibrancy and cofibration checks, cell filtrations of
boundaries and products, and pushout products."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Sequence

from .core.constructions import (
    Limit,
    UnionFind,
    finite_colimit,
    product,
    product_map,
    pushout,
)
from .core.nerves import boundary, standard_simplex
from .core.operators import Operator, degeneracy, surjections
from .core.simplicial import (
    FgSimplicialSet,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    canonical_name,
    gen_simplex,
    subobject,
    top_dim,
)

__all__ = [
    "LatchingObject",
    "latching_object",
    "Verdict",
    "is_cofibrant",
    "is_cofibration",
    "CONDITIONS",
    "Stage",
    "skeleton_filtration",
    "shuffle_filtration",
    "PushoutProduct",
    "pushout_product",
]


@dataclass
class LatchingObject:
    base: SimplicialSet
    dim: int
    elements: tuple
    witnesses: dict
    complement: tuple

    def __contains__(self, x: Any) -> bool:
        return x in self.witnesses


def latching_object(X: SimplicialSet, m: int) -> LatchingObject:
    """Degenerate ``m``-simplices, each with a (degeneracy, lower simplex) witness."""
    elements, witnesses, complement = [], {}, []
    for x in X.level(m):
        nf = SimplicialSet.normal_form(X, x, m)
        if nf.op.is_identity():
            complement.append(x)
        else:
            elements.append(x)
            witnesses[x] = (nf.op, nf.gen)
    return LatchingObject(X, m, tuple(elements), witnesses, tuple(complement))


@dataclass
class Verdict:
    """Outcome of a decidability check.

    ``qualifier`` is ``"total"`` for finitely generated inputs and
    ``"up to cap d"`` when a truncated input limits the checked range.
    """

    holds: bool
    qualifier: str
    certificate: dict = field(default_factory=dict)
    complements: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "qualifier": self.qualifier,
            "certificate": _jsonable(self.certificate),
            "complement_sizes": {canonical_name(k): len(v) for k, v in self.complements.items()},
        }


def _jsonable(v: Any) -> Any:
    if isinstance(v, dict):
        return {canonical_name(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return canonical_name(v)


def _range(*objs: SimplicialSet) -> tuple[int, str]:
    caps = [X.cap for X in objs if X.cap is not None]
    if caps:
        d = min(caps)
        return d, f"up to cap {d}"
    return max(max(top_dim(X) for X in objs), 0) + 1, "total"


def is_cofibrant(X: SimplicialSet) -> Verdict:
    """Every ``sigma_i: X_n -> X_{n+1}`` is injective; complements materialised."""
    top, qual = _range(X)
    complements = {}
    for n in range(top):
        lower = X.level(n)
        upper = X.level(n + 1)
        for i in range(n + 1):
            s = degeneracy(n, i)
            seen: dict = {}
            for x in lower:
                y = X.act(x, s)
                if y in seen:
                    return Verdict(
                        False,
                        qual,
                        {"level": n, "degeneracy": i, "collision": (seen[y], x), "image": y},
                    )
                seen[y] = x
            complements[(n, i)] = tuple(y for y in upper if y not in seen)
    return Verdict(True, qual, {}, complements)


def _pushout_comparison(
    A: Sequence, B: Sequence, C: Sequence, ab, ac, bd, cd, D: Sequence
) -> tuple[bool, Any, tuple]:
    """Is ``B +_A C -> D`` injective?  Returns ``(ok, collision, complement)``."""
    uf = UnionFind()
    for b in B:
        uf.add(("B", b))
    for c in C:
        uf.add(("C", c))
    for a in A:
        uf.union(("B", ab(a)), ("C", ac(a)))
    hit: dict = {}
    for tag, fn, src in (("B", bd, B), ("C", cd, C)):
        for e in src:
            d = fn(e)
            r = uf.find((tag, e))
            if d in hit and hit[d] != r:
                return False, {"image": d, "classes": (hit[d], r)}, ()
            hit[d] = r
    return True, None, tuple(d for d in D if d not in hit)


CONDITIONS = {
    "i": "reedy",
    "reedy": "reedy",
    "ii": "generating",
    "generating": "generating",
    "iii": "all-degeneracies",
    "all-degeneracies": "all-degeneracies",
}


def _injectivity_failure(f: SimplicialMap, top: int) -> dict | None:
    for n in range(top + 1):
        seen: dict = {}
        for x in f.dom.level(n):
            y = f(x)
            if y in seen:
                return {"kind": "not-injective", "level": n, "collision": (seen[y], x)}
            seen[y] = x
    return None


def is_cofibration(f: SimplicialMap, condition: str = "reedy") -> Verdict:
    """Check one of three equivalent descriptions of cofibrations.

    * ``reedy`` (i): each relative latching map ``A_m +_{L_m A} L_m B -> B_m``
      is injective;
    * ``generating`` (ii): ``A_0 -> B_0`` and each
      ``A_{n+1} +_{A_n} B_n -> B_{n+1}`` along ``sigma_i`` are injective;
    * ``all-degeneracies`` (iii): ``f`` is levelwise injective and
      ``A_m +_{A_n} B_n -> B_m`` is injective for every degeneracy.

    On finite levels injectivity already gives a decidable complement, which
    is returned in ``complements``.  A failure is tagged ``not-injective`` when
    ``f`` itself is not levelwise injective there and ``comparison-not-injective``
    otherwise.
    """
    cond = CONDITIONS.get(condition)
    if cond is None:
        raise ValueError(f"unknown condition {condition!r}")
    A, B = f.dom, f.cod
    top, qual = _range(A, B)
    complements: dict = {}

    def fail(where: dict) -> Verdict:
        inj = _injectivity_failure(f, top)
        kind = "not-injective" if inj is not None else "comparison-not-injective"
        cert = {"condition": cond, "kind": kind, **where}
        if inj is not None:
            cert["mono_failure"] = inj
        return Verdict(False, qual, cert)

    if cond == "reedy":
        for m in range(top + 1):
            LA = latching_object(A, m)
            LB = latching_object(B, m)
            ok, coll, comp = _pushout_comparison(
                LA.elements, A.level(m), LB.elements,
                lambda a: a, f, f, lambda b: b, B.level(m),
            )
            if not ok:
                return fail({"level": m, **coll})
            complements[m] = comp
    elif cond == "generating":
        seen: dict = {}
        for a in A.level(0):
            b = f(a)
            if b in seen:
                return fail({"level": 0, "collision": (seen[b], a)})
            seen[b] = a
        complements[0] = tuple(b for b in B.level(0) if b not in seen)
        for n in range(top):
            for i in range(n + 1):
                s = degeneracy(n, i)
                ok, coll, comp = _pushout_comparison(
                    A.level(n), A.level(n + 1), B.level(n),
                    lambda a, s=s: A.act(a, s), f, f, lambda b, s=s: B.act(b, s),
                    B.level(n + 1),
                )
                if not ok:
                    return fail({"level": n + 1, "degeneracy": i, **coll})
                complements[(n + 1, i)] = comp
    else:
        inj = _injectivity_failure(f, top)
        if inj is not None:
            return Verdict(False, qual, {"condition": cond, **inj, "mono_failure": inj})
        for m in range(top + 1):
            img = set(f.on_level(m))
            complements[m] = tuple(b for b in B.level(m) if b not in img)
            for n in range(m):
                for s in surjections(m, n):
                    if s.is_identity():
                        continue
                    ok, coll, comp = _pushout_comparison(
                        A.level(n), A.level(m), B.level(n),
                        lambda a, s=s: A.act(a, s), f, f, lambda b, s=s: B.act(b, s),
                        B.level(m),
                    )
                    if not ok:
                        return fail({"level": m, "degeneracy": list(s.values), **coll})
                    complements[(m, s.values)] = comp
    return Verdict(True, qual, {"condition": cond}, complements)


# filtrations ----------------------------------------------------------------------


@dataclass
class Stage:
    """One pushout attaching ``|index| `` copies of ``Delta^k`` along their boundaries."""

    k: int
    index: list
    obj: FgSimplicialSet
    embedding: SimplicialMap
    attaching: list

    @property
    def cells(self) -> int:
        return len(self.index)


def _attach_stage(
    prev: FgSimplicialSet,
    prev_emb: SimplicialMap,
    k: int,
    cells: list,
    top_simplex,
    ambient: FgSimplicialSet,
) -> Stage:
    """Glue ``Delta^k`` copies to ``prev`` and embed the result into ``ambient``.

    ``top_simplex(c)`` is the ``k``-simplex of ``ambient`` carried by cell ``c``.
    """
    lookup = {}
    for g, y in prev_emb.images.items():
        lookup[y] = gen_simplex(g, prev.gen_dim(g))
    Dk = standard_simplex(k)
    Bk = boundary(k)
    objects: list = [prev]
    arrows = []
    attaching = []
    for c in cells:
        top = top_simplex(c)
        ob = len(objects)
        objects.append(Bk)
        objects.append(Dk)
        att = {}
        for h in Bk.all_generators():
            y = ambient.act(top, Operator(h, k))
            if y not in lookup:
                raise AssertionError(f"cell {c!r} has a face outside the previous stage")
            att[h] = lookup[y]
        amap = SimplicialMap(Bk, prev, att)
        attaching.append(amap)
        arrows.append((ob, 0, amap))
        arrows.append((ob, ob + 1, SimplicialMap(Bk, Dk, {h: gen_simplex(h, Bk.gen_dim(h)) for h in Bk.all_generators()})))
    C = finite_colimit(objects, arrows)
    maps = [prev_emb]
    for c in cells:
        top = top_simplex(c)
        into = SimplicialMap(Dk, ambient, {h: ambient.act(top, Operator(h, k)) for h in Dk.all_generators()})
        maps.append(SimplicialMap(Bk, ambient, {h: into.images[h] for h in Bk.all_generators()}))
        maps.append(into)
    emb = C.induced(maps)
    return Stage(k, list(cells), C.obj, emb, attaching)


def skeleton_filtration(m: int) -> list[Stage]:
    """``X^(k)`` holds the operators into ``[m]`` factoring through ``[k]``.

    Stage ``k`` attaches one ``k``-cell per face operator ``[k] -> [m]``; the
    last stage is ``X^(m-1) = boundary(m)`` (up to the returned embedding).
    """
    ambient = standard_simplex(m)
    empty = FgSimplicialSet({}, name="X^(-1)")
    prev, prev_emb = empty, SimplicialMap(empty, ambient, {})
    stages = []
    for k in range(m):
        cells = list(combinations(range(m + 1), k + 1))
        st = _attach_stage(prev, prev_emb, k, cells, lambda c: gen_simplex(c, len(c) - 1), ambient)
        stages.append(st)
        prev, prev_emb = st.obj, st.embedding
    return stages


def _is_surjective_simplex(x: Simplex, n: int) -> bool:
    return len(x.gen) == n + 1


def shuffle_filtration(m: int, n: int) -> tuple[FgSimplicialSet, list[Stage], Limit]:
    """Cell filtration of ``Delta^m x Delta^n`` relative to the union of boundaries.

    Returns ``(X^(-1), stages, product)``.  Stage ``k`` attaches the injective
    pairs ``(phi, psi): [k] -> [m] x [n]`` with both components surjective,
    which are exactly the nondegenerate simplices outside ``X^(-1)``.
    """
    L = product([standard_simplex(m), standard_simplex(n)])
    P = L.obj
    start_gens = [
        g
        for g in P.all_generators()
        if not (_is_surjective_simplex(g[0], m) and _is_surjective_simplex(g[1], n))
    ]
    start, start_inc = subobject(P, start_gens, name="X^(-1)")
    prev, prev_emb = start, start_inc
    stages = []
    for k in range(m + n + 1):
        cells = [
            g
            for g in P.generators.get(k, ())
            if _is_surjective_simplex(g[0], m) and _is_surjective_simplex(g[1], n)
        ]
        cells_ops = [(simplex_values(g[0]), simplex_values(g[1])) for g in cells]
        st = _attach_stage(prev, prev_emb, k, cells, lambda g, k=k: gen_simplex(g, k), P)
        st.index = cells_ops
        stages.append(st)
        prev, prev_emb = st.obj, st.embedding
    return start, stages, L


def simplex_values(x: Simplex) -> tuple[int, ...]:
    return tuple(x.gen[v] for v in x.op.values)


# pushout products -------------------------------------------------------------------


@dataclass
class PushoutProduct:
    map: SimplicialMap
    colimit: Any
    products: dict


def pushout_product(i: SimplicialMap, j: SimplicialMap) -> PushoutProduct:
    """``(A x Y) +_{A x X} (B x X) -> B x Y`` for ``i: A -> B`` and ``j: X -> Y``."""
    A, B, X, Y = i.dom, i.cod, j.dom, j.cod
    AX, AY, BX, BY = product([A, X]), product([A, Y]), product([B, X]), product([B, Y])
    idA = SimplicialMap(A, A, {g: gen_simplex(g, A.gen_dim(g)) for g in A.all_generators()})
    idB = SimplicialMap(B, B, {g: gen_simplex(g, B.gen_dim(g)) for g in B.all_generators()})
    idX = SimplicialMap(X, X, {g: gen_simplex(g, X.gen_dim(g)) for g in X.all_generators()})
    idY = SimplicialMap(Y, Y, {g: gen_simplex(g, Y.gen_dim(g)) for g in Y.all_generators()})
    Aj = product_map(idA, j, AX, AY)
    iX = product_map(i, idX, AX, BX)
    C = pushout(Aj, iX)
    iY = product_map(i, idY, AY, BY)
    Bj = product_map(idB, j, BX, BY)
    f = C.induced([Aj.then(iY), iY, Bj])
    return PushoutProduct(f, C, {"AX": AX, "AY": AY, "BX": BX, "BY": BY})
