"""Homotopies, homotopy equivalences and strong homotopy equivalences; the
mapping path space; dependent products along a cofibration and the
equivalence extension construction built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable

from .core.constructions import (
    Colimit,
    Limit,
    exponential,
    product,
    product_map,
    pullback,
    pushout,
)
from .core.nerves import operator_simplex, simplex_operator, standard_simplex
from .core.operators import Operator, compose
from .core.search import (
    Budget,
    NoWitness,
    as_budget,
    extensions,
    merge_pins,
    pins_along,
)
from .core.simplicial import (
    FgSimplicialSet,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    TruncatedSimplicialSet,
    gen_simplex,
    identity_map,
    is_isomorphism,
    top_dim,
    truncate,
)
from .lifting import LiftingProblem, has_rlp, solve_lift

__all__ = [
    "Cylinder",
    "cylinder",
    "constant_map",
    "HomotopyWitness",
    "find_homotopy",
    "HomotopyEquivalence",
    "find_homotopy_equivalence",
    "ShrinkWitness",
    "shrinkable_witness",
    "RetractForm",
    "SheWitness",
    "she_witness_search",
    "she_to_retract",
    "retract_to_she",
    "TransferError",
    "transfer_she_along_pullback",
    "MappingPathFactorisation",
    "mapping_path_factorize",
    "DependentProduct",
    "dependent_product",
    "pi_adjunction",
    "PremiseError",
    "EquivalenceExtension",
    "equivalence_extend",
    "extend_trivial_fibration",
]

INTERVAL = standard_simplex(1)


def constant_map(X: SimplicialSet, Y: FgSimplicialSet, v: Hashable) -> SimplicialMap:
    """``X -> Y`` constant at the vertex generator ``v``."""
    if isinstance(X, FgSimplicialSet):
        return SimplicialMap(
            X, Y, {g: Y.act(gen_simplex(v, 0), Operator((0,) * (X.gen_dim(g) + 1), 0)) for g in X.all_generators()}
        )
    return SimplicialMap(
        X, Y, fn=lambda x: Y.act(gen_simplex(v, 0), Operator((0,) * (_dim_of(X, x) + 1), 0))
    )


def _dim_of(X: SimplicialSet, x: Any) -> int:
    if isinstance(x, Simplex):
        return x.dim
    return X.level_of(x)


@dataclass
class Cylinder:
    """``X x Delta^1`` with its projection and end inclusions."""

    base: FgSimplicialSet
    limit: Limit
    ends: tuple

    @property
    def obj(self) -> FgSimplicialSet:
        return self.limit.obj

    @property
    def proj(self) -> SimplicialMap:
        return self.limit.projections[0]


_CYL: dict = {}


def cylinder(X: FgSimplicialSet) -> Cylinder:
    hit = _CYL.get(id(X))
    if hit is not None and hit.base is X:
        return hit
    L = product([X, INTERVAL], name=f"{X.name}xD1")
    idX = identity_map(X)
    ends = tuple(L.pair([idX, constant_map(X, INTERVAL, (e,))], dom=X) for e in (0, 1))
    C = Cylinder(X, L, ends)
    _CYL[id(X)] = C
    return C


def _key(f: SimplicialMap) -> tuple:
    return tuple(f.images[g] for g in f.dom.all_generators())


def _eq(u: SimplicialMap, v: SimplicialMap) -> bool:
    if u.images is not None:
        D = u.dom
        return all(u(gen_simplex(g, D.gen_dim(g))) == v(gen_simplex(g, D.gen_dim(g))) for g in D.all_generators())
    return u.same_as(v)


# homotopies ---------------------------------------------------------------------------


@dataclass
class HomotopyWitness:
    """A zig-zag ``maps[0] ~ maps[1] ~ ...``; step ``j`` is ``(H, d)`` where
    ``d = 0`` means ``H`` runs from ``maps[j]`` to ``maps[j+1]``."""

    source: SimplicialMap
    target: SimplicialMap
    maps: list
    steps: list
    fiberwise_over: SimplicialMap | None = None

    @property
    def length(self) -> int:
        return len(self.steps)

    def check(self) -> bool:
        if not (_eq(self.maps[0], self.source) and _eq(self.maps[-1], self.target)):
            return False
        C = cylinder(self.source.dom)
        for j, (H, d) in enumerate(self.steps):
            a, b = (self.maps[j], self.maps[j + 1]) if d == 0 else (self.maps[j + 1], self.maps[j])
            if not (_eq(C.ends[0].then(H), a) and _eq(C.ends[1].then(H), b)):
                return False
            if not H.is_valid():
                return False
            if self.fiberwise_over is not None:
                m = self.fiberwise_over
                if not _eq(H.then(m), C.proj.then(self.maps[j]).then(m)):
                    return False
        return True


def _homotopies(
    h: SimplicialMap,
    direction: int,
    end: SimplicialMap | None,
    over: SimplicialMap | None,
    budget: Budget,
):
    """Homotopies with ``h`` at end ``direction`` and, if given, ``end`` at the other."""
    X, Y = h.dom, h.cod
    C = cylinder(X)
    pins = pins_along(C.ends[direction], h)
    if end is not None:
        pins = merge_pins(pins, pins_along(C.ends[1 - direction], end))
    pred = None
    if over is not None:
        base = {c: over(h(C.proj(gen_simplex(c, C.obj.gen_dim(c))))) for c in C.obj.all_generators()}
        pred = lambda c, y: over(y) == base[c]  # noqa: E731
    for a in extensions(C.obj, Y, pins=pins, pred=pred, budget=budget):
        yield SimplicialMap(C.obj, Y, a)


def find_homotopy(
    f: SimplicialMap,
    g: SimplicialMap,
    zigzag: int = 1,
    fiberwise_over: SimplicialMap | None = None,
    budget: Budget | int | None = None,
) -> HomotopyWitness | NoWitness:
    """Breadth-first search for a zig-zag of at most ``zigzag`` homotopies.

    ``NoWitness`` only says that no chain of that length exists.
    """
    bud = as_budget(budget)
    X = f.dom
    if _eq(f, g):
        C = cylinder(X)
        H = C.proj.then(f)
        return HomotopyWitness(f, g, [f, g], [(H, 0)], fiberwise_over)
    start = _key(f)
    goal = _key(g)
    parent: dict = {start: None}
    maps = {start: f}
    frontier = [start]
    for depth in range(1, zigzag + 1):
        for key in frontier:
            h = maps[key]
            for d in (0, 1):
                for H in _homotopies(h, d, g, fiberwise_over, bud):
                    parent[goal] = (key, H, d)
                    maps[goal] = g
                    return _rebuild(f, g, parent, maps, goal, fiberwise_over)
        if depth == zigzag:
            break
        nxt = []
        C = cylinder(X)
        for key in frontier:
            h = maps[key]
            for d in (0, 1):
                for H in _homotopies(h, d, None, fiberwise_over, bud):
                    k = C.ends[1 - d].then(H)
                    kk = _key(k)
                    if kk not in parent:
                        parent[kk] = (key, H, d)
                        maps[kk] = k
                        nxt.append(kk)
        frontier = nxt
        if not frontier:
            break
    return NoWitness(f"no zig-zag of length <= {zigzag}", bud.nodes)


def _rebuild(f, g, parent, maps, goal, over) -> HomotopyWitness:
    chain, steps = [goal], []
    while parent[chain[-1]] is not None:
        prev, H, d = parent[chain[-1]]
        steps.append((H, d))
        chain.append(prev)
    chain.reverse()
    steps.reverse()
    return HomotopyWitness(f, g, [maps[k] for k in chain], steps, over)


@dataclass
class HomotopyEquivalence:
    f: SimplicialMap
    g: SimplicialMap
    dom_witness: HomotopyWitness
    cod_witness: HomotopyWitness


def find_homotopy_equivalence(
    f: SimplicialMap,
    zigzag: int = 1,
    budget: Budget | int | None = None,
    over: tuple[SimplicialMap, SimplicialMap] | None = None,
) -> HomotopyEquivalence | NoWitness:
    """Search inverses ``g`` and homotopies ``g f ~ id`` and ``f g ~ id``.

    ``over = (x, y)`` makes everything fiberwise over a base with
    structure maps ``x`` on ``dom f`` and ``y`` on ``cod f``.
    """
    bud = as_budget(budget)
    X, Y = f.dom, f.cod
    pred = None
    if over is not None:
        xs, ys = over
        pred = lambda b, z: xs(z) == ys(gen_simplex(b, Y.gen_dim(b)))  # noqa: E731
    for a in extensions(Y, X, pred=pred, budget=bud):
        g = SimplicialMap(Y, X, a)
        w1 = find_homotopy(f.then(g), identity_map(X), zigzag, over[0] if over else None, bud)
        if not w1:
            continue
        w2 = find_homotopy(g.then(f), identity_map(Y), zigzag, over[1] if over else None, bud)
        if w2:
            return HomotopyEquivalence(f, g, w1, w2)
    return NoWitness("exhausted space", bud.nodes)


@dataclass
class ShrinkWitness:
    """A section ``s`` of ``p`` and a fiberwise zig-zag from ``s p`` to ``id``."""

    p: SimplicialMap
    section: SimplicialMap
    homotopy: HomotopyWitness

    def check(self) -> bool:
        return _eq(self.section.then(self.p), identity_map(self.p.cod)) and self.homotopy.check()


def shrinkable_witness(
    p: SimplicialMap, zigzag: int = 1, budget: Budget | int | None = None
) -> ShrinkWitness | NoWitness:
    bud = as_budget(budget)
    X, Y = p.dom, p.cod
    pred = lambda b, z: p(z) == gen_simplex(b, Y.gen_dim(b))  # noqa: E731
    for a in extensions(Y, X, pred=pred, budget=bud):
        s = SimplicialMap(Y, X, a)
        w = find_homotopy(p.then(s), identity_map(X), zigzag, p, bud)
        if w:
            return ShrinkWitness(p, s, w)
    return NoWitness("exhausted space", bud.nodes)


# strong homotopy equivalences ---------------------------------------------------------------


@dataclass
class RetractForm:
    """A retraction of ``f -> iota_k x^ f`` in the arrow category.

    ``P`` is ``(A x D1) +_{A x {k}} B``; ``ambient: P -> B x D1`` is the
    pushout product; ``into_dom: A -> P`` and ``into_cod: B -> B x D1`` are the
    other end inclusions; ``r_dom`` and ``r_cod`` are the retraction.
    """

    orientation: int
    P: Colimit
    ambient: SimplicialMap
    into_dom: SimplicialMap
    into_cod: SimplicialMap
    r_dom: SimplicialMap
    r_cod: SimplicialMap

    def check(self, f: SimplicialMap) -> bool:
        return (
            _eq(self.into_dom.then(self.r_dom), identity_map(f.dom))
            and _eq(self.into_cod.then(self.r_cod), identity_map(f.cod))
            and _eq(self.r_dom.then(f), self.ambient.then(self.r_cod))
            and self.r_dom.is_valid()
            and self.r_cod.is_valid()
        )


@dataclass
class SheWitness:
    """``(g, u, v)`` with ``f u = v (f x D1)``.

    Orientation 0: ``u`` runs from ``g f`` to ``id`` and ``v`` from ``f g`` to
    ``id``; orientation 1 reverses both.
    """

    f: SimplicialMap
    g: SimplicialMap
    u: SimplicialMap
    v: SimplicialMap
    orientation: int
    retract: RetractForm | None = None

    def check(self) -> bool:
        f, g, k = self.f, self.g, self.orientation
        A, B = f.dom, f.cod
        CA, CB = cylinder(A), cylinder(B)
        far, near = 1 - k, k
        ok = (
            _eq(CA.ends[far].then(self.u), identity_map(A))
            and _eq(CA.ends[near].then(self.u), f.then(g))
            and _eq(CB.ends[far].then(self.v), identity_map(B))
            and _eq(CB.ends[near].then(self.v), g.then(f))
        )
        fx1 = product_map(f, identity_map(INTERVAL), CA.limit, CB.limit)
        return ok and _eq(self.u.then(f), fx1.then(self.v)) and self.u.is_valid() and self.v.is_valid()


def _retract_frame(f: SimplicialMap, k: int):
    A, B = f.dom, f.cod
    CA, CB = cylinder(A), cylinder(B)
    P = pushout(CA.ends[k], f, name=f"P{k}")
    fx1 = product_map(f, identity_map(INTERVAL), CA.limit, CB.limit)
    ambient = P.induced([CA.ends[k].then(fx1), fx1, CB.ends[k]])
    into_dom = CA.ends[1 - k].then(P.legs[1])
    into_cod = CB.ends[1 - k]
    return P, ambient, into_dom, into_cod, fx1


def she_to_retract(w: SheWitness) -> RetractForm:
    P, ambient, into_dom, into_cod, _ = _retract_frame(w.f, w.orientation)
    r_dom = P.induced([w.f.then(w.g), w.u, w.g])
    return RetractForm(w.orientation, P, ambient, into_dom, into_cod, r_dom, w.v)


def retract_to_she(f: SimplicialMap, R: RetractForm) -> SheWitness:
    g = R.P.legs[2].then(R.r_dom)
    u = R.P.legs[1].then(R.r_dom)
    return SheWitness(f, g, u, R.r_cod, R.orientation, R)


def _she_direct(f: SimplicialMap, k: int, bud: Budget) -> SheWitness | None:
    A, B = f.dom, f.cod
    CA, CB = cylinder(A), cylinder(B)
    far = 1 - k
    fx1 = product_map(f, identity_map(INTERVAL), CA.limit, CB.limit)
    idA, idB = identity_map(A), identity_map(B)
    for a in extensions(B, A, budget=bud):
        g = SimplicialMap(B, A, a)
        vp = merge_pins(pins_along(CB.ends[far], idB), pins_along(CB.ends[k], g.then(f)))
        for va in extensions(CB.obj, B, pins=vp, budget=bud):
            v = SimplicialMap(CB.obj, B, va)
            want = {c: v(fx1(gen_simplex(c, CA.obj.gen_dim(c)))) for c in CA.obj.all_generators()}
            up = merge_pins(pins_along(CA.ends[far], idA), pins_along(CA.ends[k], f.then(g)))
            for ua in extensions(CA.obj, A, pins=up, pred=lambda c, y: f(y) == want[c], budget=bud):
                return SheWitness(f, g, SimplicialMap(CA.obj, A, ua), v, k)
    return None


def _she_retract(f: SimplicialMap, k: int, bud: Budget) -> RetractForm | None:
    A, B = f.dom, f.cod
    P, ambient, into_dom, into_cod, _ = _retract_frame(f, k)
    CB = cylinder(B)
    for ra in extensions(P.obj, A, pins=pins_along(into_dom, identity_map(A)), budget=bud):
        r_dom = SimplicialMap(P.obj, A, ra)
        pins = merge_pins(pins_along(into_cod, identity_map(B)), pins_along(ambient, r_dom.then(f)))
        for rc in extensions(CB.obj, B, pins=pins, budget=bud):
            return RetractForm(k, P, ambient, into_dom, into_cod, r_dom, SimplicialMap(CB.obj, B, rc))
    return None


def she_witness_search(
    f: SimplicialMap, orientation: int = 0, budget: Budget | int | None = None
) -> SheWitness | NoWitness:
    """Search both the direct data ``(g, u, v)`` and a retraction of
    ``f -> iota_k x^ f``, then translate each into the other and check."""
    if orientation not in (0, 1):
        raise ValueError("orientation is 0 or 1")
    bud = as_budget(budget)
    direct = _she_direct(f, orientation, bud)
    retract = _she_retract(f, orientation, bud)
    if (direct is None) != (retract is None):
        raise AssertionError("direct and retract searches disagree")
    if direct is None:
        return NoWitness("exhausted space", bud.nodes)
    translated = she_to_retract(direct)
    back = retract_to_she(f, retract)
    if not (direct.check() and translated.check(f) and retract.check(f) and back.check()):
        raise AssertionError("witness translation failed")
    direct.retract = retract
    return direct


class TransferError(RuntimeError):
    def __init__(self, message: str, square: Any = None) -> None:
        super().__init__(message)
        self.square = square


def transfer_she_along_pullback(
    w: SheWitness,
    p: SimplicialMap,
    budget: Budget | int | None = None,
    fibration_maxdim: int | None = None,
) -> tuple[SheWitness, Limit]:
    """Pull a strong homotopy equivalence ``f: A -> Z`` back along ``p: X -> Z``.

    One lifting problem against ``p`` produces ``V: X x D1 -> X``; the new
    data is ``g'' = (V_k, g p)``, ``u'' = (V (g x 1), u (q x 1))`` and ``v'' = V``.
    """
    f = w.f
    if p.cod is not f.cod:
        raise ValueError("p and f need a common codomain")
    X = p.dom
    if fibration_maxdim is not None:
        verdict = has_rlp(p, "horns", fibration_maxdim, budget)
        if not verdict:
            raise TransferError("right leg fails the horn lifting check", verdict.counterexample)
    k = w.orientation
    far = 1 - k
    CX = cylinder(X)
    CZ = cylinder(f.cod)
    px1 = product_map(p, identity_map(INTERVAL), CX.limit, CZ.limit)
    P = LiftingProblem(CX.ends[far], p, identity_map(X), px1.then(w.v))
    V = solve_lift(P, budget)
    if not V:
        raise TransferError("the lifting problem has no filler", V.certificate)
    L = pullback(p, f, name="pullback")
    B = L.obj
    gmap, qmap = L.projections[0], L.projections[1]
    Vk = CX.ends[k].then(V)
    ginv = L.pair([Vk, p.then(w.g), Vk.then(p)], dom=X)
    CB = cylinder(B)
    CA = cylinder(f.dom)
    gx1 = product_map(gmap, identity_map(INTERVAL), CB.limit, CX.limit)
    qx1 = product_map(qmap, identity_map(INTERVAL), CB.limit, CA.limit)
    top = gx1.then(V)
    u2 = L.pair([top, qx1.then(w.u), top.then(p)], dom=CB.obj)
    out = SheWitness(gmap, ginv, u2, V, k)
    if not out.check():
        raise AssertionError("transported witness fails its equations")
    return out, L


# mapping path space ----------------------------------------------------------------------


@dataclass
class MappingPathFactorisation:
    first: SimplicialMap
    middle: SimplicialSet
    second: SimplicialMap
    paths: Any
    limit: Limit
    retraction: SimplicialMap


def mapping_path_factorize(
    f: SimplicialMap, cap: int = 2, over: SimplicialMap | None = None
) -> MappingPathFactorisation:
    """``X -> X x_Y (D1 => Y) -> Y``: constant paths, then the right endpoint.

    With ``over: Y -> M`` only paths constant over ``M`` are used.
    """
    X, Y = f.dom, f.cod
    flt: Callable | None = None
    if over is not None:

        def constant_over(n: int, a: dict) -> bool:
            R = PY.cylinder(n)
            gam = SimplicialMap(R.obj, Y, a)
            base = R.pair([R.projections[0], constant_map(R.obj, INTERVAL, (0,))], dom=R.obj)
            return all(
                over(gam(gen_simplex(c, R.obj.gen_dim(c)))) == over(gam(base.images[c]))
                for c in R.obj.all_generators()
            )

        flt = constant_over

    PY = exponential(INTERVAL, Y, cap, name=f"P{Y.name}", level_filter=flt)

    def ev(e: int):
        def at(x: tuple) -> Any:
            n = PY.level_of(x)
            R = PY.cylinder(n)
            s = R.element((gen_simplex(tuple(range(n + 1)), n), _const_vertex(e, n)), n)
            return PY.evaluate(x, n, s)

        return SimplicialMap(PY, Y, fn=at)

    ev0, ev1 = ev(0), ev(1)
    L = pullback(f, ev0, cap=cap, name="mapping path space")

    def const_path(y: Any, n: int) -> tuple:
        R = PY.cylinder(n)
        return tuple(Y.act(y, simplex_operator(c[0], n)) for c in R.obj.all_generators())

    def first_fn(x: Simplex) -> tuple:
        y = f(x)
        return L.element((x, const_path(y, x.dim), y), x.dim)

    first = SimplicialMap(X, L.obj, fn=first_fn)
    second = SimplicialMap(L.obj, Y, fn=lambda t: ev1(t[1]))
    return MappingPathFactorisation(first, L.obj, second, PY, L, L.projections[0])


def _const_vertex(e: int, n: int) -> Simplex:
    return Simplex(Operator((0,) * (n + 1), 0), (e,)) if n else gen_simplex((e,), 0)


# dependent products -------------------------------------------------------------------------


class DependentProduct(TruncatedSimplicialSet):
    """``(Pi_i A)_n``: pairs ``(y, s)`` with ``y`` in ``Y_n`` and ``s`` a map
    ``X x_Y Delta^n -> A`` over ``X``, stored as images on generators."""

    def __init__(self, i: SimplicialMap, a: SimplicialMap, cap: int, name: str = "") -> None:
        self.i = i
        self.a = a
        self._fib: dict = {}
        super().__init__(cap, self._enumerate, self._act, name=name or "Pi")
        self.over = SimplicialMap(self, i.cod, fn=lambda e: e[0])

    def fibre(self, y: Any, n: int) -> Limit:
        key = (y, n)
        L = self._fib.get(key)
        if L is None:
            top = gen_simplex(tuple(range(n + 1)), n)
            ym = SimplicialMap(
                standard_simplex(n), self.i.cod, fn=lambda s, y=y, n=n: self.i.cod.act(y, simplex_operator(s, n))
            )
            L = pullback(self.i, ym)
            L.top = top
            self._fib[key] = L
        return L

    def _enumerate(self, n: int) -> list:
        out = []
        for y in self.i.cod.level(n):
            P = self.fibre(y, n).obj
            gens = P.all_generators()
            for s in extensions(P, self.a.dom, pred=lambda g, z: self.a(z) == g[0]):
                out.append((y, tuple(s[g] for g in gens)))
        return out

    def section_value(self, e: tuple, n: int, s: Simplex) -> Any:
        P = self.fibre(e[0], n).obj
        pos = _positions(P)
        z = e[1][pos[s.gen]]
        return z if s.op.is_identity() else self.a.dom.act(z, s.op)

    def _act(self, e: tuple, op: Operator) -> tuple:
        m, n = op.dom, op.cod
        y2 = self.i.cod.act(e[0], op)
        Lm = self.fibre(y2, m)
        Ln = self.fibre(e[0], n)
        vals = []
        for g in Lm.obj.all_generators():
            x, d, z = g
            d2 = operator_simplex(compose(op, simplex_operator(d, m)))
            vals.append(self.section_value(e, n, Ln.element((x, d2, z), x.dim)))
        return (y2, tuple(vals))

    def level_of(self, e: tuple) -> int:
        return _dim_of(self.i.cod, e[0])

    def push(self, h: SimplicialMap, target: "DependentProduct") -> SimplicialMap:
        """``Pi_i h`` for ``h`` a map over ``X`` from ``dom(a)`` to ``dom(target.a)``."""
        return SimplicialMap(self, target, fn=lambda e: (e[0], tuple(h(v) for v in e[1])))


_POS: dict = {}


def _positions(P: FgSimplicialSet) -> dict:
    hit = _POS.get(id(P))
    if hit is None or hit[0] is not P:
        hit = (P, {g: j for j, g in enumerate(P.all_generators())})
        _POS[id(P)] = hit
    return hit[1]


def dependent_product(
    i: SimplicialMap, a: SimplicialMap, cap: int = 2, check_premise: bool = False
) -> DependentProduct:
    """``Pi_i`` of ``a: A -> X`` along ``i: X -> Y``, tabulated up to ``cap``."""
    if check_premise:
        from .cofibrations import is_cofibration

        if not is_cofibration(i):
            raise PremiseError("the map is not a cofibration")
    if a.cod is not i.dom:
        raise ValueError("the object must live over the domain of i")
    return DependentProduct(i, a, cap)


def pi_adjunction(
    Pi: DependentProduct, b: SimplicialMap, budget: Budget | int | None = None
) -> dict:
    """Both sides of ``hom_/Y(B, Pi_i A) = hom_/X(i* B, A)`` with the transposes.

    Returns counts and whether both round trips are the identity.
    """
    bud = as_budget(budget)
    i, a = Pi.i, Pi.a
    B = b.dom
    iB = pullback(i, b)
    left = [
        SimplicialMap(B, Pi, m)
        for m in extensions(B, Pi, pred=lambda g, e: e[0] == b.images[g], budget=bud)
    ]
    right = [
        SimplicialMap(iB.obj, a.dom, m)
        for m in extensions(iB.obj, a.dom, pred=lambda g, z: a(z) == g[0], budget=bud)
    ]

    def to_right(F: SimplicialMap) -> SimplicialMap:
        imgs = {}
        for g in iB.obj.all_generators():
            x, bb, z = g
            n = x.dim
            e = F(bb)
            s = Pi.fibre(e[0], n).element((x, gen_simplex(tuple(range(n + 1)), n), z), n)
            imgs[g] = Pi.section_value(e, n, s)
        return SimplicialMap(iB.obj, a.dom, imgs)

    def to_left(G: SimplicialMap) -> SimplicialMap:
        imgs = {}
        for g in B.all_generators():
            n = B.gen_dim(g)
            y = b.images[g]
            L = Pi.fibre(y, n)
            vals = []
            for c in L.obj.all_generators():
                x, d, z = c
                bb = B.act(gen_simplex(g, n), simplex_operator(d, n))
                vals.append(G(iB.element((x, bb, z), x.dim)))
            imgs[g] = (y, tuple(vals))
        return SimplicialMap(B, Pi, imgs)

    rkeys = {_key(G) for G in right}
    lkeys = {_key(F) for F in left}
    round_l = all(_key(to_left(to_right(F))) == _key(F) for F in left)
    round_r = all(_key(to_right(to_left(G))) == _key(G) for G in right)
    images_ok = all(_key(to_right(F)) in rkeys for F in left) and all(
        _key(to_left(G)) in lkeys for G in right
    )
    return {
        "left": len(left),
        "right": len(right),
        "round_trip": round_l and round_r and images_ok,
        "to_right": to_right,
        "to_left": to_left,
    }


# equivalence extension ----------------------------------------------------------------------


class PremiseError(ValueError):
    pass


@dataclass
class EquivalenceExtension:
    """``Y_0 = Y_1 x_{Pi_i i* Y_1} Pi_i X_0`` with its maps and the restriction check."""

    Y0: SimplicialSet
    to_y1: SimplicialMap
    over_b: SimplicialMap
    limit: Limit
    restriction: Limit
    chi: SimplicialMap
    fits: bool
    cap: int
    fibrancy: Any = None
    notes: dict = field(default_factory=dict)


def _find_comparison(i, x1, y1, budget) -> SimplicialMap:
    L = pullback(i, y1)
    X1 = x1.dom
    for m in extensions(
        X1, y1.dom, pred=lambda g, z: y1(z) == i(x1(gen_simplex(g, X1.gen_dim(g)))), budget=budget
    ):
        k = SimplicialMap(X1, y1.dom, m)
        if is_isomorphism(L.pair([x1, k, x1.then(i)], dom=X1)):
            return k
    raise PremiseError("X_1 is not the pullback of Y_1 along i")


def equivalence_extend(
    i: SimplicialMap,
    e: SimplicialMap,
    x1: SimplicialMap,
    y1: SimplicialMap,
    k: SimplicialMap | None = None,
    cap: int = 2,
    check_premises: bool = False,
    fibrancy_maxdim: int | None = None,
    budget: Budget | int | None = None,
) -> EquivalenceExtension:
    """Extend ``e: X_0 -> X_1`` over ``A`` along ``i: A -> B`` to ``Y_0 -> Y_1``.

    ``x1: X_1 -> A`` and ``y1: Y_1 -> B`` are the structure maps and ``k``
    identifies ``X_1`` with ``i* Y_1`` (searched when omitted).  The
    restriction ``i* Y_0 = X_0`` is checked exactly up to ``cap``; fibrancy of
    ``Y_0 -> B`` is only reported when ``fibrancy_maxdim`` is given.
    """
    bud = as_budget(budget)
    if e.cod is not x1.dom or x1.cod is not i.dom or y1.cod is not i.cod:
        raise ValueError("maps do not fit together")
    if k is None:
        k = _find_comparison(i, x1, y1, bud)
    iY1 = pullback(i, y1, name="i*Y1")
    cmp = iY1.pair([x1, k, x1.then(i)], dom=x1.dom)
    if not is_isomorphism(cmp):
        raise PremiseError("X_1 is not the pullback of Y_1 along i")
    if check_premises:
        from .cofibrations import is_cofibrant, is_cofibration

        if not is_cofibration(i):
            raise PremiseError("i is not a cofibration")
        for obj in (e.dom, e.cod, y1.dom):
            if not is_cofibrant(obj):
                raise PremiseError(f"{obj!r} is not cofibrant")
        heq = find_homotopy_equivalence(e, 1, bud, over=(e.then(x1), x1))
        if not heq:
            raise PremiseError("no fiberwise homotopy equivalence found for e")
    A = i.dom
    X0, Y1 = e.dom, y1.dom
    x0 = e.then(x1)
    ep = e.then(cmp)
    PiX0 = DependentProduct(i, x0, cap, name="Pi X0")
    PiI = DependentProduct(i, iY1.projections[0], cap, name="Pi i*Y1")

    def unit_fn(y: Any) -> tuple:
        n = y.dim
        b = y1(y)
        L = PiI.fibre(b, n)
        vals = []
        for c in L.obj.all_generators():
            a, d, z = c
            vals.append(iY1.element((a, Y1.act(y, simplex_operator(d, n)), z), a.dim))
        return (b, tuple(vals))

    # objects above the cap are used through their truncation
    Y1t = Y1 if top_dim(Y1) <= cap else truncate(Y1, cap)
    X0t = X0 if top_dim(X0) <= cap else truncate(X0, cap)
    unit = SimplicialMap(Y1t, PiI, fn=unit_fn)
    if Y1t is Y1:
        unit = SimplicialMap(Y1, PiI, images=unit.images)
    push = PiX0.push(ep, PiI)
    L0 = pullback(unit, push, cap=cap, name="Y0")
    Y0 = L0.obj
    to_y1 = L0.projections[0]
    over_b = to_y1.then(y1)
    R = pullback(i, over_b, cap=cap, name="i*Y0")

    def chi_fn(x: Simplex) -> tuple:
        n = x.dim
        a = x0(x)
        b = i(a)
        L = PiX0.fibre(b, n)
        vals = tuple(X0.act(x, simplex_operator(c[1], n)) for c in L.obj.all_generators())
        sig = (b, vals)
        yy = k(e(x))
        return (a, L0.element((yy, sig, unit(yy)), n), b)

    chi = SimplicialMap(X0t, R.obj, fn=chi_fn)
    fits = chi.is_valid() and is_isomorphism(chi, upto=cap)
    if fits:
        back = SimplicialMap(R.obj, iY1.obj, fn=lambda t: iY1.element((t[0], t[1][0], t[2]), _dim_of(A, t[0])))
        fits = all(
            back(chi(x)) == ep(x) for n in range(cap + 1) for x in X0.level(n)
        )
    out = EquivalenceExtension(Y0, to_y1, over_b, L0, R, chi, fits, cap)
    if fibrancy_maxdim is not None:
        out.fibrancy = has_rlp(over_b, "horns", min(fibrancy_maxdim, cap), bud)
    return out


def extend_trivial_fibration(
    i: SimplicialMap,
    p: SimplicialMap,
    cap: int = 2,
    check_maxdim: int | None = None,
    budget: Budget | int | None = None,
) -> tuple[SimplicialMap, EquivalenceExtension]:
    """Extend a trivial fibration ``p: X -> A`` along ``i: A -> B``.

    Returns the extension ``Y_0 -> B`` (and the full record); with
    ``check_maxdim`` the boundary lifting property of the result is verified.
    """
    A, B = i.dom, i.cod
    ext = equivalence_extend(i, p, identity_map(A), identity_map(B), k=i, cap=cap, budget=budget)
    if check_maxdim is not None:
        ext.fibrancy = has_rlp(ext.over_b, "boundaries", min(check_maxdim, cap), budget)
    return ext.over_b, ext
