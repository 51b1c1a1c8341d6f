"""Lifting problems, right lifting properties against the generating
inclusions, and the bounded small object argument."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable, Iterator

from .core.nerves import build_standard
from .core.search import Budget, NoWitness, as_budget, extensions, merge_pins, pins_along
from .core.simplicial import (
    FgSimplicialSet,
    Simplex,
    SimplicialMap,
    canonical_name,
    gen_simplex,
    identity_map,
)

__all__ = [
    "LiftingProblem",
    "solve_lift",
    "brute_force_lifts",
    "generator_inclusions",
    "squares",
    "RlpVerdict",
    "has_rlp",
    "Attachment",
    "SoaStage",
    "Factorisation",
    "soa_factorize",
    "verify_bounded_fibration",
    "delete_attachment",
    "RetractWitness",
    "retract_witness",
]



def _named(f: SimplicialMap) -> dict:
    return {canonical_name(k): canonical_name(v) for k, v in (f.images or {}).items()}

@dataclass
class LiftingProblem:
    """A commuting square ``p o top = bottom o left``."""

    left: SimplicialMap
    right: SimplicialMap
    top: SimplicialMap
    bottom: SimplicialMap
    budget: int | None = None

    def __post_init__(self) -> None:
        i, p = self.left, self.right
        if self.top.dom is not i.dom or self.bottom.dom is not i.cod:
            raise ValueError("square legs have mismatched objects")
        A = i.dom
        if not isinstance(A, FgSimplicialSet) or not isinstance(i.cod, FgSimplicialSet):
            raise ValueError("the left map must be between finitely generated objects")
        for a in A.all_generators():
            s = gen_simplex(a, A.gen_dim(a))
            if p(self.top(s)) != self.bottom(i(s)):
                raise ValueError(f"square does not commute at generator {a!r}")

    def is_filler(self, h: SimplicialMap) -> bool:
        B = self.left.cod
        A = self.left.dom
        for a in A.all_generators():
            s = gen_simplex(a, A.gen_dim(a))
            if h(self.left(s)) != self.top(s):
                return False
        for b in B.all_generators():
            s = gen_simplex(b, B.gen_dim(b))
            if self.right(h(s)) != self.bottom(s):
                return False
        return True


def solve_lift(P: LiftingProblem, budget: Budget | int | None = None) -> SimplicialMap | NoWitness:
    """First diagonal filler in generator order, or ``NoWitness`` after exhausting the space.

    Raises ``BudgetExceeded`` when the node budget runs out first.
    """
    B = P.left.cod
    X = P.right.dom
    bud = as_budget(P.budget if budget is None else budget)
    pins = pins_along(P.left, P.top)
    bottom, p = P.bottom, P.right

    def pred(b: Hashable, y: Any) -> bool:
        return p(y) == bottom.images[b]

    for a in extensions(B, X, pins=pins, pred=pred, budget=bud):
        return SimplicialMap(B, X, a)
    return NoWitness("exhausted space", bud.nodes, {"square": _square_json(P)})


def brute_force_lifts(P: LiftingProblem) -> list[SimplicialMap]:
    """Every diagonal, by testing all maps ``cod(left) -> dom(right)``."""
    B = P.left.cod
    X = P.right.dom
    out = []
    for a in extensions(B, X, budget=None):
        h = SimplicialMap(B, X, a)
        if P.is_filler(h):
            out.append(h)
    return out


def _square_json(P: LiftingProblem) -> dict:
    return {
        "top": _named(P.top),
        "bottom": _named(P.bottom),
    }


# generators and squares ---------------------------------------------------------------


def generator_inclusions(kind: str, maxdim: int) -> list[tuple[str, SimplicialMap]]:
    """Named boundary (``kind="boundaries"``) or horn (``"horns"``) inclusions."""
    out = []
    if kind in ("boundaries", "boundary", "cof-trivfib"):
        for m in range(maxdim + 1):
            out.append((f"boundary({m})", build_standard("boundary", m)[1]))
    elif kind in ("horns", "horn", "trivcof-fib"):
        for m in range(1, maxdim + 1):
            for i in range(m + 1):
                out.append((f"horn({m},{i})", build_standard("horn", m, i)[1]))
    else:
        raise ValueError(f"unknown generator set {kind!r}")
    return out


def squares(
    j: SimplicialMap, p: SimplicialMap, budget: Budget | int | None = None
) -> Iterator[tuple[SimplicialMap, SimplicialMap]]:
    """All commuting squares ``(top, bottom)`` from ``j`` to ``p``, bottom-major order."""
    A, B = j.dom, j.cod
    X, Y = p.dom, p.cod
    bud = as_budget(budget)
    for bot in extensions(B, Y, budget=bud):
        bottom = SimplicialMap(B, Y, bot)
        want = {a: bottom(j(gen_simplex(a, A.gen_dim(a)))) for a in A.all_generators()}
        for t in extensions(A, X, pred=lambda a, y: p(y) == want[a], budget=bud):
            yield SimplicialMap(A, X, t), bottom


@dataclass
class RlpVerdict:
    holds: bool
    maxdim: int
    per_generator: dict = field(default_factory=dict)
    counterexample: dict | None = None

    def __bool__(self) -> bool:
        return self.holds

    @property
    def qualifier(self) -> str:
        return f"up to dim {self.maxdim}"


def has_rlp(
    p: SimplicialMap,
    generators: str = "horns",
    maxdim: int = 2,
    budget: Budget | int | None = None,
    stop_at_first: bool = True,
) -> RlpVerdict:
    """Exhaustive right lifting check against generating inclusions of dim <= ``maxdim``."""
    bud = as_budget(budget)
    per: dict = {}
    counter = None
    for name, j in generator_inclusions(generators, maxdim):
        count = 0
        ok = True
        for top, bottom in squares(j, p, bud):
            count += 1
            h = solve_lift(LiftingProblem(j, p, top, bottom), bud)
            if not h:
                ok = False
                if counter is None:
                    counter = {
                        "generator": name,
                        "top": _named(top),
                        "bottom": _named(bottom),
                    }
                break
        per[name] = {"squares": count, "holds": ok}
        if not ok and stop_at_first:
            break
    return RlpVerdict(counter is None, maxdim, per, counter)


# small object argument ------------------------------------------------------------------


@dataclass
class Attachment:
    generator: str
    inclusion: SimplicialMap
    top: SimplicialMap
    bottom: SimplicialMap
    cell: SimplicialMap | None = None


@dataclass
class SoaStage:
    index: int
    attachments: list
    obj: FgSimplicialSet
    inclusion: SimplicialMap
    to_base: SimplicialMap


@dataclass
class Factorisation:
    """``f = second o first`` through ``middle``; ``objects[k]`` is the k-th stage."""

    f: SimplicialMap
    system: str
    maxdim: int
    middle: FgSimplicialSet
    first: SimplicialMap
    second: SimplicialMap
    stages: list
    objects: list
    maps: list

    @property
    def generators(self) -> str:
        return "boundaries" if self.system == "cof-trivfib" else "horns"


_SYSTEMS = ("cof-trivfib", "trivcof-fib")


def _attach(
    X: FgSimplicialSet, q: SimplicialMap, stage: int, atts: list
) -> tuple[FgSimplicialSet, SimplicialMap, SimplicialMap]:
    """Pushout of ``X`` along every attachment; new generators are ``("cell", stage, idx, b)``."""
    gens = [(g, (X.gen_dim(g), X.gen_faces(g))) for g in X.all_generators()]
    qimg = dict(q.images)
    for idx, at in enumerate(atts):
        j, top, bottom = at.inclusion, at.top, at.bottom
        A, B = j.dom, j.cod
        hit = {}
        for a in A.all_generators():
            s = j(gen_simplex(a, A.gen_dim(a)))
            if s.op.is_identity():
                hit[s.gen] = top.images[a]
        cellimg = {}
        for b in B.all_generators():
            if b in hit:
                cellimg[b] = hit[b]
                continue
            new = ("cell", stage, idx, b)
            faces = []
            for f in B.gen_faces(b):
                if f.gen in hit:
                    faces.append(X.act(hit[f.gen], f.op) if not f.op.is_identity() else hit[f.gen])
                else:
                    faces.append(Simplex(f.op, ("cell", stage, idx, f.gen)))
            gens.append((new, (B.gen_dim(b), tuple(faces))))
            qimg[new] = bottom.images[b]
            cellimg[b] = gen_simplex(new, B.gen_dim(b))
        at.cell = cellimg
    Xn = FgSimplicialSet(gens, name=f"X_{stage + 1}", validate=False)
    inc = SimplicialMap(X, Xn, {g: gen_simplex(g, X.gen_dim(g)) for g in X.all_generators()})
    qn = SimplicialMap(Xn, q.cod, qimg)
    for at in atts:
        at.cell = SimplicialMap(at.inclusion.cod, Xn, at.cell)
    return Xn, inc, qn


def soa_factorize(
    f: SimplicialMap,
    system: str = "cof-trivfib",
    stages: int = 1,
    maxdim: int = 1,
    budget: Budget | int | None = None,
) -> Factorisation:
    """Bounded small object argument.

    Stage ``k`` attaches one cell for every lifting problem of a generator of
    dimension ``<= maxdim`` against ``X_k -> Y``, enumerated deterministically.
    """
    if system not in _SYSTEMS:
        raise ValueError(f"unknown system {system!r}")
    if not isinstance(f.dom, FgSimplicialSet):
        raise ValueError("soa_factorize needs a finitely generated domain")
    bud = as_budget(budget)
    kind = "boundaries" if system == "cof-trivfib" else "horns"
    gens = generator_inclusions(kind, maxdim)
    X, q = f.dom, f
    objects, maps, recs = [X], [q], []
    for k in range(stages):
        atts = [
            Attachment(name, j, top, bottom)
            for name, j in gens
            for top, bottom in squares(j, q, bud)
        ]
        X, inc, q = _attach(X, q, k, atts)
        recs.append(SoaStage(k, atts, X, inc, q))
        objects.append(X)
        maps.append(q)
    first = SimplicialMap(f.dom, X, {g: gen_simplex(g, f.dom.gen_dim(g)) for g in f.dom.all_generators()})
    return Factorisation(f, system, maxdim, X, first, q, recs, objects, maps)


def verify_bounded_fibration(
    F: Factorisation,
    generators: str | None = None,
    maxdim: int | None = None,
    budget: Budget | int | None = None,
) -> bool:
    """Every lifting problem against ``X_{k+1} -> Y`` whose top factors through
    ``X_k`` has a filler in ``X_{k+1}``; checked by search, not by lookup."""
    kind = generators or F.generators
    md = F.maxdim if maxdim is None else maxdim
    bud = as_budget(budget)
    for k in range(len(F.objects) - 1):
        Xk, qk = F.objects[k], F.maps[k]
        Xn, qn = F.objects[k + 1], F.maps[k + 1]
        inc = SimplicialMap(Xk, Xn, {g: gen_simplex(g, Xk.gen_dim(g)) for g in Xk.all_generators()})
        for _, j in generator_inclusions(kind, md):
            for top, bottom in squares(j, qk, bud):
                P = LiftingProblem(j, qn, top.then(inc), bottom)
                if not solve_lift(P, bud):
                    return False
    return True


def delete_attachment(F: Factorisation, stage: int, idx: int) -> Factorisation:
    """Rebuild ``F`` with one attachment removed and later stages dropped."""
    recs = F.stages[: stage + 1]
    X, q = F.objects[stage], F.maps[stage]
    atts = [
        Attachment(a.generator, a.inclusion, a.top, a.bottom)
        for t, a in enumerate(recs[stage].attachments)
        if t != idx
    ]
    Xn, inc, qn = _attach(X, q, stage, atts)
    new_recs = list(recs[:stage]) + [SoaStage(stage, atts, Xn, inc, qn)]
    objects = list(F.objects[: stage + 1]) + [Xn]
    maps = list(F.maps[: stage + 1]) + [qn]
    first = SimplicialMap(F.f.dom, Xn, {g: gen_simplex(g, F.f.dom.gen_dim(g)) for g in F.f.dom.all_generators()})
    return Factorisation(F.f, F.system, F.maxdim, Xn, first, qn, new_recs, objects, maps)


# retracts ---------------------------------------------------------------------------------


@dataclass
class RetractWitness:
    """``f`` is a retract of ``g``: ``r_dom s_dom = id``, ``r_cod s_cod = id``,
    ``g s_dom = s_cod f`` and ``f r_dom = r_cod g``."""

    r_dom: SimplicialMap
    r_cod: SimplicialMap
    s_dom: SimplicialMap
    s_cod: SimplicialMap

    def check(self, f: SimplicialMap, g: SimplicialMap) -> bool:
        def eq(u: SimplicialMap, v: SimplicialMap) -> bool:
            D = u.dom
            return all(
                u(gen_simplex(x, D.gen_dim(x))) == v(gen_simplex(x, D.gen_dim(x)))
                for x in D.all_generators()
            )

        return (
            eq(self.s_dom.then(self.r_dom), identity_map(f.dom))
            and eq(self.s_cod.then(self.r_cod), identity_map(f.cod))
            and eq(self.s_dom.then(g), f.then(self.s_cod))
            and eq(self.r_dom.then(f), g.then(self.r_cod))
        )


def retract_witness(
    f: SimplicialMap, g: SimplicialMap, budget: Budget | int | None = None
) -> RetractWitness | NoWitness:
    """Exhaustive search for data exhibiting ``f`` as a retract of ``g``."""
    bud = as_budget(budget)
    A, B, C, D = f.dom, f.cod, g.dom, g.cod
    idA, idB = identity_map(A), identity_map(B)
    for sd in extensions(A, C, budget=bud):
        s_dom = SimplicialMap(A, C, sd)
        for rd in extensions(C, A, pins=pins_along(s_dom, idA), budget=bud):
            r_dom = SimplicialMap(C, A, rd)
            for sc in extensions(B, D, pins=pins_along(f, s_dom.then(g)), budget=bud):
                s_cod = SimplicialMap(B, D, sc)
                pins = merge_pins(pins_along(s_cod, idB), pins_along(g, r_dom.then(f)))
                for rc in extensions(D, B, pins=pins, budget=bud):
                    return RetractWitness(r_dom, SimplicialMap(D, B, rc), s_dom, s_cod)
    return NoWitness("exhausted space", bud.nodes)
