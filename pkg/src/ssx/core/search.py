"""Backtracking enumeration of simplicial maps out of a generator presentation.

Generators of the domain are visited in dimension order.  Once the faces of a
generator are assigned, the admissible images are exactly the simplices of the
target with that face tuple, which ``SimplicialSet.face_index`` looks up
directly.  This one engine serves hom-set enumeration, lifting problems,
homotopy search and retract search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterator, Mapping, Sequence

from .operators import Operator
from .simplicial import FgSimplicialSet, SimplicialMap, SimplicialSet, Simplex, gen_simplex

__all__ = [
    "BudgetExceeded",
    "NoWitness",
    "Budget",
    "extensions",
    "hom_set",
    "count_homs",
    "pins_along",
    "merge_pins",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """The node budget ran out before the search space was exhausted."""

    def __init__(self, nodes: int, limit: int) -> None:
        super().__init__(f"search budget of {limit} nodes exhausted")
        self.nodes = nodes
        self.limit = limit


@dataclass(frozen=True)
class NoWitness:
    """The whole search space was explored and nothing qualified."""

    reason: str = "exhausted space"
    explored: int = 0
    certificate: Any = None

    def __bool__(self) -> bool:
        return False


@dataclass
class Budget:
    limit: int | None = DEFAULT_BUDGET
    nodes: int = 0

    def tick(self, n: int = 1) -> None:
        self.nodes += n
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExceeded(self.nodes, self.limit)


def as_budget(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(limit=budget)


Pins = Mapping[Hashable, Sequence[tuple[Operator, Any]]]


def extensions(
    X: FgSimplicialSet,
    Y: SimplicialSet,
    pins: Pins | None = None,
    pred: Callable[[Hashable, Any], bool] | None = None,
    budget: Budget | int | None = None,
    candidates: Callable[[Hashable, int, tuple], Sequence | None] | None = None,
) -> Iterator[dict]:
    """Yield every generator assignment ``X -> Y`` meeting the constraints.

    ``pins[g]`` lists pairs ``(eta, y)`` demanding ``image(g) . eta == y``.
    ``pred(g, y)`` is an extra per-generator filter.  ``candidates`` may
    override the candidate list for a generator (it receives the generator,
    its dimension and the required face tuple).
    """
    budget = as_budget(budget)
    pins = pins or {}
    order = X.all_generators()
    if Y.cap is not None and X.dim > Y.cap:
        from .simplicial import CapExceeded

        raise CapExceeded(f"target tabulated to {Y.cap}, domain has dimension {X.dim}")
    assign: dict = {}
    N = len(order)
    if N == 0:
        yield {}
        return

    def image_of(s: Simplex) -> Any:
        y = assign[s.gen]
        return y if s.op.is_identity() else Y.act(y, s.op)

    def cands(pos: int) -> list:
        g = order[pos]
        k = X.gen_dim(g)
        if k == 0:
            need: tuple = ()
        else:
            need = tuple(image_of(f) for f in X.gen_faces(g))
        base = None
        if candidates is not None:
            base = candidates(g, k, need)
        if base is None:
            pg = pins.get(g, ())
            fixed = [y for eta, y in pg if eta.is_identity()]
            if fixed:
                y0 = fixed[0]
                ok = Y.contains(y0, k) and (k == 0 or Y.faces_of(y0, k) == need)
                base = [y0] if ok else []
            elif k == 0:
                base = Y.level(0)
            else:
                base = Y.face_index(k).get(need, ())
        out = []
        pg = pins.get(g, ())
        for y in base:
            budget.tick()
            if pg and any(Y.act(y, eta) != want for eta, want in pg):
                continue
            if pred is not None and not pred(g, y):
                continue
            out.append(y)
        return out

    stack = [iter(cands(0))]
    while stack:
        pos = len(stack) - 1
        try:
            y = next(stack[-1])
        except StopIteration:
            stack.pop()
            assign.pop(order[pos], None)
            continue
        assign[order[pos]] = y
        if pos + 1 == N:
            yield dict(assign)
        else:
            stack.append(iter(cands(pos + 1)))


def hom_set(
    X: FgSimplicialSet, Y: SimplicialSet, budget: Budget | int | None = None
) -> list[SimplicialMap]:
    """All simplicial maps ``X -> Y`` in deterministic order."""
    return [SimplicialMap(X, Y, a) for a in extensions(X, Y, budget=budget)]


def count_homs(X: FgSimplicialSet, Y: SimplicialSet, budget: Budget | int | None = None) -> int:
    return sum(1 for _ in extensions(X, Y, budget=budget))


def pins_along(i: SimplicialMap, target: SimplicialMap) -> dict:
    """Pins on generators of ``cod(i)`` demanding ``h o i = target``."""
    pins: dict = {}
    A = i.dom
    for a in A.all_generators():
        s = gen_simplex(a, A.gen_dim(a))
        b = i(s)
        pins.setdefault(b.gen, []).append((b.op, target(s)))
    return pins


def merge_pins(*ps: Mapping) -> dict:
    out: dict = {}
    for p in ps:
        for k, v in p.items():
            out.setdefault(k, []).extend(v)
    return out


def first_extension(X, Y, **kw) -> dict | None:
    for a in extensions(X, Y, **kw):
        return a
    return None
