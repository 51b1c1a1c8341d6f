"""Standard simplices, boundaries and horns, and nerves of posets and categories."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Callable, Hashable, Iterable, Sequence

from .operators import Operator, _op
from .simplicial import (
    FgSimplicialSet,
    Simplex,
    SimplicialMap,
    TruncatedSimplicialSet,
    gen_simplex,
    regenerate,
)

__all__ = [
    "Poset",
    "nerve_of_poset",
    "sequence_to_simplex",
    "simplex_to_sequence",
    "build_standard",
    "standard_simplex",
    "boundary",
    "horn",
    "empty",
    "point",
    "operator_simplex",
    "simplex_operator",
    "poset_map_on_nerves",
    "FiniteCategory",
    "nerve_of_category",
]


class Poset:
    """A finite poset given by its elements (in a fixed order) and ``leq``."""

    def __init__(self, elements: Iterable[Hashable], leq: Callable[[Any, Any], bool]) -> None:
        self.elements = tuple(elements)
        self.leq = leq
        self._pos = {e: j for j, e in enumerate(self.elements)}

    def lt(self, a: Any, b: Any) -> bool:
        return a != b and self.leq(a, b)

    def position(self, a: Any) -> int:
        return self._pos[a]

    def chains(self) -> list[tuple]:
        """Nonempty chains, each listed in increasing order."""
        out: list[tuple] = []
        succ = {a: [b for b in self.elements if self.lt(a, b)] for a in self.elements}

        def grow(ch: tuple) -> None:
            out.append(ch)
            for b in succ[ch[-1]]:
                grow(ch + (b,))

        for a in self.elements:
            grow((a,))
        return out

    def __len__(self) -> int:
        return len(self.elements)

    @staticmethod
    def ordinal(n: int) -> "Poset":
        return Poset(range(n + 1), lambda a, b: a <= b)


def _chain_faces(ch: tuple) -> tuple[Simplex, ...]:
    k = len(ch) - 1
    if k == 0:
        return ()
    return tuple(gen_simplex(ch[:i] + ch[i + 1 :], k - 1) for i in range(k + 1))


def nerve_of_poset(P: Poset, name: str = "") -> FgSimplicialSet:
    """``N P`` with generators the strictly increasing chains."""
    chains = sorted(P.chains(), key=lambda c: (len(c), [P.position(a) for a in c]))
    X = FgSimplicialSet(
        [(ch, (len(ch) - 1, _chain_faces(ch))) for ch in chains], name=name, validate=False
    )
    X.poset = P
    return X


def sequence_to_simplex(seq: Sequence) -> Simplex:
    """A nondecreasing sequence in a poset as a simplex of its nerve."""
    chain: list = []
    vals: list[int] = []
    for a in seq:
        if not chain or chain[-1] != a:
            chain.append(a)
        vals.append(len(chain) - 1)
    return Simplex(_op(tuple(vals), len(chain) - 1), tuple(chain))


def simplex_to_sequence(x: Simplex) -> tuple:
    return tuple(x.gen[v] for v in x.op.values)


@lru_cache(maxsize=None)
def standard_simplex(m: int) -> FgSimplicialSet:
    return _sub_simplex(m, lambda c: True, f"Delta^{m}")


@lru_cache(maxsize=None)
def boundary(m: int) -> FgSimplicialSet:
    return _sub_simplex(m, lambda c: len(c) <= m, f"dDelta^{m}")


@lru_cache(maxsize=None)
def horn(m: int, i: int) -> FgSimplicialSet:
    if m < 1 or not 0 <= i <= m:
        raise ValueError(f"no horn Lambda^{m},{i}")
    top = tuple(range(m + 1))
    opposite = tuple(v for v in top if v != i)
    return _sub_simplex(m, lambda c: c != top and c != opposite, f"Lambda^{m},{i}")


@lru_cache(maxsize=None)
def empty() -> FgSimplicialSet:
    return FgSimplicialSet({}, name="empty")


@lru_cache(maxsize=None)
def point() -> FgSimplicialSet:
    return standard_simplex(0)


def _sub_simplex(m: int, keep: Callable[[tuple], bool], name: str) -> FgSimplicialSet:
    gens = []
    for k in range(m + 1):
        for c in combinations(range(m + 1), k + 1):
            if keep(c):
                gens.append((c, (k, _chain_faces(c))))
    X = FgSimplicialSet(gens, name=name, validate=False)
    X.ambient_dim = m
    return X


def build_standard(kind: str, m: int, i: int | None = None) -> tuple[FgSimplicialSet, SimplicialMap]:
    """``(X, X -> Delta^m)`` for ``kind`` in simplex / boundary / horn."""
    if kind == "simplex":
        X = standard_simplex(m)
    elif kind == "boundary":
        X = boundary(m)
    elif kind == "horn":
        if i is None:
            raise ValueError("horn needs an index")
        X = horn(m, i)
    else:
        raise ValueError(f"unknown standard object {kind!r}")
    D = standard_simplex(m) if kind != "simplex" else X
    inc = SimplicialMap(X, D, {g: gen_simplex(g, X.gen_dim(g)) for g in X.all_generators()})
    return X, inc


def operator_simplex(op: Operator) -> Simplex:
    """The simplex of ``Delta^n`` corresponding to ``op: [k] -> [n]``."""
    return sequence_to_simplex(op.values)


def simplex_operator(x: Simplex, n: int) -> Operator:
    return Operator(simplex_to_sequence(x), n)


def poset_map_on_nerves(
    NP: FgSimplicialSet, NQ: FgSimplicialSet, f: Callable[[Any], Any]
) -> SimplicialMap:
    """The nerve of a monotone map ``f``, as a map of generator presentations."""
    return SimplicialMap(
        NP, NQ, {ch: sequence_to_simplex(tuple(f(a) for a in ch)) for ch in NP.all_generators()}
    )


# categories -----------------------------------------------------------------


@dataclass
class FiniteCategory:
    """Objects, named morphisms ``name -> (src, dst)``, and composition.

    ``compose[(g, f)]`` is ``g o f`` for composable ``f: a -> b``, ``g: b -> c``;
    ``identities[obj]`` names the identity morphism.
    """

    objects: list
    morphisms: dict
    compose: dict
    identities: dict

    def __post_init__(self) -> None:
        self.objects = list(self.objects)
        self._out: dict = {a: [] for a in self.objects}
        for f, (s, _t) in self.morphisms.items():
            self._out[s].append(f)
        ids = set(self.identities.values())
        for f, (s, t) in self.morphisms.items():
            for g in self._out[t]:
                if (g, f) not in self.compose:
                    raise ValueError(f"composition table misses {g} o {f}")
        for a, i in self.identities.items():
            if self.morphisms[i] != (a, a):
                raise ValueError(f"identity {i} is not an endomorphism of {a}")
        self._ids = ids

    def is_identity(self, f: Hashable) -> bool:
        return f in self._ids

    def src(self, f: Hashable) -> Hashable:
        return self.morphisms[f][0]

    def dst(self, f: Hashable) -> Hashable:
        return self.morphisms[f][1]

    def out(self, a: Hashable) -> list:
        return self._out[a]

    def comp(self, g: Hashable, f: Hashable) -> Hashable:
        return self.compose[(g, f)]

    def longest_nonidentity_chain(self) -> int | None:
        """Length of the longest chain of non-identity arrows, ``None`` if unbounded."""
        memo: dict = {}
        active: set = set()

        def depth(a) -> int | None:
            if a in memo:
                return memo[a]
            if a in active:
                return None
            active.add(a)
            best = 0
            for f in self._out[a]:
                if self.is_identity(f):
                    continue
                d = depth(self.dst(f))
                if d is None:
                    return None
                best = max(best, d + 1)
            active.discard(a)
            memo[a] = best
            return best

        best = 0
        for a in self.objects:
            d = depth(a)
            if d is None:
                return None
            best = max(best, d)
        return best

    @staticmethod
    def from_poset(P: Poset) -> "FiniteCategory":
        morph = {(a, b): (a, b) for a in P.elements for b in P.elements if P.leq(a, b)}
        comp = {}
        for (b, c) in morph:
            for (a, b2) in morph:
                if b2 == b:
                    comp[((b, c), (a, b))] = (a, c)
        return FiniteCategory(list(P.elements), morph, comp, {a: (a, a) for a in P.elements})


def _category_level(C: FiniteCategory, m: int) -> list:
    if m == 0:
        return [((a,), ()) for a in C.objects]
    out = []
    for objs, arrows in _category_level(C, m - 1):
        for f in C.out(objs[-1]):
            out.append((objs + (C.dst(f),), arrows + (f,)))
    return out


def _category_act(C: FiniteCategory, x: tuple, op: Operator) -> tuple:
    objs, arrows = x
    vals = op.values
    new_objs = tuple(objs[v] for v in vals)
    new_arrows = []
    for a, b in zip(vals, vals[1:]):
        if a == b:
            new_arrows.append(C.identities[objs[a]])
        else:
            h = arrows[a]
            for j in range(a + 1, b):
                h = C.comp(arrows[j], h)
            new_arrows.append(h)
    return new_objs, tuple(new_arrows)


def nerve_of_category(C: FiniteCategory, cap: int | None = None, name: str = ""):
    """``N C``: level ``m`` holds pairs ``(objects, arrows)`` of composable chains.

    Without non-identity cycles the nerve is finite-dimensional and a
    generator presentation is returned; otherwise ``cap`` is required and the
    result is a tabulation up to ``cap``.
    """
    longest = C.longest_nonidentity_chain()
    if longest is None and cap is None:
        raise ValueError("category has non-identity cycles; a cap is required")
    top = cap if cap is not None else longest
    T = TruncatedSimplicialSet(
        top,
        lambda m: _category_level(C, m),
        lambda x, op: _category_act(C, x, op),
        name=name,
        dim_bound=longest,
    )
    if longest is not None and (cap is None or cap >= longest):
        return regenerate(T, longest)
    return T
