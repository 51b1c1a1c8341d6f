"""Barycentric subdivision, the last-vertex map, Ex and its tower, and the
explicit horn filler for Ex^infinity."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Hashable, Sequence

from .core.constructions import Colimit, RepresentedHomSet, finite_colimit
from .core.nerves import (
    Poset,
    horn,
    nerve_of_poset,
    poset_map_on_nerves,
    sequence_to_simplex,
    standard_simplex,
)
from .core.operators import Operator, face
from .core.simplicial import (
    CapExceeded,
    FgSimplicialSet,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    gen_simplex,
    rename,
    truncate,
)

__all__ = [
    "SdPoset",
    "sd_poset",
    "sd_simplex",
    "sd_operator",
    "mu_simplex",
    "Subdivision",
    "subdivide",
    "subdivide_map",
    "last_vertex_map",
    "ExSet",
    "ex",
    "ex_unit",
    "ExTower",
    "ex_tower",
    "sd_ex_transpose",
    "ex_sd_transpose",
    "horn_faces_poset",
    "HornRetraction",
    "horn_retraction_phi",
    "ex_infty_horn_filler",
]


class SdPoset(Poset):
    """Nonempty chains of ``base`` ordered by inclusion, each stored increasingly."""

    def __init__(self, base: Poset) -> None:
        chains = sorted(base.chains(), key=lambda c: (len(c), [base.position(a) for a in c]))
        super().__init__(chains, lambda a, b: set(a) <= set(b))
        self.base = base

    @staticmethod
    def max(chain: tuple) -> Any:
        return chain[-1]


def sd_poset(P: Poset) -> SdPoset:
    return SdPoset(P)


@lru_cache(maxsize=None)
def _sd_ordinal(m: int) -> SdPoset:
    return SdPoset(Poset.ordinal(m))


@lru_cache(maxsize=None)
def sd_simplex(m: int) -> FgSimplicialSet:
    """``Sd Delta^m`` as the nerve of ``sd[m]``."""
    return nerve_of_poset(_sd_ordinal(m), name=f"Sd Delta^{m}")


@lru_cache(maxsize=None)
def _sd_operator(vals: tuple[int, ...], n: int) -> SimplicialMap:
    m = len(vals) - 1
    return poset_map_on_nerves(
        sd_simplex(m), sd_simplex(n), lambda A: tuple(sorted({vals[a] for a in A}))
    )


def sd_operator(op: Operator) -> SimplicialMap:
    """``Sd op: Sd Delta^m -> Sd Delta^n``, taking a subset to its image."""
    return _sd_operator(op.values, op.cod)


@lru_cache(maxsize=None)
def mu_simplex(m: int) -> SimplicialMap:
    """The last-vertex map ``Sd Delta^m -> Delta^m``."""
    return poset_map_on_nerves(sd_simplex(m), standard_simplex(m), SdPoset.max)


# subdivision of a general generator presentation ------------------------------


@dataclass
class Subdivision:
    """``Sd X`` as a colimit of copies of ``Sd Delta^k``, one per generator.

    Generators of ``obj`` are named ``(g, chain)`` where ``chain`` is a
    nondegenerate simplex of ``Sd Delta^{dim g}`` carried by ``g``.
    """

    base: FgSimplicialSet
    obj: FgSimplicialSet
    colimit: Colimit
    pieces: list
    to_named: SimplicialMap
    glue: list

    def leg(self, g: Hashable) -> SimplicialMap:
        """``Sd Delta^{dim g} -> Sd X`` for the generator ``g``."""
        j = self.pieces.index(g)
        return self.colimit.legs[j].then(self.to_named)

    def induced(self, piece_maps: dict, check: bool = True) -> SimplicialMap:
        """Map out of ``Sd X`` from maps ``Sd Delta^{dim g} -> Z`` per generator."""
        maps = [piece_maps[g] for g in self.pieces]
        for (g, i) in self.glue:
            k = self.base.gen_dim(g)
            maps.append(sd_operator(face(k, i)).then(piece_maps[g]))
        raw = self.colimit.induced(maps, check=check)
        return SimplicialMap(
            self.obj,
            raw.cod,
            {self._named[r]: y for r, y in raw.images.items()},
        )


def subdivide(X: FgSimplicialSet) -> Subdivision:
    """``Sd X`` by gluing subdivided simplices along subdivided face relations.

    A face ``d_i g = g' . eta`` identifies ``Sd d_i`` of the piece of ``g``
    with ``Sd eta`` followed by the piece of ``g'``; degenerate faces are
    handled by the same rule since ``Sd eta`` is again a nerve map.
    """
    pieces = X.all_generators()
    objects: list = [sd_simplex(X.gen_dim(g)) for g in pieces]
    pos = {g: j for j, g in enumerate(pieces)}
    arrows = []
    glue = []
    for g in pieces:
        k = X.gen_dim(g)
        for i, f in enumerate(X.gen_faces(g)):
            q = len(objects)
            objects.append(sd_simplex(k - 1))
            glue.append((g, i))
            arrows.append((q, pos[g], sd_operator(face(k, i))))
            arrows.append((q, pos[f.gen], sd_operator(f.op)))
    C = finite_colimit(objects, arrows, name=f"Sd {X.name}")

    def nice(r):
        j, x = r
        return (pieces[j], x.gen)

    named, there, _back = rename(C.obj, nice, name=f"Sd {X.name}")
    S = Subdivision(X, named, C, pieces, there, glue)
    S._named = {r: nice(r) for r in C.obj.all_generators()}
    return S


def subdivide_map(f: SimplicialMap, SX: Subdivision | None = None, SY: Subdivision | None = None) -> SimplicialMap:
    """``Sd f`` for a map between finitely generated objects."""
    SX = SX or subdivide(f.dom)
    SY = SY or subdivide(f.cod)
    piece_maps = {}
    for g in SX.pieces:
        y = f.images[g]
        piece_maps[g] = sd_operator(y.op).then(SY.leg(y.gen))
    return SX.induced(piece_maps)


def last_vertex_map(X: FgSimplicialSet, SX: Subdivision | None = None) -> SimplicialMap:
    """``mu_X: Sd X -> X``."""
    SX = SX or subdivide(X)
    piece_maps = {}
    for g in SX.pieces:
        k = X.gen_dim(g)
        top = gen_simplex(g, k)
        piece_maps[g] = SimplicialMap(
            sd_simplex(k),
            X,
            {
                ch: X.act(top, Operator(tuple(c[-1] for c in ch), k))
                for ch in sd_simplex(k).all_generators()
            },
        )
    return SX.induced(piece_maps)


# Ex --------------------------------------------------------------------------------


class ExSet(RepresentedHomSet):
    """``(Ex X)_m = hom(Sd Delta^m, X)`` up to a cap."""

    def __init__(self, X: SimplicialSet, cap: int, name: str = "") -> None:
        if X.cap is not None and X.cap < cap:
            raise CapExceeded(f"Ex up to {cap} needs the input tabulated to {cap}")
        super().__init__(
            cap,
            sd_simplex,
            sd_operator,
            X,
            name=name or f"Ex({X.name})",
        )
        self.base = X

    def at_sequence(self, e: tuple, m: int, seq: Sequence[tuple]) -> Any:
        """Value of ``e`` on a nondecreasing sequence of subsets of ``[m]``."""
        return self.evaluate(e, m, sequence_to_simplex(tuple(seq)))


def ex(X: SimplicialSet, cap: int) -> ExSet:
    if isinstance(X, FgSimplicialSet):
        X = truncate(X, cap)
    return ExSet(X, cap)


def _unit_element(X: SimplicialSet, x: Any, m: int) -> tuple:
    return tuple(
        X.act(x, Operator(tuple(c[-1] for c in ch), m)) for ch in sd_simplex(m).all_generators()
    )


def ex_unit(X: SimplicialSet, cap: int, target: ExSet | None = None) -> SimplicialMap:
    """``nu_X: X -> Ex X`` sending ``x`` to ``x o mu``."""
    src = truncate(X, cap) if isinstance(X, FgSimplicialSet) else X
    E = target if target is not None else ExSet(src, cap)
    def level_of(x):
        if isinstance(x, Simplex):
            return x.dim
        for n in range(cap + 1):
            if src.contains(x, n):
                return n
        raise ValueError(f"{x!r} is not in the tabulated range")

    return SimplicialMap(src, E, fn=lambda x: _unit_element(src, x, level_of(x)))


@dataclass
class ExTower:
    base: FgSimplicialSet
    cap: int
    iterations: int
    stages: list
    units: list

    def unit_complement(self, j: int, n: int) -> tuple:
        """Simplices of stage ``j+1`` at level ``n`` outside the image of ``nu``."""
        img = set(self.units[j].on_level(n))
        return tuple(e for e in self.stages[j + 1].level(n) if e not in img)

    def unit_injective(self, j: int, n: int) -> bool:
        lv = self.units[j].on_level(n)
        return len(set(lv)) == len(lv)

    def first_stage(self, e: Any, j: int, n: int) -> int:
        """Smallest stage ``i <= j`` whose iterated unit hits ``e`` (stage ``j``, level ``n``)."""
        cur = {e}
        best = j
        for i in range(j - 1, -1, -1):
            pre = {x for x in self.stages[i].level(n) if self.units[i](x) in cur}
            if not pre:
                break
            best, cur = i, pre
        return best


def ex_tower(X: FgSimplicialSet, k: int, cap: int) -> ExTower:
    stages: list = [truncate(X, cap, name=f"{X.name}")]
    units = []
    for j in range(k):
        nxt = ExSet(stages[-1], cap, name=f"Ex^{j + 1}({X.name})")
        units.append(ex_unit(stages[-1], cap, target=nxt))
        stages.append(nxt)
    return ExTower(X, cap, k, stages, units)


# Sd -| Ex transposition ---------------------------------------------------------


def sd_ex_transpose(G: SimplicialMap, SA: Subdivision, E: ExSet) -> SimplicialMap:
    """``hom(Sd A, X) -> hom(A, Ex X)``."""
    A = SA.base
    imgs = {}
    for g in A.all_generators():
        k = A.gen_dim(g)
        leg = SA.leg(g)
        imgs[g] = tuple(G(leg.images[ch]) for ch in sd_simplex(k).all_generators())
    return SimplicialMap(A, E, imgs)


def ex_sd_transpose(F: SimplicialMap, SA: Subdivision) -> SimplicialMap:
    """``hom(A, Ex X) -> hom(Sd A, X)``."""
    E = F.cod
    A = SA.base
    piece_maps = {g: E.as_map(F.images[g], A.gen_dim(g)) for g in A.all_generators()}
    return SA.induced(piece_maps, check=False)


# the horn retraction ------------------------------------------------------------


def horn_faces_poset(m: int, i: int) -> Poset:
    """Faces of ``Lambda^{m,i}`` ordered by inclusion: the poset ``sd Lambda``."""
    H = horn(m, i)
    return Poset(H.all_generators(), lambda a, b: set(a) <= set(b))


def _mu_prime(A: tuple, m: int, i: int) -> int:
    full = tuple(range(m + 1))
    if A == full or A == tuple(v for v in full if v != i):
        return i
    return A[-1]


@dataclass
class HornRetraction:
    m: int
    i: int
    phi: SimplicialMap
    sd2: FgSimplicialSet
    checked: bool

    def on_chain(self, chain: Sequence[tuple]) -> tuple:
        return tuple(sorted({_mu_prime(A, self.m, self.i) for A in chain}))


@lru_cache(maxsize=None)
def _sd2(m: int) -> tuple[SdPoset, FgSimplicialSet]:
    P = SdPoset(_sd_ordinal(m))
    return P, nerve_of_poset(P, name=f"Sd^2 Delta^{m}")


def horn_retraction_phi(m: int, i: int, verify: bool | None = None) -> HornRetraction:
    """The poset map ``sd^2[m] -> sd[m]``, chain ``A_0 < .. < A_p`` to ``{mu'(A_j)}``.

    For ``m <= 3`` two facts are checked when the map is built: the image
    avoids ``[m]`` and the face opposite ``i``, and on ``Sd^2`` of the horn the
    map agrees with ``Sd`` of the horn's last-vertex map.
    """
    if m < 1 or not 0 <= i <= m:
        raise ValueError(f"no horn Lambda^{m},{i}")
    _P, N2 = _sd2(m)
    f = lambda ch: tuple(sorted({_mu_prime(A, m, i) for A in ch}))
    phi = poset_map_on_nerves(N2, sd_simplex(m), f)
    if verify is None:
        verify = m <= 3
    R = HornRetraction(m, i, phi, N2, False)
    if verify:
        _verify_phi(R)
        R.checked = True
    return R


def _verify_phi(R: HornRetraction) -> None:
    m, i = R.m, R.i
    full = tuple(range(m + 1))
    opposite = tuple(v for v in full if v != i)
    for ch in R.sd2.generators[0]:
        img = R.on_chain(ch[0])
        if img in (full, opposite):
            raise AssertionError(f"phi sends {ch[0]} outside the subdivided horn")
    # Sd of the horn's last-vertex map, through the general subdivision route
    H = horn(m, i)
    SdH_poset = horn_faces_poset(m, i)
    SdH = nerve_of_poset(SdH_poset, name=f"Sd Lambda^{m},{i}")
    muH = poset_map_on_nerves(SdH, H, lambda A: A[-1])
    S2 = subdivide(SdH)
    S1 = subdivide(H)
    sd_mu = subdivide_map(muH, S2, S1)
    # compare S1 (general Sd of the horn) with N sd[m] via the carrier map
    carrier = S1.induced(
        {
            g: poset_map_on_nerves(
                sd_simplex(H.gen_dim(g)), sd_simplex(m), lambda B, g=g: tuple(g[b] for b in B)
            )
            for g in S1.pieces
        }
    )
    # and S2 with the nerve of chains of horn faces, inside N sd^2[m]
    carrier2 = S2.induced(
        {
            c: poset_map_on_nerves(
                sd_simplex(len(c) - 1), R.sd2, lambda B, c=c: tuple(c[b] for b in B)
            )
            for c in S2.pieces
        }
    )
    _check_carrier(carrier, S1.obj)
    _check_carrier(carrier2, S2.obj)
    for g in S2.obj.all_generators():
        lhs = R.phi(carrier2.images[g])
        rhs = carrier(sd_mu.images[g])
        if lhs != rhs:
            raise AssertionError(f"phi does not restrict to Sd mu on {g!r}")


def _check_carrier(c: SimplicialMap, X: FgSimplicialSet) -> None:
    seen = set()
    for g in X.all_generators():
        y = c.images[g]
        if not y.op.is_identity() or y.gen in seen:
            raise AssertionError("carrier map is not injective on nondegenerate simplices")
        seen.add(y.gen)


def ex_infty_horn_filler(T: ExTower, k: int, x: SimplicialMap, m: int, i: int) -> tuple:
    """Fill ``nu o x`` for a horn ``x: Lambda^{m,i} -> Ex^k X``.

    Returns an ``m``-simplex of stage ``k + 1`` restricting to ``nu(x(d_j))``
    on every face ``j != i``.  The simplex is the double transpose of
    ``x~ o phi`` where ``x~: Sd Lambda -> Ex^{k-1} X`` transposes ``x``.
    """
    if k < 1 or k >= len(T.stages) - 1:
        raise ValueError("need 1 <= k < number of tower iterations")
    if m > T.cap:
        raise CapExceeded(f"horn dimension {m} exceeds the tower cap {T.cap}")
    Ek: ExSet = T.stages[k]
    R = horn_retraction_phi(m, i, verify=False)

    def x_tilde(seq: Sequence[tuple]) -> Any:
        # seq: nondecreasing horn faces; evaluate x(top face) on the re-indexed chain
        top = seq[-1]
        t = len(top) - 1
        where = {v: j for j, v in enumerate(top)}
        e = x.images[top]
        return Ek.at_sequence(e, t, [tuple(where[v] for v in S) for S in seq])

    def G(seq2: Sequence[tuple]) -> Any:
        # seq2: nondecreasing sequence in sd^2[m]
        return x_tilde([R.on_chain(c) for c in seq2])

    out = []
    for c in sd_simplex(m).all_generators():
        p = len(c) - 1
        out.append(
            tuple(
                G([tuple(c[b] for b in B) for B in ch])
                for ch in sd_simplex(p).all_generators()
            )
        )
    return tuple(out)
