"""Simplicial sets presented by generators, levelwise tabulations, and maps.

Two concrete representations share one small interface (``level``, ``act``):

* ``FgSimplicialSet`` stores nondegenerate generators with their faces; every
  simplex is a ``Simplex(op, gen)`` with ``op`` a degeneracy operator.
* ``TruncatedSimplicialSet`` stores levels ``0..cap`` and an action function.
  Anything infinite-dimensional (Ex, exponentials, dependent products) lands
  here.
"""

from __future__ import annotations

from typing import Any, Callable, Hashable, Iterable, Mapping, NamedTuple, Sequence

from .operators import (
    Operator,
    _factor,
    _op,
    degeneracy,
    face,
    identity,
    missing_index,
    surjections,
)

__all__ = [
    "canonical_name",
    "Simplex",
    "SimplicialSet",
    "FgSimplicialSet",
    "TruncatedSimplicialSet",
    "SimplicialMap",
    "CapExceeded",
    "PresentationError",
    "truncate",
    "regenerate",
    "skeleton",
    "normalize_simplex",
    "level_set",
    "act",
    "rename",
    "identity_map",
    "compose_maps",
    "gen_simplex",
    "top_dim",
    "is_isomorphism",
    "subobject",
]


class CapExceeded(ValueError):
    """A level above the tabulated range was requested."""


class PresentationError(ValueError):
    """A generator presentation violates the simplicial identities."""


class Simplex(NamedTuple):
    """Normal form ``gen . op`` with ``op`` a degeneracy onto ``dim(gen)``."""

    op: Operator
    gen: Hashable

    @property
    def dim(self) -> int:
        return self.op.dom

    def __repr__(self) -> str:
        if self.op.is_identity():
            return f"<{self.gen!r}>"
        return f"<{self.gen!r}.{list(self.op.values)}>"


def gen_simplex(gen: Hashable, k: int) -> Simplex:
    return Simplex(identity(k), gen)


class SimplicialSet:
    """Common interface.  ``cap`` is ``None`` when every level is available."""

    name: str = ""
    cap: int | None = None

    def level(self, n: int) -> tuple:
        raise NotImplementedError

    def act(self, x: Any, op: Operator) -> Any:
        raise NotImplementedError

    # shared helpers -------------------------------------------------------

    def _check_level(self, n: int) -> None:
        if n < 0:
            raise ValueError("negative level")
        if self.cap is not None and n > self.cap:
            raise CapExceeded(f"{self.name or 'object'}: level {n} exceeds cap {self.cap}")

    def index(self, n: int) -> dict:
        cache = self.__dict__.setdefault("_index_cache", {})
        if n not in cache:
            cache[n] = {x: j for j, x in enumerate(self.level(n))}
        return cache[n]

    def contains(self, x: Any, n: int) -> bool:
        return x in self.index(n)

    def sizes(self, upto: int) -> list[int]:
        return [len(self.level(n)) for n in range(upto + 1)]

    def faces_of(self, x: Any, n: int) -> tuple:
        if n == 0:
            return ()
        return tuple(self.act(x, face(n, i)) for i in range(n + 1))

    def face_index(self, k: int) -> dict:
        """Level ``k`` grouped by face tuple, for candidate lookup."""
        cache = self.__dict__.setdefault("_face_index_cache", {})
        if k not in cache:
            table: dict = {}
            for y in self.level(k):
                table.setdefault(self.faces_of(y, k), []).append(y)
            cache[k] = table
        return cache[k]

    def degeneracy_witness(self, x: Any, n: int) -> tuple[int, Any] | None:
        """``(i, y)`` with ``x = y . sigma_i`` if ``x`` is degenerate, else ``None``."""
        for i in range(n):
            y = self.act(x, face(n, i))
            if self.act(y, degeneracy(n - 1, i)) == x:
                return i, y
        return None

    def is_degenerate(self, x: Any, n: int) -> bool:
        return self.degeneracy_witness(x, n) is not None

    def nondegenerate(self, n: int) -> tuple:
        return tuple(x for x in self.level(n) if not self.is_degenerate(x, n))

    def normal_form(self, x: Any, n: int) -> Simplex:
        """Eilenberg-Zilber form ``Simplex(eta, y)`` with ``y`` nondegenerate."""
        op = identity(n)
        while True:
            w = self.degeneracy_witness(x, n)
            if w is None:
                return Simplex(op, x)
            i, x = w
            op = _op(tuple(degeneracy(n - 1, i).values[v] for v in op.values), n - 1)
            n -= 1


class FgSimplicialSet(SimplicialSet):
    """Finitely generated simplicial set.

    ``gens`` maps a generator name to ``(dim, faces)`` where ``faces`` lists
    ``d_0 .. d_k`` as ``Simplex`` values over earlier generators.  Insertion
    order fixes the enumeration order.
    """

    def __init__(
        self,
        gens: Mapping[Hashable, tuple[int, Sequence[Simplex]]] | Iterable,
        name: str = "",
        validate: bool = True,
    ) -> None:
        items = list(gens.items()) if isinstance(gens, Mapping) else list(gens)
        self.name = name
        self.cap = None
        self._dim: dict[Hashable, int] = {}
        self._faces: dict[Hashable, tuple[Simplex, ...]] = {}
        by_dim: dict[int, list] = {}
        for g, (k, fs) in items:
            if g in self._dim:
                raise PresentationError(f"duplicate generator {g!r}")
            self._dim[g] = k
            self._faces[g] = tuple(fs)
            by_dim.setdefault(k, []).append(g)
        self.dim = max(by_dim) if by_dim else -1
        self.generators: dict[int, tuple] = {
            k: tuple(by_dim.get(k, ())) for k in range(self.dim + 1)
        }
        self._face_nf: dict = {}
        self._levels: dict[int, tuple] = {}
        if validate:
            self.validate()

    # presentation ---------------------------------------------------------

    def gen_dim(self, g: Hashable) -> int:
        return self._dim[g]

    def gen_faces(self, g: Hashable) -> tuple[Simplex, ...]:
        return self._faces[g]

    def all_generators(self) -> list:
        return [g for k in range(self.dim + 1) for g in self.generators[k]]

    def gen_count(self) -> list[int]:
        return [len(self.generators[k]) for k in range(self.dim + 1)]

    def has_generator(self, g: Hashable) -> bool:
        return g in self._dim

    def validate(self) -> None:
        for g, k in self._dim.items():
            fs = self._faces[g]
            if k == 0:
                if fs:
                    raise PresentationError(f"vertex {g!r} must not have faces")
                continue
            if len(fs) != k + 1:
                raise PresentationError(f"generator {g!r} of dim {k} needs {k + 1} faces")
            for i, f in enumerate(fs):
                if f.gen not in self._dim:
                    raise PresentationError(f"d_{i}({g!r}) refers to unknown generator {f.gen!r}")
                if not f.op.is_degeneracy():
                    raise PresentationError(f"d_{i}({g!r}) operator {f.op} is not a degeneracy")
                if f.op.dom != k - 1 or f.op.cod != self._dim[f.gen]:
                    raise PresentationError(f"d_{i}({g!r}) has wrong dimensions")
        # d_i d_j = d_{j-1} d_i for i < j, one generator at a time in dim order
        for k in range(2, self.dim + 1):
            for g in self.generators[k]:
                fs = self._faces[g]
                for j in range(k + 1):
                    for i in range(j):
                        lhs = self.act(fs[j], face(k - 1, i))
                        rhs = self.act(fs[i], face(k - 1, j - 1))
                        if lhs != rhs:
                            raise PresentationError(
                                f"simplicial identity d_{i} d_{j} = d_{j - 1} d_{i} fails on "
                                f"generator {g!r}: {lhs!r} != {rhs!r}"
                            )
        for k in range(1, self.dim + 1):
            for g in self.generators[k]:
                if self.is_degenerate(gen_simplex(g, k), k):
                    raise PresentationError(f"generator {g!r} is degenerate")

    # simplicial structure -------------------------------------------------

    def level(self, n: int) -> tuple:
        self._check_level(n)
        lv = self._levels.get(n)
        if lv is None:
            out = []
            for k in range(min(n, self.dim) + 1):
                sj = surjections(n, k)
                for g in self.generators[k]:
                    out.extend(Simplex(eta, g) for eta in sj)
            lv = self._levels[n] = tuple(out)
        return lv

    def _gen_face(self, g: Hashable, vals: tuple[int, ...]) -> Simplex:
        key = (g, vals)
        hit = self._face_nf.get(key)
        if hit is not None:
            return hit
        k = self._dim[g]
        if len(vals) == k + 1:
            res = Simplex(identity(k), g)
        else:
            i = missing_index(_op(vals, k))
            rho = _op(tuple(v if v < i else v - 1 for v in vals), k - 1)
            res = self.act(self._faces[g][i], rho)
        self._face_nf[key] = res
        return res

    def act(self, x: Simplex, op: Operator) -> Simplex:
        eta, g = x
        if op.cod != eta.dom:
            raise ValueError(f"operator {op} does not apply to a {eta.dom}-simplex")
        ev = eta.values
        psi = tuple(ev[v] for v in op.values)
        epi, mono = _factor(psi, eta.cod)
        y = self._gen_face(g, mono.values)
        yv = y.op.values
        return Simplex(_op(tuple(yv[v] for v in epi.values), y.op.cod), y.gen)

    def normal_form(self, x: Any, n: int | None = None) -> Simplex:
        return normalize_simplex(self, x)

    def is_degenerate(self, x: Any, n: int | None = None) -> bool:
        if isinstance(x, Simplex) and x.op.is_degeneracy() and x.gen in self._dim:
            return not x.op.is_identity()
        return super().is_degenerate(x, n)

    def nondegenerate(self, n: int) -> tuple:
        if n > self.dim:
            return ()
        return tuple(gen_simplex(g, n) for g in self.generators[n])

    def __repr__(self) -> str:
        return f"FgSimplicialSet({self.name or '?'}, gens={self.gen_count()})"


class TruncatedSimplicialSet(SimplicialSet):
    """Levels ``0..cap`` with an action function.

    ``levels`` may be a callable ``n -> iterable`` (evaluated lazily and cached)
    or a sequence of level lists.  ``dim_bound`` records a proven bound on the
    dimension of nondegenerate simplices, when one is known.
    """

    def __init__(
        self,
        cap: int,
        levels: Callable[[int], Iterable] | Sequence[Iterable],
        action: Callable[[Any, Operator], Any],
        name: str = "",
        dim_bound: int | None = None,
    ) -> None:
        self.cap = cap
        self.name = name
        self._level_fn = levels if callable(levels) else (lambda n, _l=levels: _l[n])
        self._action = action
        self._levels: dict[int, tuple] = {}
        self._act_cache: dict = {}
        self.dim_bound = dim_bound

    def level(self, n: int) -> tuple:
        self._check_level(n)
        lv = self._levels.get(n)
        if lv is None:
            lv = self._levels[n] = tuple(self._level_fn(n))
        return lv

    def act(self, x: Any, op: Operator) -> Any:
        if op.dom > self.cap or op.cod > self.cap:
            raise CapExceeded(f"{self.name or 'object'}: operator {op} exceeds cap {self.cap}")
        key = (x, op.values, op.cod)
        hit = self._act_cache.get(key, _MISSING)
        if hit is _MISSING:
            hit = x if op.is_identity() else self._action(x, op)
            self._act_cache[key] = hit
        return hit

    def action_table(self) -> dict:
        """Materialise the full action table between levels ``<= cap``."""
        from .operators import enumerate_operators

        table = {}
        for m in range(self.cap + 1):
            for n in range(self.cap + 1):
                for op in enumerate_operators(m, n):
                    for x in self.level(n):
                        table[(x, op.values)] = self.act(x, op)
        return table

    def __repr__(self) -> str:
        return f"TruncatedSimplicialSet({self.name or '?'}, cap={self.cap})"


_MISSING = object()


class SimplicialMap:
    """A map of simplicial sets.

    From a finitely generated domain the map is stored as ``images`` on
    generators; otherwise it is a function on elements (``fn``).
    """

    def __init__(
        self,
        dom: SimplicialSet,
        cod: SimplicialSet,
        images: Mapping[Hashable, Any] | None = None,
        fn: Callable[[Any], Any] | None = None,
        name: str = "",
    ) -> None:
        self.dom = dom
        self.cod = cod
        self.name = name
        if isinstance(dom, FgSimplicialSet):
            if images is None:
                if fn is None:
                    raise ValueError("need images or fn")
                images = {g: fn(gen_simplex(g, dom.gen_dim(g))) for g in dom.all_generators()}
            self.images = dict(images)
            self._fn = None
        else:
            if fn is None:
                raise ValueError("maps out of a truncated object need fn")
            self.images = None
            self._fn = fn
        self._memo: dict = {}

    def __call__(self, x: Any) -> Any:
        if self.images is not None:
            img = self.images[x.gen]
            if x.op.is_identity():
                return img
            return self.cod.act(img, x.op)
        hit = self._memo.get(x, _MISSING)
        if hit is _MISSING:
            hit = self._memo[x] = self._fn(x)
        return hit

    def on_level(self, n: int) -> tuple:
        return tuple(self(x) for x in self.dom.level(n))

    def top_level(self) -> int:
        if isinstance(self.dom, FgSimplicialSet):
            return self.dom.dim
        return self.dom.cap

    def check(self, upto: int | None = None) -> None:
        """Raise ``ValueError`` unless the map is simplicial."""
        if self.images is not None:
            for g in self.dom.all_generators():
                k = self.dom.gen_dim(g)
                y = self.images[g]
                if not self.cod.contains(y, k):
                    raise ValueError(f"image of {g!r} is not a {k}-simplex of the codomain")
                for i, f in enumerate(self.dom.gen_faces(g)):
                    if self.cod.act(y, face(k, i)) != self(f):
                        raise ValueError(f"map does not commute with d_{i} on {g!r}")
            return
        top = self.dom.cap if upto is None else upto
        if self.cod.cap is not None:
            top = min(top, self.cod.cap)
        for n in range(top + 1):
            for x in self.dom.level(n):
                y = self(x)
                if not self.cod.contains(y, n):
                    raise ValueError(f"image of {x!r} is not an {n}-simplex of the codomain")
                for i in range(n + 1 if n else 0):
                    if self(self.dom.act(x, face(n, i))) != self.cod.act(y, face(n, i)):
                        raise ValueError(f"map does not commute with d_{i} at {x!r}")
                if n < top:
                    for i in range(n + 1):
                        s = degeneracy(n, i)
                        if self(self.dom.act(x, s)) != self.cod.act(y, s):
                            raise ValueError(f"map does not commute with s_{i} at {x!r}")

    def is_valid(self, upto: int | None = None) -> bool:
        try:
            self.check(upto)
        except ValueError:
            return False
        return True

    def same_as(self, other: "SimplicialMap", upto: int | None = None) -> bool:
        if self.images is not None and other.images is not None:
            return self.images == other.images
        top = self.top_level() if upto is None else upto
        return all(self.on_level(n) == other.on_level(n) for n in range(top + 1))

    def then(self, after: "SimplicialMap") -> "SimplicialMap":
        """``after o self``."""
        if self.images is not None:
            return SimplicialMap(
                self.dom, after.cod, {g: after(y) for g, y in self.images.items()}
            )
        return SimplicialMap(self.dom, after.cod, fn=lambda x: after(self(x)))

    def is_injective(self, upto: int) -> bool:
        return all(len(set(self.on_level(n))) == len(self.dom.level(n)) for n in range(upto + 1))

    def __repr__(self) -> str:
        return f"SimplicialMap({self.name or '?'}: {self.dom!r} -> {self.cod!r})"


def identity_map(X: SimplicialSet) -> SimplicialMap:
    if isinstance(X, FgSimplicialSet):
        return SimplicialMap(X, X, {g: gen_simplex(g, X.gen_dim(g)) for g in X.all_generators()})
    return SimplicialMap(X, X, fn=lambda x: x)


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """``g o f``."""
    return f.then(g)


def normalize_simplex(X: FgSimplicialSet, x: Any) -> Simplex:
    """Eilenberg-Zilber normal form of ``x`` in a finitely generated ``X``.

    ``x`` may be a generator name, or a pair ``(op, gen)`` with any operator.
    """
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], Operator):
        op, g = x
        if not X.has_generator(g):
            raise KeyError(f"dangling generator reference {g!r}")
        if op.cod != X.gen_dim(g):
            raise ValueError(f"operator {op} does not apply to generator {g!r}")
        return X.act(gen_simplex(g, op.cod), op)
    if X.has_generator(x):
        return gen_simplex(x, X.gen_dim(x))
    raise KeyError(f"dangling generator reference {x!r}")


def level_set(X: SimplicialSet, n: int) -> tuple:
    return X.level(n)


def act(X: SimplicialSet, x: Any, op: Operator) -> Any:
    return X.act(x, op)


def truncate(X: SimplicialSet, d: int, name: str | None = None) -> TruncatedSimplicialSet:
    bound = X.dim if isinstance(X, FgSimplicialSet) else getattr(X, "dim_bound", None)
    if X.cap is not None and d > X.cap:
        raise CapExceeded(f"cannot truncate at {d} above cap {X.cap}")
    return TruncatedSimplicialSet(
        d, X.level, X.act, name=name if name is not None else X.name, dim_bound=bound
    )


def skeleton(T: SimplicialSet, d: int, name: str | None = None) -> FgSimplicialSet:
    """The sub-simplicial set generated by simplices of dimension ``<= d``.

    Generator names are the elements of ``T`` themselves, so ``T.normal_form``
    output can be read directly as a ``Simplex`` of the result.
    """
    gens = {}
    for k in range(d + 1):
        for x in T.level(k):
            if T.is_degenerate(x, k):
                continue
            fs = tuple(
                SimplicialSet.normal_form(T, T.act(x, face(k, i)), k - 1) for i in range(k + 1)
            ) if k else ()
            gens[x] = (k, fs)
    return FgSimplicialSet(gens, name=T.name if name is None else name, validate=False)


def regenerate(T: SimplicialSet, bound: int | None = None) -> FgSimplicialSet:
    """Convert a tabulation to a generator presentation.

    Refused unless nondegenerate simplices above ``bound`` are known to be
    absent, i.e. ``bound`` is at least the object's recorded ``dim_bound``.
    """
    known = getattr(T, "dim_bound", None)
    if known is None:
        raise ValueError("no proven dimension bound; use skeleton() for a sub-object")
    if bound is None:
        bound = known
    if bound < known:
        raise ValueError(f"bound {bound} is below the proven dimension bound {known}")
    if T.cap is not None and bound > T.cap:
        raise CapExceeded("bound exceeds the tabulated range")
    return skeleton(T, bound)


def rename(X: FgSimplicialSet, f: Callable[[Hashable], Hashable], name: str | None = None):
    """Copy of ``X`` with generator ``g`` renamed to ``f(g)``; returns ``(Y, X->Y, Y->X)``."""
    new = {g: f(g) for g in X.all_generators()}
    if len(set(new.values())) != len(new):
        raise ValueError("renaming is not injective")
    gens = [
        (new[g], (X.gen_dim(g), tuple(Simplex(s.op, new[s.gen]) for s in X.gen_faces(g))))
        for g in X.all_generators()
    ]
    Y = FgSimplicialSet(gens, name=X.name if name is None else name, validate=False)
    there = SimplicialMap(X, Y, {g: gen_simplex(new[g], X.gen_dim(g)) for g in X.all_generators()})
    back = SimplicialMap(Y, X, {new[g]: gen_simplex(g, X.gen_dim(g)) for g in X.all_generators()})
    return Y, there, back


def top_dim(X: SimplicialSet) -> int:
    return X.dim if isinstance(X, FgSimplicialSet) else X.cap


def is_isomorphism(f: SimplicialMap, upto: int | None = None) -> bool:
    """Levelwise bijectivity up to ``upto`` (default: one above both top dimensions)."""
    if upto is None:
        upto = max(top_dim(f.dom), top_dim(f.cod), 0)
        if f.dom.cap is None and f.cod.cap is None:
            upto += 1
    for n in range(upto + 1):
        img = f.on_level(n)
        if len(set(img)) != len(img) or len(img) != len(f.cod.level(n)):
            return False
    return True


def subobject(X: FgSimplicialSet, keep: Iterable[Hashable], name: str = "") -> tuple[FgSimplicialSet, SimplicialMap]:
    """The sub-presentation on ``keep`` (closed under faces) and its inclusion."""
    keep = set(keep)
    gens = []
    for g in X.all_generators():
        if g in keep:
            for f in X.gen_faces(g):
                if f.gen not in keep:
                    raise ValueError(f"{g!r} has face {f.gen!r} outside the subobject")
            gens.append((g, (X.gen_dim(g), X.gen_faces(g))))
    S = FgSimplicialSet(gens, name=name, validate=False)
    return S, SimplicialMap(S, X, {g: gen_simplex(g, X.gen_dim(g)) for g in S.all_generators()})


def canonical_name(g: Hashable) -> str:
    """Deterministic string for a generator name."""
    if isinstance(g, str):
        return g
    if isinstance(g, bool) or g is None:
        return "true" if g is True else "false" if g is False else "null"
    if isinstance(g, int):
        return str(g)
    if isinstance(g, Simplex):
        inner = canonical_name(g.gen)
        if g.op.is_identity():
            return inner
        return f"{inner}.[{','.join(map(str, g.op.values))}]"
    if isinstance(g, tuple):
        return "(" + ",".join(canonical_name(x) for x in g) + ")"
    return repr(g)
