"""Monotone maps between finite ordinals, stored as value lists.

An operator ``[m] -> [n]`` is a nondecreasing tuple of length ``m + 1`` with
entries in ``0..n``.  Simplicial operators act on simplices from the right, so
``x . (g o f) == (x . g) . f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterator

__all__ = [
    "Operator",
    "compose",
    "epi_mono_factorize",
    "enumerate_operators",
    "identity",
    "face",
    "degeneracy",
    "surjections",
    "injections",
    "constant",
]


@dataclass(frozen=True, slots=True)
class Operator:
    values: tuple[int, ...]
    cod: int

    def __post_init__(self) -> None:
        vals = self.values
        if not vals:
            raise ValueError("an operator needs a nonempty domain")
        prev = 0
        for v in vals:
            if v < prev or v > self.cod:
                raise ValueError(f"not a monotone map into [{self.cod}]: {vals}")
            prev = v

    @property
    def dom(self) -> int:
        return len(self.values) - 1

    def __call__(self, i: int) -> int:
        return self.values[i]

    def is_face(self) -> bool:
        v = self.values
        return all(a < b for a, b in zip(v, v[1:]))

    def is_degeneracy(self) -> bool:
        return self.values[-1] == self.cod and self.values[0] == 0 and all(
            b - a <= 1 for a, b in zip(self.values, self.values[1:])
        )

    def is_identity(self) -> bool:
        return self.dom == self.cod and self.is_face()

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.values)))

    def __repr__(self) -> str:
        return f"Op({list(self.values)}->[{self.cod}])"


def _op(values: tuple[int, ...], cod: int) -> Operator:
    # trusted constructor, skips validation on hot paths
    op = object.__new__(Operator)
    object.__setattr__(op, "values", values)
    object.__setattr__(op, "cod", cod)
    return op


def compose(g: Operator, f: Operator) -> Operator:
    """Return ``g o f`` (first ``f``, then ``g``)."""
    if f.cod != g.dom:
        raise ValueError(f"cannot compose {g} after {f}: dimension mismatch")
    gv = g.values
    return _op(tuple(gv[i] for i in f.values), g.cod)


@lru_cache(maxsize=None)
def identity(n: int) -> Operator:
    return _op(tuple(range(n + 1)), n)


@lru_cache(maxsize=None)
def face(n: int, i: int) -> Operator:
    """The coface ``delta_i: [n-1] -> [n]`` skipping ``i``."""
    if not 0 <= i <= n or n < 1:
        raise ValueError(f"no face delta_{i} into [{n}]")
    return _op(tuple(j for j in range(n + 1) if j != i), n)


@lru_cache(maxsize=None)
def degeneracy(n: int, i: int) -> Operator:
    """The codegeneracy ``sigma_i: [n+1] -> [n]`` hitting ``i`` twice."""
    if not 0 <= i <= n:
        raise ValueError(f"no degeneracy sigma_{i} onto [{n}]")
    return _op(tuple(j if j <= i else j - 1 for j in range(n + 2)), n)


@lru_cache(maxsize=None)
def constant(m: int, n: int, v: int) -> Operator:
    return Operator((v,) * (m + 1), n)


@lru_cache(maxsize=None)
def _factor(values: tuple[int, ...], cod: int) -> tuple[Operator, Operator]:
    img = sorted(set(values))
    pos = {v: k for k, v in enumerate(img)}
    k = len(img) - 1
    return _op(tuple(pos[v] for v in values), k), _op(tuple(img), cod)


def epi_mono_factorize(phi: Operator) -> tuple[Operator, Operator]:
    """Split ``phi`` as ``mono o epi``; returns ``(epi, mono)``."""
    return _factor(phi.values, phi.cod)


@lru_cache(maxsize=None)
def enumerate_operators(m: int, n: int) -> tuple[Operator, ...]:
    """All monotone maps ``[m] -> [n]`` in lexicographic order of value lists."""
    return tuple(
        _op(vals, n) for vals in combinations_with_replacement(range(n + 1), m + 1)
    )


@lru_cache(maxsize=None)
def surjections(m: int, k: int) -> tuple[Operator, ...]:
    """Degeneracy operators ``[m] ->> [k]``, lexicographic."""
    if k > m:
        return ()
    # a surjection is fixed by the positions (among 1..m) where the value steps up
    out = []
    for steps in combinations(range(1, m + 1), k):
        vals, cur, s = [], 0, set(steps)
        for j in range(m + 1):
            if j in s:
                cur += 1
            vals.append(cur)
        out.append(_op(tuple(vals), k))
    out.sort(key=lambda op: op.values)
    return tuple(out)


@lru_cache(maxsize=None)
def injections(k: int, n: int) -> tuple[Operator, ...]:
    """Face operators ``[k] >-> [n]``, lexicographic."""
    return tuple(_op(c, n) for c in combinations(range(n + 1), k + 1))


def missing_index(op: Operator) -> int:
    """Smallest value not hit by a non-surjective operator."""
    hit = set(op.values)
    for j in range(op.cod + 1):
        if j not in hit:
            return j
    raise ValueError(f"{op} is surjective")


def iter_composable(max_dim: int) -> Iterator[tuple[Operator, Operator]]:
    """Pairs ``(g, f)`` with ``g o f`` defined and all dimensions ``<= max_dim``."""
    for a in range(max_dim + 1):
        for b in range(max_dim + 1):
            for c in range(max_dim + 1):
                for f in enumerate_operators(a, b):
                    for g in enumerate_operators(b, c):
                        yield g, f
