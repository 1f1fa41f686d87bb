"""Catalog of model complex surfaces.

Each ``AmbientSurface`` is a label, the homology lattice, the Poincare
dual of the first Chern class (c1 only ever enters through pairings),
the Euler characteristic, and a table of named classes: the line ``h``
in CP^2, the fiber/section pair ``f``, ``s`` of an elliptic fibration,
and exceptional spheres ``e1``, ``e2``, ...

The elliptic family E(n) carries the form

    n(-E8) (+) 2(n-1) [[0,1],[1,-2]] (+) [[0,1],[1,-n]],

with ``f`` and ``s`` the basis of the final block (so f.f = 0,
f.s = 1, s.s = -n) and c1 dual to (2-n) f.  For n >= 2 the middle
[[0,1],[1,-2]] blocks are addressable as ``f1``, ``s1``, ``f2``, ...;
their section-like generators are the square -2 sphere classes that the
totally-real sphere constructions ride on.  E(2) is K3.

Two integrity invariants hold for every surface built here and are
enforced at construction: the form is unimodular, and c1 is
characteristic (its pairing with any class x is congruent to x.x
mod 2).
"""

from __future__ import annotations

import dataclasses
import functools
import re
from dataclasses import dataclass
from typing import Mapping

from .lattice import (
    HClass,
    Lattice,
    basis_class,
    determinant,
    diag,
    direct_sum,
    e8_neg,
    pair,
    pairing,
)

__all__ = [
    "AmbientSurface",
    "Check",
    "ConsistencyReport",
    "cp2",
    "blow_up",
    "e",
    "k3",
    "fiber_sum_check",
    "by_name",
]


@dataclass(frozen=True)
class Check:
    """One named expected-vs-actual comparison inside a report."""

    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class AmbientSurface:
    label: str
    lattice: Lattice
    c1: HClass
    euler_char: int
    named: Mapping[str, HClass]

    def __post_init__(self) -> None:
        r = self.lattice.rank
        if len(self.c1) != r:
            raise ValueError(f"{self.label}: c1 has length {len(self.c1)}, rank is {r}")
        for name, h in self.named.items():
            if len(h) != r:
                raise ValueError(f"{self.label}: named class {name!r} has the wrong length")
        if abs(determinant(self.lattice)) != 1:
            raise ValueError(f"{self.label}: homology form must be unimodular")
        g = self.lattice.gram
        c = self.c1.coeffs
        for i in range(r):
            ci = sum(c[j] * g[j][i] for j in range(r) if c[j] != 0)
            if (ci - g[i][i]) % 2 != 0:
                raise ValueError(f"{self.label}: c1 is not characteristic at basis vector {i}")

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def pair(self, x, y) -> int:
        return pairing(self.lattice, x, y)

    def named_class(self, name: str) -> HClass:
        try:
            return self.named[name]
        except KeyError:
            raise ValueError(f"{self.label} has no named class {name!r}") from None


def cp2() -> AmbientSurface:
    """The projective plane: rank-1 form <1>, line class h, c1 = 3h."""
    lat = diag([1])
    h = basis_class(lat, 0)
    return AmbientSurface("CP2", lat, 3 * h, 3, {"h": h})


_BLOWN_LABEL = re.compile(r"^(?P<root>.*)#(?P<m>\d+)CP2bar$")


def blow_up(x: AmbientSurface) -> AmbientSurface:
    """Blow up once: add a <-1> summand with exceptional class e_{m+1},
    replace c1 by c1 - e_{m+1}, and raise the Euler characteristic by 1.
    """
    m = sum(1 for name in x.named if re.fullmatch(r"e\d+", name))
    new_name = f"e{m + 1}"
    lat = direct_sum([x.lattice, diag([-1])])
    ext = {name: HClass(h.coeffs + (0,)) for name, h in x.named.items()}
    exceptional = basis_class(lat, lat.rank - 1)
    ext[new_name] = exceptional
    c1 = HClass(x.c1.coeffs + (0,)) - exceptional
    match = _BLOWN_LABEL.match(x.label)
    if match:
        label = f"{match['root']}#{int(match['m']) + 1}CP2bar"
    else:
        label = f"{x.label}#1CP2bar"
    return AmbientSurface(label, lat, c1, x.euler_char + 1, ext)


@functools.lru_cache(maxsize=None)
def e(n: int) -> AmbientSurface:
    """The elliptic surface E(n), n >= 1.

    Cached: surfaces are immutable, so the same instance is shared.
    """
    if n < 1:
        raise ValueError(f"E(n) requires n >= 1, got {n}")
    parts = [e8_neg()] * n + [pair(2)] * (2 * (n - 1)) + [pair(n)]
    lat = direct_sum(parts)
    r = lat.rank  # 12n - 2
    named = {"f": basis_class(lat, r - 2), "s": basis_class(lat, r - 1)}
    for j in range(1, 2 * (n - 1) + 1):
        offset = 8 * n + 2 * (j - 1)
        named[f"f{j}"] = basis_class(lat, offset)
        named[f"s{j}"] = basis_class(lat, offset + 1)
    c1 = (2 - n) * named["f"]
    return AmbientSurface(f"E({n})", lat, c1, 12 * n, named)


def k3() -> AmbientSurface:
    """K3 = E(2); the form is 2(-E8) (+) 3 [[0,1],[1,-2]] and c1 = 0."""
    return dataclasses.replace(e(2), label="K3")


@dataclass(frozen=True)
class ConsistencyReport:
    label: str
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)


_EN_LABEL = re.compile(r"^E\((?P<n>\d+)\)$")


def _en_index(x: AmbientSurface) -> int:
    if x.label == "K3":
        return 2
    match = _EN_LABEL.match(x.label)
    if match:
        return int(match["n"])
    raise ValueError(f"fiber sums are only tabulated for catalog E(n) surfaces, got {x.label!r}")


def fiber_sum_check(a: AmbientSurface, b: AmbientSurface) -> ConsistencyReport:
    """Consistency of the fiber-sum bookkeeping E(j) #_f E(k) = E(j+k).

    The glued tori have Euler characteristic 0, so chi must be additive;
    removing the two fiber neighborhoods costs two homology classes, so
    ranks add up to rank(E(j+k)) - 2; and the fiber multiples of c1
    (2-j and 2-k) combine to 2-(j+k).  This is bookkeeping over the
    catalog, not a lattice-level gluing.
    """
    j, k = _en_index(a), _en_index(b)
    c = e(j + k)
    checks = (
        Check("euler characteristic adds", a.euler_char + b.euler_char, c.euler_char),
        Check("rank adds with two classes from the gluing", a.rank + b.rank + 2, c.rank),
        Check("fiber multiple of c1 adds", (2 - j) + (2 - k) - 2, 2 - (j + k)),
    )
    return ConsistencyReport(f"{a.label} #_f {b.label} = {c.label}", checks)


@functools.lru_cache(maxsize=None)
def by_name(name: str, blow_ups: int = 0) -> AmbientSurface:
    """Look up a catalog surface: ``cp2``, ``k3``, or ``e(n)``, with an
    optional number of blow-ups applied on top.

    Cached: repeated lookups share one immutable instance.
    """
    key = name.strip().lower()
    if key == "cp2":
        surface = cp2()
    elif key == "k3":
        surface = k3()
    else:
        match = re.fullmatch(r"e\((\d+)\)", key)
        if not match:
            raise ValueError(f"unknown ambient surface {name!r} (expected cp2, k3 or e(n))")
        surface = e(int(match[1]))
    if blow_ups < 0:
        raise ValueError("blow-up count must be nonnegative")
    for _ in range(blow_ups):
        surface = blow_up(surface)
    return surface
