"""Exact integer symmetric bilinear forms.

The second homology of every model 4-manifold in this package is carried
by a ``Lattice``: Z^rank with an integer Gram matrix.  Standard blocks
(the negative definite E8 form, the rank-2 pairs [[0,1],[1,-k]], and
diagonal +-1 summands) are glued with ``direct_sum`` and queried through
exact pairings, signature and determinant.  No floating point is used
anywhere: the signature comes from congruence diagonalization over the
rationals, the determinant from fraction-free (Bareiss) elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Lattice",
    "HClass",
    "e8_neg",
    "pair",
    "diag",
    "direct_sum",
    "pairing",
    "signature",
    "determinant",
    "basis_class",
]


def _freeze(rows: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class Lattice:
    """An integer symmetric bilinear form, given by its Gram matrix.

    Immutable after construction; instances are safe to share between
    threads and to reuse as dictionary keys.
    """

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "gram", _freeze(self.gram))
        n = len(self.gram)
        for row in self.gram:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)


@dataclass(frozen=True)
class HClass:
    """A homology class: an integer coefficient vector in a lattice basis."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "HClass") -> "HClass":
        return HClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __sub__(self, other: "HClass") -> "HClass":
        return HClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __neg__(self) -> "HClass":
        return HClass(tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "HClass":
        if not isinstance(k, int):
            return NotImplemented
        return HClass(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @staticmethod
    def zero(rank: int) -> "HClass":
        return HClass((0,) * rank)


# E8 Dynkin graph: a chain of seven nodes with an eighth node hanging off
# the trivalent one (arm lengths 1, 2, 4).
_E8_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7))


def e8_neg() -> Lattice:
    """The negative definite, even, unimodular rank-8 form -E8."""
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for i, j in _E8_EDGES:
        g[i][j] = g[j][i] = 1
    return Lattice(_freeze(g))


def pair(k: int) -> Lattice:
    """The rank-2 block [[0,1],[1,-k]], basis ordered (fiber, section)."""
    return Lattice(((0, 1), (1, -int(k))))


def diag(entries: Sequence[int]) -> Lattice:
    """Diagonal form with +-1 entries.

    Diag([1]) is the CP^2 form, Diag([-1]) the summand a blow-up adds.
    """
    entries = tuple(int(e) for e in entries)
    for e in entries:
        if e not in (1, -1):
            raise ValueError("diagonal blocks are restricted to +-1 entries")
    n = len(entries)
    g = [[0] * n for _ in range(n)]
    for i, e in enumerate(entries):
        g[i][i] = e
    return Lattice(_freeze(g))


def direct_sum(parts: Sequence[Lattice]) -> Lattice:
    """Block-diagonal sum; the empty sum is the rank-0 lattice."""
    rank = sum(p.rank for p in parts)
    g = [[0] * rank for _ in range(rank)]
    offset = 0
    for p in parts:
        r = p.rank
        for i in range(r):
            row = g[offset + i]
            prow = p.gram[i]
            for j in range(r):
                row[offset + j] = prow[j]
        offset += r
    return Lattice(_freeze(g))


def _vec(x: "HClass | Sequence[int]") -> tuple[int, ...]:
    if isinstance(x, HClass):
        return x.coeffs
    return tuple(int(c) for c in x)


def pairing(L: Lattice, x: "HClass | Sequence[int]", y: "HClass | Sequence[int]") -> int:
    """The intersection pairing x . y = x^T (gram) y, exactly."""
    a, b = _vec(x), _vec(y)
    if len(a) != L.rank or len(b) != L.rank:
        raise ValueError(
            f"class length mismatch: got {len(a)} and {len(b)}, lattice rank is {L.rank}"
        )
    total = 0
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        row = L.gram[i]
        total += ai * sum(row[j] * bj for j, bj in enumerate(b) if bj != 0)
    return total


def _components(gram) -> list[list[int]]:
    """Connected components of the nonzero off-diagonal pattern.

    The catalog lattices are direct sums of small blocks; working per
    component keeps the exact algorithms fast at large rank.
    """
    n = len(gram)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], [start]
        while stack:
            i = stack.pop()
            row = gram[i]
            for j in range(n):
                if not seen[j] and j != i and row[j] != 0:
                    seen[j] = True
                    stack.append(j)
                    comp.append(j)
        comps.append(sorted(comp))
    return comps


def _swap_symmetric(m: list[list[Fraction]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]
    for row in m:
        row[i], row[j] = row[j], row[i]


def signature(L: Lattice) -> tuple[int, int, int]:
    """Counts (b_plus, b_minus, b_zero) of diagonal signs after congruence
    diagonalization over the rationals.

    Exact: Sylvester's law makes the counts independent of the pivoting
    choices.  Block-diagonal forms are diagonalized per block.
    """
    comps = _components(L.gram)
    if len(comps) > 1:
        plus = minus = zero = 0
        for comp in comps:
            sub = Lattice(tuple(tuple(L.gram[i][j] for j in comp) for i in comp))
            p, m, z = signature(sub)
            plus, minus, zero = plus + p, minus + m, zero + z
        return (plus, minus, zero)
    n = L.rank
    m = [[Fraction(v) for v in row] for row in L.gram]
    plus = minus = zero = 0
    for i in range(n):
        if m[i][i] == 0:
            piv = next((j for j in range(i + 1, n) if m[j][j] != 0), None)
            if piv is not None:
                _swap_symmetric(m, i, piv)
            else:
                off = next((j for j in range(i + 1, n) if m[i][j] != 0), None)
                if off is None:
                    # row i is zero in the remaining block: radical direction
                    zero += 1
                    continue
                # transvection: add row/column `off` into i; m[i][i] becomes 2*m[i][off]
                for k in range(n):
                    m[i][k] += m[off][k]
                for k in range(n):
                    m[k][i] += m[k][off]
        d = m[i][i]
        for j in range(i + 1, n):
            if m[j][i]:
                f = m[j][i] / d
                for k in range(n):
                    m[j][k] -= f * m[i][k]
                for k in range(n):
                    m[k][j] -= f * m[k][i]
        if d > 0:
            plus += 1
        else:
            minus += 1
    return (plus, minus, zero)


def determinant(L: Lattice) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination,
    applied per diagonal block)."""
    n = L.rank
    if n == 0:
        return 1
    comps = _components(L.gram)
    if len(comps) > 1:
        total = 1
        for comp in comps:
            sub = Lattice(tuple(tuple(L.gram[i][j] for j in comp) for i in comp))
            total *= determinant(sub)
            if total == 0:
                return 0
        return total
    m = [list(row) for row in L.gram]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def basis_class(L: Lattice, index: int) -> HClass:
    """The index-th standard basis vector as a homology class."""
    if not 0 <= index < L.rank:
        raise ValueError(f"basis index {index} out of range for rank {L.rank}")
    return HClass(tuple(1 if i == index else 0 for i in range(L.rank)))
