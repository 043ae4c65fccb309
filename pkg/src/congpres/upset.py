"""Ultimately periodic subsets of the naturals.

An :class:`UpSet` is stored as ``(a, k, F, D)``: below the threshold ``a``
membership is read off the finite part ``F``; from ``a`` on, ``x`` is a member
iff ``(x - a) % k`` lies in the residue set ``D``.  Every value is kept in
canonical form (least period, then least threshold), so structural equality
is set equality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def up_normalize(F: Iterable[int], a: int, k: int, D: Iterable[int]) -> UpSet:
    """Canonical form of the set ``F`` below ``a`` joined with ``(a + D) + kN``."""
    if k < 1 or a < 0:
        raise ValueError(f"need a >= 0 and k >= 1, got a={a}, k={k}")
    F = frozenset(F)
    D = frozenset(D)
    if any(not 0 <= x < a for x in F):
        raise ValueError(f"finite part {sorted(F)} not inside [0, {a})")
    if any(not 0 <= r < k for r in D):
        raise ValueError(f"residues {sorted(D)} not inside [0, {k})")
    word = [r in D for r in range(k)]
    for d in _divisors(k):
        if all(word[i] == word[(i + d) % k] for i in range(k)):
            word = word[:d]
            k = d
            break
    # pull the threshold down while the element just below it fits the cycle
    while a > 0 and ((a - 1) in F) == word[-1]:
        a -= 1
        word = word[-1:] + word[:-1]
    F = frozenset(x for x in F if x < a)
    return UpSet(a, k, F, frozenset(i for i, b in enumerate(word) if b), _canonical=True)


@dataclass(frozen=True)
class UpSet:
    a: int
    k: int
    finite: frozenset[int]
    residues: frozenset[int]
    _canonical: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self._canonical:
            c = up_normalize(self.finite, self.a, self.k, self.residues)
            object.__setattr__(self, "a", c.a)
            object.__setattr__(self, "k", c.k)
            object.__setattr__(self, "finite", c.finite)
            object.__setattr__(self, "residues", c.residues)
            object.__setattr__(self, "_canonical", True)

    # -- constructors ------------------------------------------------------
    @classmethod
    def empty(cls) -> UpSet:
        return up_normalize((), 0, 1, ())

    @classmethod
    def naturals(cls) -> UpSet:
        return up_normalize((), 0, 1, (0,))

    @classmethod
    def of_finite(cls, elems: Iterable[int]) -> UpSet:
        elems = frozenset(elems)
        if any(x < 0 for x in elems):
            raise ValueError("negative element")
        a = max(elems, default=-1) + 1
        return up_normalize(elems, a, 1, ())

    @classmethod
    def progression(cls, q: int, r: int) -> UpSet:
        """``q + rN``; ``r = 0`` gives the singleton ``{q}``."""
        if r == 0:
            return cls.of_finite((q,))
        return up_normalize((), q, r, (0,))

    @classmethod
    def final_segment(cls, a: int) -> UpSet:
        return up_normalize((), a, 1, (0,))

    @classmethod
    def from_predicate(cls, member: Callable[[int], bool], a: int, k: int) -> UpSet:
        """The set agreeing with ``member`` below ``a + k`` and periodic from ``a``."""
        return up_normalize(
            (x for x in range(a) if member(x)), a, k, (r for r in range(k) if member(a + r))
        )

    # -- queries -----------------------------------------------------------
    def __contains__(self, x: int) -> bool:
        if x < 0:
            return False
        if x < self.a:
            return x in self.finite
        return (x - self.a) % self.k in self.residues

    def window(self, N: int) -> tuple[bool, ...]:
        return tuple(x in self for x in range(N))

    def is_finite(self) -> bool:
        return not self.residues

    def is_cofinite(self) -> bool:
        return len(self.residues) == self.k

    def elements_below(self, N: int) -> list[int]:
        return [x for x in range(N) if x in self]

    def quadruple(self) -> tuple[tuple[int, ...], int, int, tuple[int, ...]]:
        return tuple(sorted(self.finite)), self.a, self.k, tuple(sorted(self.residues))

    def saturated_for(self, a: int, k: int) -> bool:
        """True iff the set is a union of classes of the congruence ``=_{a,k}``."""
        return self.a <= a and k % self.k == 0

    # -- boolean algebra ---------------------------------------------------
    def _combine(self, other: UpSet, op: Callable[[bool, bool], bool]) -> UpSet:
        a = max(self.a, other.a)
        k = math.lcm(self.k, other.k)
        return UpSet.from_predicate(lambda x: op(x in self, x in other), a, k)

    def union(self, other: UpSet) -> UpSet:
        return self._combine(other, lambda p, q: p or q)

    def intersection(self, other: UpSet) -> UpSet:
        return self._combine(other, lambda p, q: p and q)

    def difference(self, other: UpSet) -> UpSet:
        return self._combine(other, lambda p, q: p and not q)

    def complement(self) -> UpSet:
        return up_normalize(
            (x for x in range(self.a) if x not in self.finite),
            self.a,
            self.k,
            (r for r in range(self.k) if r not in self.residues),
        )

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __invert__ = complement

    # -- preimages ---------------------------------------------------------
    def suc_preimage(self, t: int = 1) -> UpSet:
        """``{x | x + t in L}``."""
        if t < 0:
            raise ValueError("t must be non-negative")
        a = max(0, self.a - t)
        return UpSet.from_predicate(lambda x: x + t in self, a, self.k)

    def affine_preimage(self, n: int, m: int) -> UpSet:
        """``{y | n*y + m in L}`` for ``n >= 1``."""
        if n < 1 or m < 0:
            raise ValueError("need n >= 1 and m >= 0")
        a = -(-max(0, self.a - m) // n)
        return UpSet.from_predicate(lambda y: n * y + m in self, a, self.k)

    def __str__(self) -> str:
        return format_upset(self)

    def __repr__(self) -> str:
        return f"UpSet({format_upset(self)})"


def up_union(x: UpSet, y: UpSet) -> UpSet:
    return x.union(y)


def up_intersect(x: UpSet, y: UpSet) -> UpSet:
    return x.intersection(y)


def up_complement(x: UpSet) -> UpSet:
    return x.complement()


def suc_preimage(L: UpSet, t: int) -> UpSet:
    return L.suc_preimage(t)


def affine_preimage(L: UpSet, n: int, m: int) -> UpSet:
    return L.affine_preimage(n, m)


def _braces(xs: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(xs))) + "}"


def format_upset(L: UpSet) -> str:
    """The canonical text form, e.g. ``up(a=3,k=3,F={},D={2})``."""
    return f"up(a={L.a},k={L.k},F={_braces(L.finite)},D={_braces(L.residues)})"


def describe_upset(L: UpSet) -> str:
    """A human-readable rendering such as ``{1} | 3+N`` or ``5+3N``."""
    if L.is_finite():
        return _braces(L.finite)
    parts = []
    if L.finite:
        parts.append(_braces(L.finite))
    if L.k == 1:
        parts.append("N" if L.a == 0 else f"{L.a}+N")
    else:
        for r in sorted(L.residues):
            parts.append(f"{L.a + r}+{L.k}N")
    return " | ".join(parts)
