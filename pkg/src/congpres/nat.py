"""The naturals with successor, addition and multiplication.

Finite-index congruences of ``<N, suc>`` are the relations ``=_{a,k}``
(x = y, or both are ``>= a`` and agree mod ``k``).  Everything of finite
index is handled through the *lasso* ``{0, ..., a+k-1}``: the tail
``0..a-1`` followed by a cycle of length ``k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .algebra import (
    BoundExceeded,
    Congruence,
    FiniteAlgebra,
    Operation,
    PreorderRel,
    associated_congruence,
    enumerate_stable_preorders,
    is_compatible,
)
from .closure import NatUniverse, SetFamily, close, preimage_generators
from .upset import UpSet

DEFAULT_MAX_INDEX = 6


# --------------------------------------------------------------------------
# congruences =_{a,k}
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ArithCong:
    """``=_{a,k}``, or the identity relation when ``a`` is None."""

    a: int | None = None
    k: int = 1

    def __post_init__(self) -> None:
        if self.a is not None and (self.a < 0 or self.k < 1):
            raise ValueError(f"need a >= 0 and k >= 1, got a={self.a}, k={self.k}")

    @classmethod
    def identity(cls) -> ArithCong:
        return cls(None)

    @classmethod
    def pair(cls, a: int, k: int) -> ArithCong:
        return cls(a, k)

    @property
    def is_identity(self) -> bool:
        return self.a is None

    @property
    def index(self) -> float | int:
        return math.inf if self.a is None else self.a + self.k

    def relate(self, x: int, y: int) -> bool:
        if x == y:
            return True
        if self.a is None:
            return False
        return x >= self.a and y >= self.a and (x - y) % self.k == 0

    def project(self, x: int) -> int:
        if self.a is None:
            return x
        return lasso_project(x, self.a, self.k)

    def refines(self, other: ArithCong) -> bool:
        """Every class of ``self`` lies inside a class of ``other``."""
        if self.a is None:
            return True
        if other.a is None:
            return False
        return other.a <= self.a and self.k % other.k == 0

    def __str__(self) -> str:
        return "id" if self.a is None else f"≡_{{{self.a},{self.k}}}"


def arith_relate(c: ArithCong, x: int, y: int) -> bool:
    return c.relate(x, y)


def lasso_project(x: int, a: int, k: int) -> int:
    return x if x < a + k else a + (x - a) % k


def lasso_quotient(a: int, k: int, ops: Iterable[str] = ("suc", "add", "mul")) -> FiniteAlgebra:
    """The quotient of ``<N, suc, +, x>`` by ``=_{a,k}`` on ``{0, ..., a+k-1}``."""
    if a < 0 or k < 1:
        raise ValueError(f"need a >= 0 and k >= 1, got a={a}, k={k}")
    n = a + k
    built = []
    for name in ops:
        if name == "suc":
            built.append(Operation("suc", 1, tuple(lasso_project(x + 1, a, k) for x in range(n))))
        elif name == "add":
            built.append(Operation("add", 2, tuple(lasso_project(x + y, a, k) for x in range(n) for y in range(n))))
        elif name == "mul":
            built.append(Operation("mul", 2, tuple(lasso_project(x * y, a, k) for x in range(n) for y in range(n))))
        else:
            raise ValueError(f"unknown operation {name!r}")
    return FiniteAlgebra(n, tuple(built))


def _lasso_of_sequence(labels: list[int]) -> tuple[int, int]:
    """(a, k) of the first repetition in a lasso-shaped label sequence."""
    first: dict[int, int] = {}
    for x, b in enumerate(labels):
        if b in first:
            return first[b], x - first[b]
        first[b] = x
    raise AssertionError("label sequence never repeats")


def _pullback_base(c: Congruence, a: int, k: int) -> tuple[int, int]:
    """The ``(a', k')`` with ``=_{a',k'}`` equal to the pullback of ``c`` from the lasso ``(a, k)``."""
    seq = [c.block_of[lasso_project(x, a, k)] for x in range(a + k + 1)]
    return _lasso_of_sequence(seq)


# --------------------------------------------------------------------------
# syntactic congruence of an ultimately periodic set
# --------------------------------------------------------------------------

def syntactic_cong_up(L: UpSet) -> ArithCong:
    """Coarsest suc-congruence saturating ``L`` (minimization of its unary automaton)."""
    a, k = L.a, L.k
    n = a + k
    succ = [lasso_project(x + 1, a, k) for x in range(n)]
    labels = [int(x in L) for x in range(n)]
    count = len(set(labels))
    while True:
        sig = [(labels[x], labels[succ[x]]) for x in range(n)]
        ids: dict[tuple[int, int], int] = {}
        labels = [ids.setdefault(s, len(ids)) for s in sig]
        if len(ids) == count:
            break
        count = len(ids)
    # states of a minimal unary automaton are visited once each along the lasso
    a2, k2 = _lasso_of_sequence([labels[lasso_project(x, a, k)] for x in range(n + 1)])
    return ArithCong.pair(a2, k2)


def syntactic_cong_window(L: UpSet, N: int) -> list[int]:
    """Class labels of ``0..N-1`` under ``x ~ y iff x+t in L <=> y+t in L`` for every ``t``.

    Futures are compared on ``t < L.a + 2*L.k + N``, which is enough since
    beyond the threshold membership is periodic.
    """
    T = L.a + 2 * L.k + N
    sigs: dict[tuple[bool, ...], int] = {}
    return [sigs.setdefault(tuple((x + t) in L for t in range(T)), len(sigs)) for x in range(N)]


def is_saturated_up(L: UpSet, c: ArithCong) -> bool:
    if c.a is None:
        return True
    return L.saturated_for(c.a, c.k)


def latt_suc(L: UpSet, variant: str = "plain") -> SetFamily:
    """``Latt_suc(L)``; ``variant="bounded"`` adjoins the empty set and N."""
    kinds = {"plain": "lattice", "bounded": "bounded-lattice", "boolean": "boolean"}
    if variant not in kinds:
        raise ValueError(f"unknown variant {variant!r}")
    return close(preimage_generators("nat", L), NatUniverse(), kinds[variant])


# --------------------------------------------------------------------------
# finite-index stable preorders
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class NatStablePreorder:
    """The pullback of a stable preorder of the lasso ``(a, k)`` to N.

    Values are always stored in reduced form: ``base`` is the associated
    congruence of the pulled-back relation, so equal relations compare equal.
    """

    base: ArithCong
    quotient_rel: PreorderRel

    @classmethod
    def pullback(cls, a: int, k: int, rel: PreorderRel) -> NatStablePreorder:
        if rel.size != a + k:
            raise ValueError(f"relation on {rel.size} points does not fit the lasso ({a},{k})")
        a2, k2 = _pullback_base(associated_congruence(rel), a, k)
        rows = tuple(
            sum(1 << y for y in range(a2 + k2) if rel.related(lasso_project(x, a, k), lasso_project(y, a, k)))
            for x in range(a2 + k2)
        )
        return cls(ArithCong.pair(a2, k2), PreorderRel(rows))

    @property
    def index(self) -> int:
        return self.base.index  # type: ignore[return-value]

    def related(self, x: int, y: int) -> bool:
        return self.quotient_rel.related(self.base.project(x), self.base.project(y))

    def window(self, N: int) -> PreorderRel:
        return PreorderRel(tuple(sum(1 << y for y in range(N) if self.related(x, y)) for x in range(N)))

    def is_symmetric(self) -> bool:
        return self.quotient_rel.is_symmetric()

    def __str__(self) -> str:
        return f"pullback via {self.base}: " + " ".join(
            "".join("1" if v else "." for v in row) for row in self.quotient_rel.matrix()
        )


def _stable_preorders_of_lasso(a: int, k: int) -> list[PreorderRel]:
    return enumerate_stable_preorders(lasso_quotient(a, k, ("suc",)), bound=a + k)


def finite_index_stable_preorders(
    a_max: int, k_max: int, max_index: int = DEFAULT_MAX_INDEX
) -> list[NatStablePreorder]:
    """Every pullback of a suc-stable preorder through ``=_{a,k}``, ``a <= a_max``, ``k <= k_max``.

    Pairs with ``a + k > max_index`` are skipped; if that leaves out a pair
    that was asked for explicitly (``a_max + k_max <= max_index`` fails) a
    :class:`BoundExceeded` is raised, so the caller knows the family is partial.
    """
    if a_max + k_max > max_index:
        raise BoundExceeded(f"a_max + k_max = {a_max + k_max} exceeds max_index {max_index}")
    seen: dict[NatStablePreorder, None] = {}
    for a in range(a_max + 1):
        for k in range(1, k_max + 1):
            for rel in _stable_preorders_of_lasso(a, k):
                seen.setdefault(NatStablePreorder.pullback(a, k, rel), None)
    return sorted(seen, key=lambda p: (p.index, p.base.a, p.base.k, p.quotient_rel.rows))


def iter_lasso_pullbacks(max_index: int) -> Iterator[NatStablePreorder]:
    """Distinct pullbacks from every lasso with ``a + k <= max_index``."""
    seen: set[NatStablePreorder] = set()
    for n in range(1, max_index + 1):
        for k in range(1, n + 1):
            for rel in _stable_preorders_of_lasso(n - k, k):
                p = NatStablePreorder.pullback(n - k, k, rel)
                if p not in seen:
                    seen.add(p)
                    yield p


def is_suc_stable_window(p: PreorderRel) -> bool:
    N = p.size
    return all(p.related(x + 1, y + 1) for x, y in p.pairs() if x + 1 < N and y + 1 < N)


def truncate_preorder(p: PreorderRel, n: int, side: str = "up") -> NatStablePreorder:
    """Collapse everything from ``n`` on into one class placed above (``side="up"``) or below.

    ``up`` builds ``p | {(z, t) : t >= n}``, ``down`` builds
    ``p | {(z, t) : z >= n}``.  The result is a suc-stable preorder of index
    at most ``n + 1`` provided it is transitive; this holds when ``p`` is
    contained in the natural order (resp. its reverse), and it is checked on
    the window rather than assumed.
    """
    N = p.size
    if not 0 <= n < N:
        raise ValueError(f"need 0 <= n < window size {N}")
    if side not in ("up", "down"):
        raise ValueError(f"side must be 'up' or 'down', got {side!r}")
    if not (p.is_reflexive() and p.is_transitive() and is_suc_stable_window(p)):
        raise ValueError("p is not a suc-stable preorder on its window")
    if side == "up":
        raw = [[p.related(z, t) or t >= n for t in range(N)] for z in range(N)]
    else:
        raw = [[p.related(z, t) or z >= n for t in range(N)] for z in range(N)]
    if not PreorderRel.from_matrix(raw).is_transitive():
        raise ValueError(f"truncation at {n} is not transitive")
    rows = tuple(sum(1 << t for t in range(n + 1) if raw[z][t]) for z in range(n + 1))
    out = NatStablePreorder.pullback(n, 1, PreorderRel(rows))
    if out.window(N).rows != PreorderRel.from_matrix(raw).rows:
        raise ValueError(f"truncation at {n} is not transitive or not of index <= {n + 1}")
    if not is_compatible(out.quotient_rel, lasso_quotient(out.base.a, out.base.k, ("suc",)).op("suc").table):
        raise ValueError(f"truncation at {n} is not suc-stable")
    return out
