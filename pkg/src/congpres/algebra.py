"""Finite algebras given by total operation tables.

Carriers are ``{0, ..., n-1}``.  An operation of arity ``r`` is a flat table of
``n**r`` entries in row-major order (last argument varies fastest).

Relations come in two shapes:

* :class:`Congruence` -- an equivalence given as a block labelling;
* :class:`PreorderRel` -- a relation stored as one bit row per element,
  bit ``y`` of ``rows[x]`` being set iff ``x <= y``.

Subsets of the carrier are plain ``int`` bitmasks (bit ``x`` set iff ``x``
belongs to the set).
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

DEFAULT_CONGRUENCE_BOUND = 6
DEFAULT_PREORDER_BOUND = 4
# composition chains longer than this are elided in provenance strings
PROVENANCE_DEPTH = 8


class BoundExceeded(ValueError):
    """An exact enumeration was requested beyond its configured size bound."""


class ArityError(ValueError):
    pass


class IncompatibleRelation(ValueError):
    pass


# --------------------------------------------------------------------------
# algebras and unary maps
# --------------------------------------------------------------------------

def table_index(args: Sequence[int], n: int) -> int:
    idx = 0
    for a in args:
        idx = idx * n + a
    return idx


@dataclass(frozen=True)
class Operation:
    name: str
    arity: int
    table: tuple[int, ...]

    def __call__(self, *args: int) -> int:
        if len(args) != self.arity:
            raise ArityError(f"{self.name} expects {self.arity} arguments, got {len(args)}")
        if self.arity == 0:
            return self.table[0]
        n = _carrier_from_table(len(self.table), self.arity)
        return self.table[table_index(args, n)]


def _carrier_from_table(length: int, arity: int) -> int:
    n = round(length ** (1.0 / arity))
    for cand in (n - 1, n, n + 1):
        if cand > 0 and cand**arity == length:
            return cand
    raise ArityError(f"table of length {length} is not n**{arity} for any n")


@dataclass(frozen=True)
class FiniteAlgebra:
    size: int
    operations: tuple[Operation, ...] = ()

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("carrier must be non-empty")
        names = [op.name for op in self.operations]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate operation names in {names}")
        for op in self.operations:
            if op.arity < 0:
                raise ArityError(f"{op.name}: negative arity")
            if len(op.table) != self.size**op.arity:
                raise ArityError(
                    f"{op.name}: table has {len(op.table)} entries, "
                    f"expected {self.size}**{op.arity} = {self.size**op.arity}"
                )
            bad = [v for v in op.table if not 0 <= v < self.size]
            if bad:
                raise ValueError(f"{op.name}: entry {bad[0]} outside carrier [0, {self.size})")

    @classmethod
    def build(cls, size: int, ops: Iterable[tuple[str, int, Sequence[int]]] = ()) -> FiniteAlgebra:
        return cls(size, tuple(Operation(name, arity, tuple(table)) for name, arity, table in ops))

    def op(self, name: str) -> Operation:
        for op in self.operations:
            if op.name == name:
                return op
        raise KeyError(name)

    def restrict(self, names: Iterable[str]) -> FiniteAlgebra:
        keep = set(names)
        return FiniteAlgebra(self.size, tuple(op for op in self.operations if op.name in keep))

    def elements(self) -> range:
        return range(self.size)


@dataclass(frozen=True)
class UnaryMap:
    """A unary map on the carrier, with a record of where it came from."""

    image: tuple[int, ...]
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __len__(self) -> int:
        return len(self.image)

    def after(self, other: UnaryMap) -> UnaryMap:
        """``self o other``."""
        img = tuple(self.image[v] for v in other.image)
        return UnaryMap(img, (_compose_tag(self.label, other.label),))

    @property
    def label(self) -> str:
        return self.provenance[0] if self.provenance else "?"

    def preimage(self, mask: int) -> int:
        out = 0
        for x, v in enumerate(self.image):
            if mask >> v & 1:
                out |= 1 << x
        return out

    @classmethod
    def identity(cls, n: int) -> UnaryMap:
        return cls(tuple(range(n)), ("id",))


def _compose_tag(outer: str, inner: str) -> str:
    if inner == "id":
        return outer
    parts = inner.split(" o ")
    if len(parts) >= PROVENANCE_DEPTH:
        return f"{outer} o ..."
    return f"{outer} o {inner}"


def freezifications_of(table: Sequence[int], arity: int, n: int, name: str = "f") -> list[UnaryMap]:
    """All 1-freezifications ``f[i, c](x) = f(c_1, .., x, .., c_r)`` of one table."""
    if len(table) != n**arity:
        raise ArityError(f"{name}: table length {len(table)} != {n}**{arity}")
    if arity == 0:
        return []
    if arity == 1:
        return [UnaryMap(tuple(table), (name,))]
    found: dict[tuple[int, ...], list[str]] = {}
    for i in range(arity):
        for frozen in itertools.product(range(n), repeat=arity - 1):
            image = []
            for x in range(n):
                args = frozen[:i] + (x,) + frozen[i:]
                image.append(table[table_index(args, n)])
            tag = f"{name}[{i + 1};{','.join(map(str, frozen))}]"
            found.setdefault(tuple(image), []).append(tag)
    return [UnaryMap(img, tuple(tags)) for img, tags in found.items()]


def freezifications(alg: FiniteAlgebra) -> list[UnaryMap]:
    """1-freezifications of every operation, deduplicated by image."""
    found: dict[tuple[int, ...], list[str]] = {}
    for op in alg.operations:
        for m in freezifications_of(op.table, op.arity, alg.size, op.name):
            found.setdefault(m.image, []).extend(m.provenance)
    return [UnaryMap(img, tuple(tags)) for img, tags in found.items()]


def freez_star(alg: FiniteAlgebra) -> list[UnaryMap]:
    """Composition closure of the 1-freezifications, identity included.

    Breadth-first, so each map carries one of its shortest derivations.
    """
    gens = [UnaryMap(m.image, (m.label,)) for m in freezifications(alg)]
    ident = UnaryMap.identity(alg.size)
    seen = {ident.image: ident}
    queue = deque([ident])
    while queue:
        h = queue.popleft()
        for g in gens:
            comp = g.after(h)
            if comp.image not in seen:
                seen[comp.image] = comp
                queue.append(comp)
    return list(seen.values())


# --------------------------------------------------------------------------
# relations
# --------------------------------------------------------------------------

def _normalize_labels(labels: Sequence[int]) -> tuple[int, ...]:
    remap: dict[int, int] = {}
    return tuple(remap.setdefault(v, len(remap)) for v in labels)


@dataclass(frozen=True)
class Congruence:
    """An equivalence on ``{0..n-1}``; labels are renumbered by first occurrence."""

    block_of: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "block_of", _normalize_labels(self.block_of))

    @classmethod
    def identity(cls, n: int) -> Congruence:
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> Congruence:
        return cls((0,) * n)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> Congruence:
        labels = list(range(n))
        for b in blocks:
            b = list(b)
            for x in b:
                labels[x] = n + b[0]
        return cls(tuple(labels))

    @property
    def size(self) -> int:
        return len(self.block_of)

    @property
    def index(self) -> int:
        return max(self.block_of, default=-1) + 1

    def related(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def blocks(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.index)]
        for x, b in enumerate(self.block_of):
            out[b].append(x)
        return [tuple(b) for b in out]

    def refines(self, other: Congruence) -> bool:
        """True iff every block of ``self`` lies inside a block of ``other``."""
        return all(len({other.block_of[x] for x in block}) == 1 for block in self.blocks())

    def meet(self, other: Congruence) -> Congruence:
        return Congruence(tuple(zip(self.block_of, other.block_of)))  # type: ignore[arg-type]

    def join(self, other: Congruence) -> Congruence:
        uf = UnionFind(self.size)
        for c in (self, other):
            for block in c.blocks():
                for x in block[1:]:
                    uf.union(block[0], x)
        return uf.congruence()

    def saturates(self, mask: int) -> bool:
        """True iff ``mask`` is a union of blocks."""
        return all(
            all((mask >> x & 1) == (mask >> block[0] & 1) for x in block) for block in self.blocks()
        )

    def to_preorder(self) -> PreorderRel:
        rows = []
        for x in range(self.size):
            r = 0
            for y, b in enumerate(self.block_of):
                if b == self.block_of[x]:
                    r |= 1 << y
            rows.append(r)
        return PreorderRel(tuple(rows))

    def __str__(self) -> str:
        return " ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks())


@dataclass(frozen=True)
class PreorderRel:
    rows: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> PreorderRel:
        return cls(tuple(1 << x for x in range(n)))

    @classmethod
    def total(cls, n: int) -> PreorderRel:
        full = (1 << n) - 1
        return cls((full,) * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> PreorderRel:
        rows = [1 << x for x in range(n)]
        for x, y in pairs:
            rows[x] |= 1 << y
        return cls(tuple(rows))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[bool]]) -> PreorderRel:
        return cls(tuple(sum(1 << y for y, v in enumerate(row) if v) for row in matrix))

    def related(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def matrix(self) -> list[list[bool]]:
        n = self.size
        return [[bool(r >> y & 1) for y in range(n)] for r in self.rows]

    def pairs(self) -> Iterator[tuple[int, int]]:
        for x, r in enumerate(self.rows):
            for y in range(self.size):
                if r >> y & 1:
                    yield x, y

    def is_reflexive(self) -> bool:
        return all(r >> x & 1 for x, r in enumerate(self.rows))

    def is_transitive(self) -> bool:
        return transitive_closure(self.rows) == self.rows

    def is_symmetric(self) -> bool:
        return all(self.related(y, x) for x, y in self.pairs())

    def is_antisymmetric(self) -> bool:
        return all(x == y or not self.related(y, x) for x, y in self.pairs())

    def contains(self, other: PreorderRel) -> bool:
        return all(o & ~s == 0 for s, o in zip(self.rows, other.rows))

    def down_closed(self, mask: int) -> bool:
        """True iff ``mask`` is an initial segment: ``a in L`` and ``b <= a`` give ``b in L``."""
        for a in range(self.size):
            if mask >> a & 1:
                for b in range(self.size):
                    if self.rows[b] >> a & 1 and not mask >> b & 1:
                        return False
        return True

    def __str__(self) -> str:
        return "\n".join("".join("1" if v else "." for v in row) for row in self.matrix())


Relation = Union[Congruence, PreorderRel]


def transitive_closure(rows: Sequence[int]) -> tuple[int, ...]:
    rows = list(rows)
    n = len(rows)
    for k in range(n):
        rk = rows[k]
        bit = 1 << k
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk
    return tuple(rows)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            rx, ry = ry, rx
        self.parent[rx] = ry
        return True

    def congruence(self) -> Congruence:
        return Congruence(tuple(self.find(x) for x in range(len(self.parent))))


def _relation_tester(rel: Relation):
    if isinstance(rel, Congruence):
        labels = rel.block_of
        return rel.size, (lambda x, y: labels[x] == labels[y])
    rows = rel.rows
    return rel.size, (lambda x, y: bool(rows[x] >> y & 1))


def find_incompatibility(
    rel: Relation, table: Sequence[int], arity: int = 1
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """First argument pair ``(xs, ys)`` with ``xs rho ys`` pointwise but ``f(xs) not rho f(ys)``."""
    n, related = _relation_tester(rel)
    if len(table) != n**arity:
        raise ArityError(f"table of length {len(table)} does not fit arity {arity} on {n} elements")
    ups = [[y for y in range(n) if related(x, y)] for x in range(n)]
    for xs in itertools.product(range(n), repeat=arity):
        fx = table[table_index(xs, n)]
        for ys in itertools.product(*(ups[x] for x in xs)):
            if not related(fx, table[table_index(ys, n)]):
                return xs, ys
    return None


def is_compatible(rel: Relation, table: Sequence[int], arity: int = 1) -> bool:
    return find_incompatibility(rel, table, arity) is None


def is_stable(rel: Relation, alg: FiniteAlgebra) -> bool:
    return all(is_compatible(rel, op.table, op.arity) for op in alg.operations)


def verify_freezification_lemma(
    alg: FiniteAlgebra, rel: PreorderRel, table: Sequence[int], arity: int
) -> bool:
    """Compatibility with ``f`` agrees with compatibility with all of its 1-freezifications."""
    whole = is_compatible(rel, table, arity)
    parts = all(is_compatible(rel, g.image) for g in freezifications_of(table, arity, alg.size))
    return whole == parts


# --------------------------------------------------------------------------
# congruences
# --------------------------------------------------------------------------

def principal_congruence(
    alg: FiniteAlgebra, pairs: Iterable[tuple[int, int]], maps: Sequence[UnaryMap] | None = None
) -> Congruence:
    """Smallest congruence containing ``pairs``."""
    if maps is None:
        maps = freezifications(alg)
    uf = UnionFind(alg.size)
    work = deque(pairs)
    while work:
        x, y = work.popleft()
        if uf.union(x, y):
            for g in maps:
                work.append((g.image[x], g.image[y]))
    return uf.congruence()


def _check_bound(alg: FiniteAlgebra, bound: int, what: str) -> None:
    if alg.size > bound:
        raise BoundExceeded(f"{what}: carrier size {alg.size} exceeds bound {bound}")


def _congruence_key(c: Congruence) -> tuple:
    return (-c.index, c.block_of)


def enumerate_congruences(alg: FiniteAlgebra, bound: int = DEFAULT_CONGRUENCE_BOUND) -> list[Congruence]:
    """All congruences, as the join closure of the principal ones.

    Sorted by index descending (identity first, total last).
    """
    _check_bound(alg, bound, "enumerate_congruences")
    n = alg.size
    maps = freezifications(alg)
    principals = {
        principal_congruence(alg, [(x, y)], maps) for x in range(n) for y in range(x + 1, n)
    }
    ident = Congruence.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for c in frontier:
            for p in principals:
                j = c.join(p)
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(seen, key=_congruence_key)


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length ``n``."""
    if n == 0:
        yield ()
        return

    def rec(prefix: list[int], top: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            prefix.append(v)
            yield from rec(prefix, max(top, v))
            prefix.pop()

    yield from rec([0], 0)


def enumerate_congruences_naive(alg: FiniteAlgebra, bound: int = 5) -> list[Congruence]:
    """Filter every partition of the carrier; an independent path for cross-checks."""
    _check_bound(alg, bound, "enumerate_congruences_naive")
    found = [c for c in map(Congruence, set_partitions(alg.size)) if is_stable(c, alg)]
    return sorted(found, key=_congruence_key)


# --------------------------------------------------------------------------
# stable preorders
# --------------------------------------------------------------------------

def stable_closure(n: int, rows: Sequence[int], maps: Sequence[UnaryMap]) -> tuple[int, ...]:
    """Least stable preorder containing the relation ``rows``."""
    rows = tuple(r | 1 << x for x, r in enumerate(rows))
    while True:
        grown = list(rows)
        for x, r in enumerate(rows):
            for y in range(n):
                if r >> y & 1:
                    for g in maps:
                        grown[g.image[x]] |= 1 << g.image[y]
        grown_t = transitive_closure(grown)
        if grown_t == rows:
            return rows
        rows = grown_t


def principal_preorder(
    alg: FiniteAlgebra, pairs: Iterable[tuple[int, int]], maps: Sequence[UnaryMap] | None = None
) -> PreorderRel:
    if maps is None:
        maps = freezifications(alg)
    rows = [1 << x for x in range(alg.size)]
    for x, y in pairs:
        rows[x] |= 1 << y
    return PreorderRel(stable_closure(alg.size, rows, maps))


def _preorder_key(p: PreorderRel) -> tuple:
    return (sum(bin(r).count("1") for r in p.rows), p.rows)


def enumerate_stable_preorders(alg: FiniteAlgebra, bound: int = DEFAULT_PREORDER_BOUND) -> list[PreorderRel]:
    """All stable preorders, as the join closure of the principal ones.

    The join of two stable preorders is the transitive closure of their
    union, which is again stable since only unary maps need checking.
    """
    _check_bound(alg, bound, "enumerate_stable_preorders")
    n = alg.size
    maps = freezifications(alg)
    principals = {
        principal_preorder(alg, [(x, y)], maps).rows for x in range(n) for y in range(n) if x != y
    }
    ident = PreorderRel.identity(n).rows
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in principals:
                if all(qr & ~pr == 0 for pr, qr in zip(p, q)):
                    continue
                j = transitive_closure([a | b for a, b in zip(p, q)])
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted((PreorderRel(r) for r in seen), key=_preorder_key)


def enumerate_stable_preorders_naive(alg: FiniteAlgebra, bound: int = 4) -> list[PreorderRel]:
    """Filter every reflexive relation; an independent path for cross-checks."""
    _check_bound(alg, bound, "enumerate_stable_preorders_naive")
    n = alg.size
    off = [(x, y) for x in range(n) for y in range(n) if x != y]
    found = []
    for bits in range(1 << len(off)):
        p = PreorderRel.from_pairs(n, (pair for i, pair in enumerate(off) if bits >> i & 1))
        if p.is_transitive() and is_stable(p, alg):
            found.append(p)
    return sorted(found, key=_preorder_key)


def associated_congruence(p: PreorderRel) -> Congruence:
    labels = []
    for x in range(p.size):
        for y in range(x + 1):
            if p.related(x, y) and p.related(y, x):
                labels.append(y)
                break
    return Congruence(tuple(labels))


# --------------------------------------------------------------------------
# syntactic relations
# --------------------------------------------------------------------------

def as_mask(L: int | Iterable[int]) -> int:
    if isinstance(L, int):
        return L
    out = 0
    for x in L:
        out |= 1 << x
    return out


def mask_elements(mask: int, n: int) -> list[int]:
    return [x for x in range(n) if mask >> x & 1]


def syntactic_congruence(alg: FiniteAlgebra, L: int | Iterable[int]) -> Congruence:
    """Moore-style refinement from ``{L, A \\ L}`` along the 1-freezifications."""
    mask = as_mask(L)
    maps = freezifications(alg)
    labels = _normalize_labels([mask >> x & 1 for x in range(alg.size)])
    while True:
        sig = [(labels[x],) + tuple(labels[g.image[x]] for g in maps) for x in range(alg.size)]
        refined = _normalize_labels(sig)  # type: ignore[arg-type]
        if max(refined) == max(labels):
            return Congruence(refined)
        labels = refined


def syntactic_congruence_bruteforce(alg: FiniteAlgebra, L: int | Iterable[int]) -> Congruence:
    """The defining formula, quantifying over all *-freezifications."""
    mask = as_mask(L)
    star = freez_star(alg)
    sig = [tuple(mask >> g.image[x] & 1 for g in star) for x in range(alg.size)]
    return Congruence(_normalize_labels(sig))  # type: ignore[arg-type]


def syntactic_preorder(alg: FiniteAlgebra, L: int | Iterable[int]) -> PreorderRel:
    """Greatest relation inside ``y in L => x in L`` that is closed under 1-freezifications."""
    mask = as_mask(L)
    n = alg.size
    maps = freezifications(alg)
    outside = ~mask & ((1 << n) - 1)
    # x <= y allowed unless y in L and x not in L
    rows = [((1 << n) - 1) if mask >> x & 1 else outside for x in range(n)]
    changed = True
    while changed:
        changed = False
        for x in range(n):
            for y in range(n):
                if rows[x] >> y & 1 and any(not rows[g.image[x]] >> g.image[y] & 1 for g in maps):
                    rows[x] &= ~(1 << y)
                    changed = True
    return PreorderRel(tuple(rows))


def syntactic_preorder_bruteforce(alg: FiniteAlgebra, L: int | Iterable[int]) -> PreorderRel:
    mask = as_mask(L)
    star = freez_star(alg)
    n = alg.size
    pairs = [
        (x, y)
        for x in range(n)
        for y in range(n)
        if all(not mask >> g.image[y] & 1 or mask >> g.image[x] & 1 for g in star)
    ]
    return PreorderRel.from_pairs(n, pairs)


# --------------------------------------------------------------------------
# quotients and preservation
# --------------------------------------------------------------------------

def quotient(alg: FiniteAlgebra, c: Congruence) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """Quotient algebra on block labels, and the projection ``x -> block_of[x]``."""
    for op in alg.operations:
        bad = find_incompatibility(c, op.table, op.arity)
        if bad is not None:
            raise IncompatibleRelation(f"partition not compatible with {op.name}: {bad[0]} vs {bad[1]}")
    reps = [b[0] for b in c.blocks()]
    m = c.index
    ops = []
    for op in alg.operations:
        table = tuple(
            c.block_of[op.table[table_index([reps[b] for b in args], alg.size)]]
            for args in itertools.product(range(m), repeat=op.arity)
        )
        ops.append(Operation(op.name, op.arity, table))
    return FiniteAlgebra(m, tuple(ops)), c.block_of


def is_congruence_preserving(
    alg: FiniteAlgebra,
    table: Sequence[int],
    arity: int = 1,
    congruences: Sequence[Congruence] | None = None,
    bound: int = DEFAULT_CONGRUENCE_BOUND,
) -> bool:
    if congruences is None:
        congruences = enumerate_congruences(alg, bound)
    return all(is_compatible(c, table, arity) for c in congruences)


def is_stable_preorder_preserving(
    alg: FiniteAlgebra,
    table: Sequence[int],
    arity: int = 1,
    preorders: Sequence[PreorderRel] | None = None,
    bound: int = DEFAULT_PREORDER_BOUND,
) -> bool:
    if preorders is None:
        preorders = enumerate_stable_preorders(alg, bound)
    return all(is_compatible(p, table, arity) for p in preorders)


# --------------------------------------------------------------------------
# structure detection
# --------------------------------------------------------------------------

def _binary(table: Sequence[int], n: int):
    return lambda x, y: table[x * n + y]


def is_associative(table: Sequence[int], n: int) -> bool:
    m = _binary(table, n)
    return all(m(m(x, y), z) == m(x, m(y, z)) for x in range(n) for y in range(n) for z in range(n))


def unit_of(table: Sequence[int], n: int) -> int | None:
    m = _binary(table, n)
    for e in range(n):
        if all(m(e, x) == x and m(x, e) == x for x in range(n)):
            return e
    return None


def is_group_table(table: Sequence[int], n: int) -> bool:
    if len(table) != n * n or not is_associative(table, n):
        return False
    e = unit_of(table, n)
    if e is None:
        return False
    m = _binary(table, n)
    return all(any(m(x, y) == e and m(y, x) == e for y in range(n)) for x in range(n))


def find_group_operation(alg: FiniteAlgebra) -> Operation | None:
    for op in alg.operations:
        if op.arity == 2 and is_group_table(op.table, alg.size):
            return op
    return None


def is_unit_ring(add: Sequence[int], mul: Sequence[int], n: int) -> bool:
    if not is_group_table(add, n):
        return False
    a, m = _binary(add, n), _binary(mul, n)
    if any(a(x, y) != a(y, x) for x in range(n) for y in range(n)):
        return False
    if not is_associative(mul, n) or unit_of(mul, n) is None:
        return False
    return all(
        m(x, a(y, z)) == a(m(x, y), m(x, z)) and m(a(y, z), x) == a(m(y, x), m(z, x))
        for x in range(n)
        for y in range(n)
        for z in range(n)
    )
