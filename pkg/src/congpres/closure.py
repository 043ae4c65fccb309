"""Lattice and Boolean-algebra closures of families of sets.

Members are handled as bitmasks over a finite set of *atoms*.  For a finite
carrier the atoms are the elements themselves.  Over the naturals every set
met in a closure is saturated for one congruence ``=_{a,k}`` (the common
threshold and period of the generators), so the atoms are its ``a + k``
classes and the family is decoded back to :class:`UpSet` values at the end.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Sequence, Union

from .algebra import (
    FiniteAlgebra,
    Congruence,
    as_mask,
    freez_star,
    is_compatible,
    mask_elements,
    syntactic_congruence,
    syntactic_preorder,
)
from .upset import UpSet, format_upset

KINDS = ("lattice", "bounded-lattice", "boolean")


class PreconditionError(ValueError):
    pass


# --------------------------------------------------------------------------
# universes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteUniverse:
    size: int

    @property
    def atoms(self) -> int:
        return self.size

    def encode(self, s: int) -> int | None:
        return s

    def decode(self, mask: int) -> int:
        return mask

    def describe(self) -> dict[str, Any]:
        return {"kind": "finite", "size": self.size}

    def dump(self, s: int) -> str:
        return hex(s)

    def show(self, s: int) -> str:
        return "{" + ",".join(map(str, mask_elements(s, self.size))) + "}"


@dataclass(frozen=True)
class NatUniverse:
    """The naturals, seen through the classes of ``=_{a,k}``."""

    a: int = 0
    k: int = 1

    @classmethod
    def covering(cls, sets: Iterable[UpSet]) -> NatUniverse:
        a, k = 0, 1
        for s in sets:
            a = max(a, s.a)
            k = math.lcm(k, s.k)
        return cls(a, k)

    @property
    def atoms(self) -> int:
        return self.a + self.k

    def encode(self, s: UpSet) -> int | None:
        if not s.saturated_for(self.a, self.k):
            return None
        return sum(1 << x for x in range(self.a + self.k) if x in s)

    def decode(self, mask: int) -> UpSet:
        return UpSet.from_predicate(lambda x: bool(mask >> x & 1), self.a, self.k)

    def describe(self) -> dict[str, Any]:
        return {"kind": "nat", "base": [self.a, self.k]}

    def dump(self, s: UpSet) -> dict[str, Any]:
        F, a, k, D = s.quadruple()
        return {"a": a, "k": k, "F": list(F), "D": list(D)}

    def show(self, s: UpSet) -> str:
        return format_upset(s)


Universe = Union[FiniteUniverse, NatUniverse]


# --------------------------------------------------------------------------
# families
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    value: Hashable
    provenance: str


@dataclass(frozen=True)
class SetFamily:
    """A closed family with one derivation per member.

    ``derivations[i]`` is ``("gen", g)``, ``("bottom",)``, ``("top",)``,
    ``("meet", i, j)``, ``("join", i, j)`` or ``("comp", i)``, where the
    integers index earlier members (generators index ``generators``).
    """

    universe: Universe
    kind: str
    generators: tuple[Generator, ...]
    members: tuple[Hashable, ...]
    derivations: tuple[tuple, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, s: object) -> bool:
        return s in self._index

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {m: i for i, m in enumerate(self.members)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def index_of(self, s: Hashable) -> int | None:
        return self._index.get(s)

    def witness(self, s: Hashable, depth: int = 6) -> str | None:
        i = self.index_of(s)
        if i is None:
            return None
        return self._render(i, depth)

    def _render(self, i: int, depth: int) -> str:
        d = self.derivations[i]
        tag = d[0]
        if tag == "gen":
            return self.generators[d[1]].provenance
        if tag == "bottom":
            return "EMPTY"
        if tag == "top":
            return "ALL"
        if depth <= 0:
            return f"#{i}"
        if tag == "comp":
            return f"~({self._render(d[1], depth - 1)})"
        sym = " & " if tag == "meet" else " | "
        return f"({self._render(d[1], depth - 1)}{sym}{self._render(d[2], depth - 1)})"

    def to_json(self) -> dict[str, Any]:
        u = self.universe
        return {
            "universe": u.describe(),
            "kind": self.kind,
            "generators": [{"set": u.dump(g.value), "provenance": g.provenance} for g in self.generators],
            "members": [u.dump(m) for m in self.members],
        }


def close(
    generators: Sequence[Hashable | tuple[Hashable, str]],
    universe: Universe | None = None,
    kind: str = "lattice",
) -> SetFamily:
    """Least family containing ``generators`` closed under the operations of ``kind``.

    ``lattice`` closes under union and intersection, ``bounded-lattice`` adds
    the empty set and the universe, ``boolean`` further closes under
    complement.  Member order is fixed (generators, bounds, complements,
    meets, then joins) so it is reproducible.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown closure kind {kind!r}; expected one of {KINDS}")
    gens: list[Generator] = []
    for g in generators:
        if isinstance(g, tuple) and len(g) == 2 and isinstance(g[1], str):
            gens.append(Generator(g[0], g[1]))
        else:
            gens.append(Generator(g, f"G{len(gens)}"))
    if universe is None:
        if gens and isinstance(gens[0].value, UpSet):
            universe = NatUniverse.covering(g.value for g in gens)  # type: ignore[misc]
        else:
            raise ValueError("a finite universe must be given explicitly")
    elif isinstance(universe, NatUniverse):
        universe = NatUniverse.covering([UpSet.final_segment(universe.a), UpSet.progression(0, universe.k)]
                                        + [g.value for g in gens])  # type: ignore[misc]

    full = (1 << universe.atoms) - 1
    masks: list[int] = []
    derivs: list[tuple] = []
    seen: dict[int, int] = {}

    def add(mask: int, how: tuple) -> None:
        if mask not in seen:
            seen[mask] = len(masks)
            masks.append(mask)
            derivs.append(how)

    for i, g in enumerate(gens):
        m = universe.encode(g.value)
        if m is None:
            raise ValueError(f"generator {g.provenance} is not expressible in {universe.describe()}")
        add(m, ("gen", i))
    if kind != "lattice":
        add(0, ("bottom",))
        add(full, ("top",))
    if kind == "boolean":
        # by De Morgan, the lattice generated by the sets and their complements is closed under complement
        for j in range(len(masks)):
            add(full & ~masks[j], ("comp", j))

    # sets form a distributive lattice: the generated lattice is the join closure of the meet closure,
    # and each closure only needs to combine new members with the base family
    base = list(range(len(masks)))
    _saturate(masks, base, add, "meet")
    _saturate(masks, list(range(len(masks))), add, "join")

    members = tuple(universe.decode(m) for m in masks)
    return SetFamily(universe, kind, tuple(gens), members, tuple(derivs))


def _saturate(masks: list[int], base: list[int], add, op: str) -> None:
    j = 0
    while j < len(masks):
        for i in base:
            if i != j:
                add(masks[i] & masks[j] if op == "meet" else masks[i] | masks[j], (op, i, j) if i < j else (op, j, i))
        j += 1


def contains(family: SetFamily, s: Hashable) -> tuple[bool, str | None]:
    """Membership with a derivation witness over the generators."""
    w = family.witness(s)
    return w is not None, w


# --------------------------------------------------------------------------
# preimage generators
# --------------------------------------------------------------------------

def preimage_generators(source: FiniteAlgebra | str, L: int | Iterable[int] | UpSet) -> list[tuple[Hashable, str]]:
    """The sets ``gamma^-1(L)`` for ``gamma`` a *-freezification.

    ``source`` is a finite algebra, or ``"nat"`` for the successor algebra on
    the naturals (where ``L`` must be an :class:`UpSet` and the maps are the
    iterated decrements).
    """
    if isinstance(source, FiniteAlgebra):
        mask = as_mask(L)  # type: ignore[arg-type]
        out: dict[int, str] = {}
        for g in freez_star(source):
            out.setdefault(g.preimage(mask), f"({g.label})^-1(L)")
        return list(out.items())
    if source != "nat" or not isinstance(L, UpSet):
        raise TypeError("preimage_generators over the naturals needs source='nat' and an UpSet")
    seen: dict[UpSet, str] = {}
    cur, t = L, 0
    while cur not in seen:
        seen[cur] = "L" if t == 0 else f"suc^-{t}(L)"
        cur = cur.suc_preimage(1)
        t += 1
    return list(seen.items())


def latt(alg: FiniteAlgebra, L: int | Iterable[int], kind: str = "lattice") -> SetFamily:
    return close(preimage_generators(alg, L), FiniteUniverse(alg.size), kind)


def saturated_family(c: Congruence) -> set[int]:
    blocks = c.blocks()
    out = set()
    for bits in range(1 << len(blocks)):
        out.add(sum(1 << x for i, b in enumerate(blocks) if bits >> i & 1 for x in b))
    return out


def boolean_closure_report(alg: FiniteAlgebra, L: int | Iterable[int]) -> dict[str, Any]:
    """Size of the bounded Boolean closure against the family of all syntactic-class unions."""
    fam = latt(alg, L, "boolean")
    sat = saturated_family(syntactic_congruence(alg, L))
    return {
        "boolean_size": len(fam),
        "syntactic_index": syntactic_congruence(alg, L).index,
        "saturated_count": len(sat),
        "equal": set(fam.members) == sat,
        "subset": set(fam.members) <= sat,
    }


# --------------------------------------------------------------------------
# representing f^-1(L)
# --------------------------------------------------------------------------

def f_inverse_by_representation(
    alg: FiniteAlgebra, L: int | Iterable[int], f: Sequence[int], formula: str = "auto"
) -> tuple[int, bool]:
    """Evaluate ``f^-1(L)`` through the preimages ``gamma^-1(L)``.

    ``formula="boolean"`` uses the union over ``a in f^-1(L)`` of
    ``meet of gamma^-1(L) for gamma in X_a`` and ``meet of complements for
    gamma in Y_a``; it needs ``f`` to preserve the syntactic congruence.
    ``formula="lattice"`` drops the complements and needs ``f`` to preserve
    the syntactic preorder.  ``auto`` takes the lattice form when allowed.

    Returns the computed mask and whether it equals the pointwise preimage.
    """
    mask = as_mask(L)
    n = alg.size
    full = (1 << n) - 1
    keeps_cong = is_compatible(syntactic_congruence(alg, mask), f)
    keeps_pre = is_compatible(syntactic_preorder(alg, mask), f)
    if formula == "auto":
        if not (keeps_cong or keeps_pre):
            raise PreconditionError("f preserves neither the syntactic congruence nor the syntactic preorder of L")
        formula = "lattice" if keeps_pre else "boolean"
    if formula == "boolean" and not keeps_cong:
        raise PreconditionError("f does not preserve the syntactic congruence of L")
    if formula == "lattice" and not keeps_pre:
        raise PreconditionError("f does not preserve the syntactic preorder of L")
    if formula not in ("boolean", "lattice"):
        raise ValueError(f"unknown formula {formula!r}")

    pre = [g.preimage(mask) for g in freez_star(alg)]
    direct = sum(1 << x for x in range(n) if mask >> f[x] & 1)
    computed = 0
    for a in mask_elements(direct, n):
        term = full
        for p in pre:
            if p >> a & 1:
                term &= p
            elif formula == "boolean":
                term &= full & ~p
        computed |= term
    return computed, computed == direct
