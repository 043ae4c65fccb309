"""Verification suites tying the modules together.

Each suite returns a :class:`SuiteReport`.  A suite passes iff no instance
contradicts the prediction it is checked against; instances where a one-way
implication has a false converse are recorded but are not failures.
"""
from __future__ import annotations

import functools
import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Any, Sequence

from .algebra import (
    BoundExceeded,
    FiniteAlgebra,
    Operation,
    enumerate_congruences,
    enumerate_stable_preorders,
    find_group_operation,
    freez_star,
    is_compatible,
    is_unit_ring,
    syntactic_congruence,
    syntactic_preorder,
)
from .arith import (
    NatFun,
    check_clause_a,
    check_clause_b,
    check_clause_c,
    check_cp_dual,
    check_cp_nat,
    check_spp_nat,
    check_spp_triple,
    corpus,
    theoremA_lattice_conditions,
)
from .closure import FiniteUniverse, PreconditionError, close, latt
from .nat import latt_suc, syntactic_cong_up
from .textio import format_algebra
from .upset import UpSet, describe_upset

MAX_TABLE1_SIZE = 4


@dataclass
class SuiteReport:
    name: str
    instances: list[dict[str, Any]] = field(default_factory=list)
    failures: list[dict[str, Any]] = field(default_factory=list)
    converse_failures: list[dict[str, Any]] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: SuiteReport) -> None:
        self.instances += other.instances
        self.failures += other.failures
        self.converse_failures += other.converse_failures

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "suite": self.name,
            "passed": self.passed,
            "instance_count": len(self.instances),
            "failure_count": len(self.failures),
            "converse_failure_count": len(self.converse_failures),
            "instances": sorted(self.instances, key=lambda d: d.get("key", "")),
            "failures": self.failures,
            "converse_failures": self.converse_failures,
            "notes": self.notes,
        }
        if timing and self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def _timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.wall_time = time.perf_counter() - start
        return rep
    return wrapper


# --------------------------------------------------------------------------
# the eight conditions on a finite algebra
# --------------------------------------------------------------------------

# (name, premise, conclusion): the simple arrows of the diagram
TABLE1_ARROWS = [
    ("P1->P2", "PreordPres", "PreordPres_fin"),
    ("Q1->Q2", "Latt_inf", "Latt_rec"),
    ("D1->D2", "Bool_inf", "Bool_rec"),
    ("C1->C2", "CongPres", "CongPres_fin"),
    ("P1->C1", "PreordPres", "CongPres"),
    ("Q1->D1", "Latt_inf", "Bool_inf"),
    ("Q2->D2", "Latt_rec", "Bool_rec"),
    ("P2->C2", "PreordPres_fin", "CongPres_fin"),
]
TABLE1_EQUIVALENCES = [
    ("P1<->Q1", "PreordPres", "Latt_inf"),
    ("P2<->Q2", "PreordPres_fin", "Latt_rec"),
    ("C1<->D1", "CongPres", "Bool_inf"),
    ("C2<->D2", "CongPres_fin", "Bool_rec"),
]


def table1_conditions(alg: FiniteAlgebra, f: Sequence[int]) -> dict[str, bool]:
    """The eight conditions, each through its own computation.

    On a finite carrier every relation has finite index and every subset is
    recognizable.  The "fin" variants are therefore computed through the
    syntactic relations of all subsets (every stable preorder is an
    intersection of syntactic ones), the plain ones through full
    enumeration.  The set-complete families coincide with the bounded ones
    since everything is finite.
    """
    n = alg.size
    if n > MAX_TABLE1_SIZE:
        raise BoundExceeded(f"table1 conditions: carrier size {n} exceeds {MAX_TABLE1_SIZE}")
    subsets = range(1 << n)
    pre_of = {L: f_pre(f, L) for L in subsets}
    out = {
        "PreordPres": all(is_compatible(p, f) for p in enumerate_stable_preorders(alg)),
        "CongPres": all(is_compatible(c, f) for c in enumerate_congruences(alg)),
        "PreordPres_fin": all(is_compatible(syntactic_preorder(alg, L), f) for L in subsets),
        "CongPres_fin": all(is_compatible(syntactic_congruence(alg, L), f) for L in subsets),
    }
    lat = {L: latt(alg, L, "bounded-lattice") for L in subsets}
    boo = {L: latt(alg, L, "boolean") for L in subsets}
    out["Latt_inf"] = all(pre_of[L] in lat[L] for L in subsets)
    out["Bool_inf"] = all(pre_of[L] in boo[L] for L in subsets)
    # the recognizable variants quantify over the same subsets, via a fresh closure of the plain lattice
    out["Latt_rec"] = all(pre_of[L] in {0, (1 << n) - 1} or pre_of[L] in latt(alg, L, "lattice") for L in subsets)
    out["Bool_rec"] = all(pre_of[L] in {0, (1 << n) - 1} or _in_boolean(alg, L, pre_of[L]) for L in subsets)
    return out


def _in_boolean(alg: FiniteAlgebra, L: int, target: int) -> bool:
    # Bool with bounds = lattice closure of the preimages and their complements, plus bounds
    fam = latt(alg, L, "lattice")
    full = (1 << alg.size) - 1
    gens = set(fam.members) | {full & ~m for m in fam.members}
    return target in close(sorted(gens), FiniteUniverse(alg.size), "lattice")


def f_pre(f: Sequence[int], L: int) -> int:
    return sum(1 << x for x, fx in enumerate(f) if L >> fx & 1)


def _instance_key(alg: FiniteAlgebra, f: Sequence[int]) -> str:
    ops = ";".join(f"{o.name}/{o.arity}:{''.join(map(str, o.table))}" for o in alg.operations)
    return f"n={alg.size}|{ops}|f={''.join(map(str, f))}"


def verify_table1(alg: FiniteAlgebra, f: Sequence[int], expect_all: bool = False) -> SuiteReport:
    """Check every arrow and equivalence of the diagram on one instance.

    With ``expect_all`` the instance is also required to satisfy all eight
    conditions (used for *-freezifications, which preserve everything).
    """
    rep = SuiteReport("table1")
    cond = table1_conditions(alg, f)
    key = _instance_key(alg, f)
    rep.instances.append({"key": key, "conditions": cond})
    dump = {"key": key, "algebra": format_algebra(alg), "f": list(f)}
    for name, p, q in TABLE1_ARROWS:
        if cond[p] and not cond[q]:
            rep.failures.append({**dump, "violated": name})
        elif cond[q] and not cond[p]:
            rep.converse_failures.append({**dump, "arrow": name})
    for name, p, q in TABLE1_EQUIVALENCES:
        if cond[p] != cond[q]:
            rep.failures.append({**dump, "violated": name})
    # finite carrier: the index restriction changes nothing
    for p, q in [("PreordPres", "PreordPres_fin"), ("CongPres", "CongPres_fin")]:
        if cond[p] != cond[q]:
            rep.failures.append({**dump, "violated": f"{p}={q} on a finite carrier"})
    if expect_all and not all(cond.values()):
        rep.failures.append({**dump, "violated": "composition of freezifications must preserve everything"})
    return rep


def random_algebra(rng: random.Random, max_size: int = MAX_TABLE1_SIZE) -> FiniteAlgebra:
    """Uniform tables: carrier 1..max_size, one or two operations of arity at most 2."""
    n = rng.randint(1, max_size)
    ops = []
    for i in range(rng.randint(1, 2)):
        arity = rng.randint(0, 2)
        ops.append(Operation(f"o{i}", arity, tuple(rng.randrange(n) for _ in range(n**arity))))
    return FiniteAlgebra(n, tuple(ops))


def two_element_algebras() -> list[FiniteAlgebra]:
    return [FiniteAlgebra.build(2, [("m", 2, t)]) for t in itertools.product(range(2), repeat=4)]


@_timed
def run_table1_suite(seed: int = 0, bound: int = MAX_TABLE1_SIZE, random_count: int = 200) -> SuiteReport:
    rep = SuiteReport("table1")
    for alg in two_element_algebras():
        for f in itertools.product(range(2), repeat=2):
            rep.merge(verify_table1(alg, f))
    rng = random.Random(seed)
    for _ in range(random_count):
        alg = random_algebra(rng, bound)
        f = tuple(rng.randrange(alg.size) for _ in range(alg.size))
        rep.merge(verify_table1(alg, f))
        star = freez_star(alg)
        g = star[rng.randrange(len(star))]
        rep.merge(verify_table1(alg, g.image, expect_all=True))
    rep.notes = {"seed": seed, "bound": bound, "random_algebras": random_count}
    return rep


# --------------------------------------------------------------------------
# special structures
# --------------------------------------------------------------------------

def cyclic_group(n: int) -> FiniteAlgebra:
    return FiniteAlgebra.build(n, [("add", 2, [(x + y) % n for x in range(n) for y in range(n)])])


def symmetric_group_s3() -> FiniteAlgebra:
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [index[tuple(p[q[i]] for i in range(3))] for p in perms for q in perms]
    return FiniteAlgebra.build(6, [("comp", 2, table)])


def ring_tables(n: int) -> tuple[list[int], list[int]]:
    return (
        [(x + y) % n for x in range(n) for y in range(n)],
        [(x * y) % n for x in range(n) for y in range(n)],
    )


def _collapse_report(name: str, alg: FiniteAlgebra, check_order: bool) -> SuiteReport:
    rep = SuiteReport(name)
    pres = enumerate_stable_preorders(alg, bound=max(alg.size, 6))
    for p in pres:
        entry = {"key": f"{name}:{p.rows}", "symmetric": p.is_symmetric()}
        rep.instances.append(entry)
        if not p.is_symmetric():
            rep.failures.append({**entry, "algebra": format_algebra(alg), "violated": "stable preorder not symmetric"})
        if check_order and p.is_antisymmetric() and p.rows != tuple(1 << x for x in range(alg.size)):
            rep.failures.append({**entry, "algebra": format_algebra(alg), "violated": "stable order is not equality"})
    rep.notes = {"carrier": alg.size, "stable_preorders": len(pres)}
    return rep


@_timed
def verify_group_collapse(alg: FiniteAlgebra, name: str = "group") -> SuiteReport:
    """Every stable preorder of an algebra with a group operation is a congruence."""
    if find_group_operation(alg) is None:
        raise PreconditionError("no operation of the algebra satisfies the group axioms")
    return _collapse_report(name, alg, check_order=True)


@_timed
def verify_ring_collapse(
    add_table: Sequence[int], mul_table: Sequence[int], extras: Sequence[Operation] = (), name: str = "ring"
) -> SuiteReport:
    """Every stable preorder of a unit ring (possibly with extra operations) is symmetric."""
    n = round(len(add_table) ** 0.5)
    if n * n != len(add_table) or len(mul_table) != n * n or not is_unit_ring(add_table, mul_table, n):
        raise PreconditionError("the tables do not form a unit ring")
    alg = FiniteAlgebra(n, (Operation("add", 2, tuple(add_table)), Operation("mul", 2, tuple(mul_table))) + tuple(extras))
    return _collapse_report(name, alg, check_order=False)


@_timed
def run_group_suite() -> SuiteReport:
    rep = SuiteReport("group")
    for n in range(2, 7):
        rep.merge(verify_group_collapse(cyclic_group(n), f"Z/{n}"))
    rep.merge(verify_group_collapse(symmetric_group_s3(), "S3"))
    return rep


@_timed
def run_ring_suite(max_n: int = 6) -> SuiteReport:
    rep = SuiteReport("ring")
    for n in range(2, max_n + 1):
        rep.merge(verify_ring_collapse(*ring_tables(n), name=f"Z/{n}"))
    return rep


# --------------------------------------------------------------------------
# the naturals
# --------------------------------------------------------------------------

def all_upsets(a_max: int, k_max: int) -> list[UpSet]:
    """Every set with threshold <= a_max and period <= k_max, deduplicated."""
    seen: dict[UpSet, None] = {}
    for a in range(a_max + 1):
        for k in range(1, k_max + 1):
            for F in range(1 << a):
                for D in range(1 << k):
                    s = UpSet(a, k, frozenset(x for x in range(a) if F >> x & 1),
                              frozenset(r for r in range(k) if D >> r & 1))
                    seen.setdefault(s, None)
    return list(seen)


def lattice_facts_report(a_max: int = 5, k_max: int = 5) -> SuiteReport:
    """Three facts about the lattices of ultimately periodic sets, on canonical forms.

    1. L finite, or of canonical period >= 2: the empty set is in the plain lattice.
    2. L infinite: N is in the plain lattice.
    3. L infinite of canonical period >= 2: plain and bounded lattices agree.

    Canonical forms matter: ``{0,1} + 2N`` has period 2 as written but is N.
    """
    rep = SuiteReport("lattice-facts")
    empty, nat = UpSet.empty(), UpSet.naturals()
    for L in all_upsets(a_max, k_max):
        plain = latt_suc(L, "plain")
        bounded = latt_suc(L, "bounded")
        key = f"lattice-facts:{L}"
        res = {}
        if L.is_finite() or L.k >= 2:
            res["empty_in_plain"] = empty in plain
        if not L.is_finite():
            res["naturals_in_plain"] = nat in plain
        if not L.is_finite() and L.k >= 2:
            res["bounds_redundant"] = set(plain.members) == set(bounded.members)
        rep.instances.append({"key": key, **res})
        for c, ok in res.items():
            if not ok:
                rep.failures.append({"key": key, "set": str(L), "violated": c})
    rep.notes = {"a_max": a_max, "k_max": k_max, "sets": len(rep.instances)}
    return rep


def progression_generators_report(k_max: int = 6) -> SuiteReport:
    """For L = b + kN with k > b, the decrements of L are exactly the classes a + kN, a < k."""
    rep = SuiteReport("progression-generators")
    for k in range(1, k_max + 1):
        for b in range(k):
            L = UpSet.progression(b, k)
            seen, cur = set(), L
            while cur not in seen:
                seen.add(cur)
                cur = cur.suc_preimage(1)
            expected = {UpSet.progression(a, k) for a in range(k)}
            rep.instances.append({"key": f"generators:{b}+{k}N", "ok": seen == expected})
            if seen != expected:
                rep.failures.append({"key": f"generators:{b}+{k}N", "violated": "generator set"})
    return rep


def syntactic_formula_report(a_max: int = 6, k_max: int = 6) -> SuiteReport:
    rep = SuiteReport("syntactic-formula")
    for a in range(a_max + 1):
        for k in range(1, k_max + 1):
            got = syntactic_cong_up(UpSet.progression(a, k))
            want = (max(0, a - k + 1), k)
            key = f"syn:{a}+{k}N"
            rep.instances.append({"key": key, "got": str(got)})
            if (got.a, got.k) != want:
                rep.failures.append({"key": key, "got": str(got), "want": list(want)})
    return rep


def agreement_report(fs: Sequence[NatFun], a_max: int = 6, k_max: int = 6) -> SuiteReport:
    """Dual-path and triple-path agreement of the congruence and preorder checks."""
    rep = SuiteReport("agreement")
    for f in fs:
        cp, dual = bool(check_cp_nat(f, a_max, k_max)), bool(check_cp_dual(f))
        spp, triple = bool(check_spp_nat(f, a_max, k_max)), bool(check_spp_triple(f, a_max, k_max))
        abc = bool(check_clause_a(f) and check_clause_b(f, flat=True) and check_clause_c(f))
        entry = {"key": f"fn:{f.label}", "cp": cp, "arith_ab": dual, "spp": spp, "cp_and_c": triple, "arith_abc": abc}
        rep.instances.append(entry)
        if cp != dual:
            rep.failures.append({**entry, "violated": "CongPres vs clauses (a),(b flat)"})
        if not spp == triple == abc:
            rep.failures.append({**entry, "violated": "PreordPres vs CongPres+monotone vs (a),(b flat),(c)"})
    rep.notes = {"window": fs[0].N if fs else 0, "a_max": a_max, "k_max": k_max}
    return rep


def lattice_test_sets(q_max: int = 6, r_max: int = 4, seg_max: int = 24) -> list[UpSet]:
    sets = {UpSet.progression(q, r) for q in range(q_max + 1) for r in range(r_max + 1)}
    sets |= {UpSet.final_segment(q) for q in range(seg_max + 1)}
    sets |= {UpSet.of_finite({x, x + 2}) for x in range(q_max)}
    return sorted(sets, key=lambda s: (s.a, s.k, sorted(s.finite), sorted(s.residues)))


def lattice_report(fs: Sequence[NatFun], sets: Sequence[UpSet] | None = None, seg_limit: int | None = None) -> SuiteReport:
    """Windowed lattice conditions against the arithmetic conditions.

    A refutation is conclusive, a consistent verdict is only evidence, so
    the checks are one-sided:

    - a function meeting clauses (a), (b flat) and (c) is never refuted, in
      the bounded lattice, nor in the plain one unless it is constant;
    - conditions (4) and (5) give the same verdict;
    - a descent ``f(x) < f(b)`` with ``b < x`` is refuted by ``f(b) + N``
      (the construction behind monotonicity); ``seg_limit`` optionally caps ``f(b)``.
    """
    rep = SuiteReport("lattice")
    sets = list(sets) if sets is not None else lattice_test_sets()
    untestable = 0
    for f in fs:
        constant = len(set(f.values)) <= 1
        cond5 = [theoremA_lattice_conditions(f, L, "bounded") for L in sets]
        cond4 = constant or all(theoremA_lattice_conditions(f, L, "plain") for L in sets)
        ok5 = all(cond5)
        abc = bool(check_clause_a(f) and check_clause_b(f, flat=True) and check_clause_c(f))
        entry = {"key": f"fn:{f.label}", "cond4": cond4, "cond5": ok5, "arith_abc": abc}
        refuting = next((v for v in cond5 if not v), None)
        if refuting is not None:
            entry["refuted_by"] = refuting.set
        if abc and not (ok5 and cond4):
            rep.failures.append({**entry, "violated": "(6) holds on the window but (4) or (5) is refuted"})
        if cond4 != ok5:
            rep.failures.append({**entry, "violated": "(4) vs (5)"})
        descent = _small_descent(f, seg_limit)
        if descent is not None:
            b, x = descent
            v = theoremA_lattice_conditions(f, UpSet.final_segment(f(b)), "bounded")
            entry["descent"] = [b, x]
            if v:
                rep.failures.append({**entry, "violated": f"descent f({b}) > f({x}) not refuted by {v.set}"})
        elif not check_clause_c(f):
            untestable += 1
        rep.instances.append(entry)
    rep.notes = {"test_sets": len(sets), "descents_above_limit": untestable, "seg_limit": seg_limit}
    return rep


def _small_descent(f: NatFun, limit: int | None) -> tuple[int, int] | None:
    for b in range(f.N):
        if limit is None or f(b) <= limit:
            for x in range(b + 1, f.N):
                if f(x) < f(b):
                    return b, x
    return None


@_timed
def verify_nat_suite(window: int = 32, seed: int = 0, a_max: int = 6, k_max: int = 6, facts_bound: int = 5) -> SuiteReport:
    rep = SuiteReport("nat")
    fs = corpus(window, seed)
    parts = [
        agreement_report(fs, a_max, k_max),
        lattice_facts_report(facts_bound, facts_bound),
        progression_generators_report(),
        syntactic_formula_report(),
        lattice_report(fs),
    ]
    for part in parts:
        rep.merge(part)
    rep.notes = {p.name: {"instances": len(p.instances), "failures": len(p.failures)} for p in parts}
    rep.notes.update({"window": window, "seed": seed, "corpus": len(fs)})
    return rep
