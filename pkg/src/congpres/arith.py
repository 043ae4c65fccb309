"""Exact checks on functions N -> N known on a finite window.

Every verdict is about the window ``[0, N)`` only.  All arithmetic is on
Python integers; nothing here touches floating point.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .nat import ArithCong, iter_lasso_pullbacks, latt_suc
from .upset import UpSet, describe_upset

DEFAULT_WINDOW = 32
BIGINT_WINDOW = 16


class WindowTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class NatFun:
    values: tuple[int, ...]
    label: str = "f"

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @classmethod
    def tabulate(cls, fn: Callable[[int], int], N: int, label: str = "f") -> NatFun:
        return cls(tuple(fn(x) for x in range(N)), label)

    @property
    def N(self) -> int:
        return len(self.values)

    def __call__(self, x: int) -> int:
        return self.values[x]

    def is_natural(self) -> bool:
        return all(v >= 0 for v in self.values)

    def restrict(self, N: int) -> NatFun:
        if N > self.N:
            raise WindowTooSmall(f"{self.label} is known on {self.N} points, {N} requested")
        return NatFun(self.values[:N], self.label)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: object = None
    window: int = 0
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


# --------------------------------------------------------------------------
# clauses (a), (b), (c)
# --------------------------------------------------------------------------

def check_clause_a(f: NatFun) -> Verdict:
    """``y - x`` divides ``f(y) - f(x)`` for all ``x < y`` in the window."""
    v = f.values
    for x in range(f.N):
        for y in range(x + 1, f.N):
            if (v[y] - v[x]) % (y - x):
                return Verdict(False, (x, y), f.N, f"{y - x} does not divide f({y})-f({x})")
    return Verdict(True, None, f.N)


def check_clause_b(f: NatFun, flat: bool = False) -> Verdict:
    """``f(x) >= x`` throughout; with ``flat`` a constant function also passes."""
    if flat and len(set(f.values)) <= 1:
        return Verdict(True, None, f.N, "constant")
    for x, fx in enumerate(f.values):
        if fx < x:
            return Verdict(False, x, f.N, f"f({x}) = {fx} < {x}")
    return Verdict(True, None, f.N)


def check_clause_c(f: NatFun) -> Verdict:
    v = f.values
    for x in range(f.N - 1):
        if v[x] > v[x + 1]:
            return Verdict(False, x, f.N, f"f({x}) > f({x + 1})")
    return Verdict(True, None, f.N)


def arith_abc(f: NatFun, flat: bool = False) -> bool:
    return bool(check_clause_a(f) and check_clause_b(f, flat) and check_clause_c(f))


# --------------------------------------------------------------------------
# compatibility with relations of N
# --------------------------------------------------------------------------

def _require_window(f: NatFun, a_max: int, k_max: int) -> None:
    if a_max + k_max >= f.N:
        raise WindowTooSmall(f"need a_max + k_max < N, got {a_max} + {k_max} >= {f.N}")


def _arith_incompatibility(f: NatFun, c: ArithCong) -> tuple[int, int] | None:
    # only x, y >= a can be related; group them by residue
    a, k = c.a, c.k
    assert a is not None
    by_res: dict[int, int] = {}
    for x in range(a, f.N):
        r = (x - a) % k
        if r not in by_res:
            by_res[r] = x
            continue
        x0 = by_res[r]
        if not c.relate(f.values[x0], f.values[x]):
            return x0, x
    return None


def check_cp_nat(f: NatFun, a_max: int = 6, k_max: int = 6) -> Verdict:
    """Compatibility with ``=_{a,k}`` for every ``a <= a_max``, ``1 <= k <= k_max``.

    Related pairs inside one class are tested against the class's first
    member; that suffices since the image relation is an equivalence.
    """
    _require_window(f, a_max, k_max)
    for a in range(a_max + 1):
        for k in range(1, k_max + 1):
            bad = _arith_incompatibility(f, ArithCong.pair(a, k))
            if bad is not None:
                return Verdict(False, ((a, k), bad), f.N, f"breaks ≡_{{{a},{k}}} at {bad}")
    return Verdict(True, None, f.N)


def check_cp_dual(f: NatFun) -> Verdict:
    """The arithmetic side: clause (a) together with the flat clause (b)."""
    a = check_clause_a(f)
    if not a:
        return a
    return check_clause_b(f, flat=True)


def _pullback_incompatibility(f: NatFun, p) -> tuple[int, int] | None:
    project = p.base.project
    images: dict[int, set[int]] = {}
    first: dict[tuple[int, int], int] = {}
    for x, fx in enumerate(f.values):
        c, d = project(x), project(fx)
        images.setdefault(c, set()).add(d)
        first.setdefault((c, d), x)
    Q = p.quotient_rel
    for i, Si in images.items():
        for j, Sj in images.items():
            if not Q.related(i, j):
                continue
            for u in Si:
                for v in Sj:
                    if not Q.related(u, v):
                        return first[(i, u)], first[(j, v)]
    return None


def truncation_incompatibility(f: NatFun) -> tuple[int, int] | None:
    """A violated pair for some truncated order, in closed form.

    The relations ``<= | {(x,y) : y >= n}`` and ``>= | {(x,y) : x >= n}``,
    for all ``n``, are suc-stable preorders of index ``n + 1``.  Working
    through the definitions, ``f`` is compatible with all of them iff ``f``
    is non-decreasing and, whenever ``f(x) < x``, ``f`` is constant from
    ``x`` on.  The returned pair ``(x, y)`` has ``x < y`` and ``f(x) > f(y)``,
    or ``f(x) < x`` and ``f(y) != f(x)``.
    """
    v = f.values
    for x in range(f.N - 1):
        if v[x] > v[x + 1]:
            return x, x + 1
    for x in range(f.N):
        if v[x] < x:
            for y in range(x + 1, f.N):
                if v[y] != v[x]:
                    return x, y
            break
    return None


def check_spp_nat(f: NatFun, a_max: int = 6, k_max: int = 6, max_index: int = 6) -> Verdict:
    """Compatibility with a family of finite-index suc-stable preorders of N.

    The family: every pullback from a lasso with ``a + k <= max_index``,
    every ``=_{a,k}`` with ``a <= a_max`` and ``k <= k_max``, and the two
    truncated-order families of :func:`truncation_incompatibility`.  Pullbacks
    alone cannot see order among large values, since every finite-index
    stable preorder is symmetric on the cycle of its lasso.
    """
    _require_window(f, a_max, k_max)
    cp = check_cp_nat(f, a_max, k_max)
    if not cp:
        return Verdict(False, cp.witness, f.N, cp.detail)
    bad = truncation_incompatibility(f)
    if bad is not None:
        return Verdict(False, ("truncation", bad), f.N, f"breaks a truncated order at {bad}")
    for p in iter_lasso_pullbacks(max_index):
        bad = _pullback_incompatibility(f, p)
        if bad is not None:
            return Verdict(False, (str(p), bad), f.N, f"breaks {p} at {bad}")
    return Verdict(True, None, f.N)


def check_spp_triple(f: NatFun, a_max: int = 6, k_max: int = 6) -> Verdict:
    """Congruence preservation together with monotonicity."""
    cp = check_cp_nat(f, a_max, k_max)
    if not cp:
        return cp
    return check_clause_c(f)


# --------------------------------------------------------------------------
# Newton representation and the lcm approximant
# --------------------------------------------------------------------------

def newton_coefficients(f: NatFun | Sequence[int]) -> tuple[int, ...]:
    """Forward differences at 0: ``f(x) = sum_k a_k * C(x, k)`` on the window."""
    row = list(f.values if isinstance(f, NatFun) else f)
    coeffs = []
    while row:
        coeffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return tuple(coeffs)


def newton_eval(coeffs: Sequence[int], x: int) -> int:
    return sum(c * math.comb(x, k) for k, c in enumerate(coeffs[: x + 1]))


def lcm_upto(x: int) -> int:
    """lcm(1, ..., x), with lcm(0) = 1."""
    return math.lcm(*range(1, x + 1)) if x > 0 else 1


def idr_approximant(f: NatFun, label: str | None = None) -> NatFun:
    """Round each Newton coefficient down to a multiple of lcm(k).

    Each ``lcm(k) * C(x, k)`` has ``x - y`` dividing its differences, and
    ``0 <= f - g <= sum_k (lcm(k) - 1) C(x, k) < 2^x lcm(x)``.  The values
    may be negative in general.
    """
    coeffs = [lcm_upto(k) * (a // lcm_upto(k)) for k, a in enumerate(newton_coefficients(f))]
    return NatFun(tuple(newton_eval(coeffs, x) for x in range(f.N)), label or f"idr({f.label})")


def check_idr_divisibility(g: NatFun) -> Verdict:
    """Contract (i): ``x - y`` divides ``g(x) - g(y)``."""
    return check_clause_a(g)


def check_idr_band(f: NatFun, g: NatFun) -> Verdict:
    """Contract (ii): ``f(x) - 2^x lcm(x) <= g(x) <= f(x)``."""
    for x in range(min(f.N, g.N)):
        if not f(x) - 2**x * lcm_upto(x) <= g(x) <= f(x):
            return Verdict(False, x, f.N, f"g({x}) = {g(x)} outside the band")
    return Verdict(True, None, f.N)


# --------------------------------------------------------------------------
# named examples
# --------------------------------------------------------------------------

def zigzag_f(x: int) -> int:
    """Even steps add ``2^(y+3) lcm(y+2)``, odd steps subtract ``2^(z+1) lcm(z)``."""
    total = 0
    for y in range(x + 1):
        if y % 2 == 0:
            total += 2 ** (y + 3) * lcm_upto(y + 2)
        else:
            total -= 2 ** (y + 1) * lcm_upto(y)
    return total


def zigzag_g(N: int = 24) -> NatFun:
    return idr_approximant(NatFun.tabulate(zigzag_f, N, "zigzag_f"), "zigzag_g")


def floor_e_factorial(x: int) -> int:
    """1 at 0, else floor(e * x!) computed as ``sum_{j<=x} x!/j!``.

    For x >= 1 the dropped tail ``sum_{j>x} x!/j!`` is positive, and term by
    term at most ``(x+1)^-i`` with strict inequality from the second term on,
    so it is strictly below ``1/x <= 1``.
    """
    if x == 0:
        return 1
    total, term = 0, 1
    for j in range(x, -1, -1):
        total += term  # term = x!/j!
        term *= j
    return total


def floor_e_fact_fun(N: int = 14) -> NatFun:
    return NatFun.tabulate(floor_e_factorial, N, "floor_e_fact")


# --------------------------------------------------------------------------
# lattice conditions
# --------------------------------------------------------------------------

WINDOW_CONSISTENT = "WINDOW-CONSISTENT"
WINDOW_REFUTED = "WINDOW-REFUTED"


@dataclass(frozen=True)
class LatticeVerdict:
    label: str
    window: int
    set: str
    member: str | None = None
    preimage: tuple[int, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.label == WINDOW_CONSISTENT


def theoremA_lattice_conditions(f: NatFun, L: UpSet, variant: str = "plain") -> LatticeVerdict:
    """Is ``f^-1(L)`` on the window matched by some member of ``Latt_suc(L)``?"""
    target = tuple(f(x) in L for x in range(f.N))
    pre = tuple(x for x in range(f.N) if target[x])
    if L.k == 1 and L.residues and not L.finite:
        return _final_segment_verdict(target, L, variant, pre)
    for m in latt_suc(L, variant):
        if m.window(f.N) == target:
            return LatticeVerdict(WINDOW_CONSISTENT, f.N, describe_upset(L), describe_upset(m), pre)
    return LatticeVerdict(WINDOW_REFUTED, f.N, describe_upset(L), None, pre)


def _final_segment_verdict(target: tuple[bool, ...], L: UpSet, variant: str, pre: tuple[int, ...]) -> LatticeVerdict:
    # the decrements of b+N are the final segments c+N, c <= b; they form a
    # chain, so the lattice is that chain (plus the empty set when bounded)
    N, b = len(target), L.a
    if not pre:
        if variant != "plain":
            return LatticeVerdict(WINDOW_CONSISTENT, N, describe_upset(L), "{}", pre)
        if b >= N:
            return LatticeVerdict(WINDOW_CONSISTENT, N, describe_upset(L), describe_upset(L), pre)
        return LatticeVerdict(WINDOW_REFUTED, N, describe_upset(L), None, pre)
    c = pre[0]
    if c <= b and all(target[c:]):
        return LatticeVerdict(WINDOW_CONSISTENT, N, describe_upset(L), describe_upset(UpSet.final_segment(c)), pre)
    return LatticeVerdict(WINDOW_REFUTED, N, describe_upset(L), None, pre)


def lattice_conditions_all(f: NatFun, sets: Sequence[UpSet], variant: str = "plain") -> LatticeVerdict:
    """First refutation over ``sets``, or a consistent verdict for the last one."""
    last = None
    for L in sets:
        last = theoremA_lattice_conditions(f, L, variant)
        if not last:
            return last
    assert last is not None
    return last


def progressions(q_max: int, r_max: int) -> list[UpSet]:
    return [UpSet.progression(q, r) for q in range(q_max + 1) for r in range(r_max + 1)]


# --------------------------------------------------------------------------
# corpus
# --------------------------------------------------------------------------

def corpus(N: int = DEFAULT_WINDOW, seed: int = 0) -> list[NatFun]:
    """The test functions: named examples plus seeded random ones.

    The random part mixes uniform tables (usually failing clause (a)),
    non-negative combinations of binomials (clauses (a) and (c) hold, (b)
    may fail), and lcm approximants of random tables shifted above the
    window (clauses (a) and (b) hold, monotonicity usually fails).
    """
    fs = [
        NatFun.tabulate(lambda x: x, N, "id"),
        NatFun.tabulate(lambda x: 0, N, "const:0"),
        NatFun.tabulate(lambda x: 5, N, "const:5"),
        NatFun.tabulate(lambda x: x + 3, N, "x+3"),
        NatFun.tabulate(lambda x: 2 * x, N, "2x"),
        NatFun.tabulate(lambda x: 3 * x + 1, N, "3x+1"),
        NatFun.tabulate(lambda x: x * x, N, "x^2"),
        NatFun.tabulate(lambda x: x**3 + 1, N, "x^3+1"),
        NatFun.tabulate(lambda x: x * (x - 1) * (x - 2), N, "x(x-1)(x-2)"),
        NatFun.tabulate(lambda x: math.comb(x, 3), N, "C(x,3)"),
        NatFun.tabulate(lambda x: x + x % 2, N, "x+(x mod 2)"),
        NatFun.tabulate(lambda x: max(0, x - 1), N, "x-1 clipped"),
        NatFun.tabulate(lambda x: (x * x + x) % 3, N, "(x^2+x) mod 3"),
        NatFun.tabulate(lambda x: min(x, 3), N, "min(x,3)"),
        NatFun.tabulate(lambda x: (x - 2) ** 2, N, "(x-2)^2"),
        NatFun.tabulate(lambda x: x + 5 * (x % 2), N, "x+5(x mod 2)"),
        zigzag_g(N),
        floor_e_fact_fun(N),
    ]
    rng = random.Random(seed)
    for i in range(40):
        fs.append(NatFun(tuple(rng.randrange(3 * N) for _ in range(N)), f"table#{i}"))
    for i in range(30):
        coeffs = [rng.randrange(4) for _ in range(rng.randrange(1, 5))]
        fs.append(NatFun.tabulate(lambda x, c=coeffs: sum(ci * math.comb(x, k) for k, ci in enumerate(c)), N,
                                  f"binom{coeffs}"))
    for i in range(30):
        base = NatFun(tuple(rng.randrange(4 * N) for _ in range(N)))
        g = idr_approximant(base)
        shift = max(0, -min(g.values)) + N + rng.randrange(N)
        fs.append(NatFun(tuple(v + shift for v in g.values), f"idr-table#{i}"))
    return fs

