import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from congpres.algebra import PreorderRel
from congpres.arith import (
    NatFun,
    WINDOW_CONSISTENT,
    WINDOW_REFUTED,
    WindowTooSmall,
    arith_abc,
    check_clause_a,
    check_clause_b,
    check_clause_c,
    check_cp_dual,
    check_cp_nat,
    check_idr_band,
    check_idr_divisibility,
    check_spp_nat,
    check_spp_triple,
    floor_e_fact_fun,
    floor_e_factorial,
    idr_approximant,
    lcm_upto,
    newton_coefficients,
    newton_eval,
    theoremA_lattice_conditions,
    truncation_incompatibility,
    zigzag_f,
    zigzag_g,
)
from congpres.nat import truncate_preorder
from congpres.upset import UpSet

values = st.lists(st.integers(0, 60), min_size=2, max_size=14)


def tab(fn, N=16, label="f"):
    return NatFun.tabulate(fn, N, label)


def test_clause_examples():
    assert check_clause_a(tab(lambda x: x))
    cubic = tab(lambda x: x * (x - 1) * (x - 2))
    assert check_clause_a(cubic) and not check_clause_b(cubic)
    v = check_clause_a(tab(lambda x: (x * x + x) % 3))
    assert not v and v.witness == (0, 4)  # values 0, 2, 0, 0, 2
    const = tab(lambda x: 4)
    assert check_clause_b(const, flat=True) and not check_clause_b(const)
    assert not check_clause_b(tab(lambda x: max(0, x - 1)), flat=True)
    assert check_clause_c(const) and not check_clause_c(zigzag_g(12))


@given(values)
def test_clause_a_witness_is_least(vs):
    f = NatFun(tuple(vs))
    v = check_clause_a(f)
    bad = [(x, y) for x in range(f.N) for y in range(x + 1, f.N) if (vs[y] - vs[x]) % (y - x)]
    assert v.ok == (not bad)
    if bad:
        assert v.witness == min(bad)


@given(values)
def test_clause_a_is_compatibility_with_all_mod_k(vs):
    f = NatFun(tuple(vs))
    assert bool(check_clause_a(f)) == bool(check_cp_nat(f, 0, f.N - 1))


@given(values, st.integers(0, 4), st.integers(1, 4))
def test_cp_one_sided_against_arith(vs, a_max, k_max):
    f = NatFun(tuple(vs) + (0,) * max(0, a_max + k_max + 1 - len(vs)))
    if check_cp_dual(f):
        assert check_cp_nat(f, a_max, k_max)
    if check_spp_nat(f, a_max, k_max, max_index=4):
        assert check_spp_triple(f, a_max, k_max)


def test_cp_examples():
    assert check_cp_nat(tab(lambda x: 2 * x, 32))
    assert check_cp_nat(tab(lambda x: x, 32))
    f = tab(lambda x: x + x % 2, 32)
    # pinned by running both paths: f(3) - f(0) = 4 is not a multiple of 3
    assert check_clause_a(f).witness == (0, 3)
    assert bool(check_cp_nat(f)) == bool(check_cp_dual(f)) is False
    with pytest.raises(WindowTooSmall):
        check_cp_nat(tab(lambda x: x, 10), 6, 6)


def test_bounded_cp_cannot_see_late_clause_b_failure():
    # 100 - x satisfies clause (a); clause (b) first fails at 51 where every value is still >= 37
    f = tab(lambda x: 100 - x, 64)
    assert check_clause_a(f) and check_cp_dual(f).witness == 51
    assert check_cp_nat(f, 6, 6)
    v = check_cp_nat(f, 40, 1)
    assert not v and v.witness == ((38, 1), (38, 63))


def test_spp_examples():
    assert check_spp_nat(tab(lambda x: x, 24))
    zz = check_spp_nat(zigzag_g(24))
    assert not zz and zz.witness[0] == "truncation"
    assert check_spp_nat(floor_e_fact_fun(14))


def _explicit_truncation_ok(f, N):
    N = max(N, max(f.values) + 2)
    le = PreorderRel(tuple(sum(1 << y for y in range(x, N)) for x in range(N)))
    ge = PreorderRel(tuple(sum(1 << y for y in range(0, x + 1)) for x in range(N)))
    for n in range(max(f.values) + 2):
        for p in (truncate_preorder(le, n), truncate_preorder(ge, n, side="down")):
            for x in range(f.N):
                for y in range(f.N):
                    if p.related(x, y) and not p.related(f(x), f(y)):
                        return False
    return True


@given(st.lists(st.integers(0, 9), min_size=2, max_size=7))
def test_truncation_closed_form(vs):
    f = NatFun(tuple(vs))
    assert (truncation_incompatibility(f) is None) == _explicit_truncation_ok(f, f.N)


def test_newton_examples():
    assert newton_coefficients(tab(lambda x: 7, 6)) == (7, 0, 0, 0, 0, 0)
    assert newton_coefficients(tab(lambda x: x * x, 5)) == (0, 1, 2, 0, 0)
    assert newton_coefficients(tab(lambda x: math.comb(x, 3), 6)) == (0, 0, 0, 1, 0, 0)


@given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=12))
def test_newton_round_trip(vs):
    coeffs = newton_coefficients(vs)
    assert [newton_eval(coeffs, x) for x in range(len(vs))] == vs


def test_lcm_values():
    assert [lcm_upto(x) for x in range(7)] == [1, 1, 2, 6, 12, 60, 60]


def test_idr_examples():
    c = tab(lambda x: 9, 16)
    assert idr_approximant(c).values == c.values
    f = tab(lambda x: math.comb(x, 3), 20)
    g = idr_approximant(f)
    assert set(g.values) == {0}
    assert check_idr_divisibility(g) and check_idr_band(f, g)
    f = tab(lambda x: x**3 + 1, 16)
    g = idr_approximant(f)
    assert check_idr_divisibility(g) and check_idr_band(f, g)


@given(st.lists(st.integers(0, 10**6), min_size=1, max_size=14))
def test_idr_contracts(vs):
    f = NatFun(tuple(vs))
    g = idr_approximant(f)
    assert check_idr_divisibility(g) and check_idr_band(f, g)


@pytest.mark.parametrize("p", range(9))
def test_zigzag_identities(p):
    f, L = zigzag_f, lcm_upto
    assert f(2 * p + 2) - f(2 * p + 1) == 2 ** (2 * p + 5) * L(2 * p + 4)
    assert f(2 * p + 1) - f(2 * p) == -(2 ** (2 * p + 2)) * L(2 * p + 1)
    assert f(2 * p) >= 2 ** (2 * p + 3) * L(2 * p + 2)
    for x in (2 * p, 2 * p + 1):
        assert f(x) >= 2 ** (x + 1) * L(x)
    g = zigzag_g(2 * p + 3)
    assert g(2 * p + 1) - g(2 * p) <= -(2 ** (2 * p + 2)) * L(2 * p + 1) + 2 ** (2 * p) * L(2 * p) < 0
    assert g(2 * p + 2) - g(2 * p + 1) >= 2 ** (2 * p + 5) * L(2 * p + 4) - 2 ** (2 * p + 2) * L(2 * p + 2) > 0


def test_zigzag_g_window():
    assert zigzag_f(0) == 16
    g = zigzag_g(24)
    assert g.values[:5] == (16, 12, 396, 298, 7968)
    assert all(g(x) > x for x in range(24))
    assert check_clause_a(g) and check_cp_dual(g) and check_cp_nat(g)
    assert not check_clause_c(g)


def test_floor_e_values():
    assert [floor_e_factorial(x) for x in range(4)] == [1, 2, 5, 16]
    mpmath.mp.dps = 50
    for x in range(1, 21):
        assert floor_e_factorial(x) == int(mpmath.floor(mpmath.e * mpmath.factorial(x)))


def test_floor_e_recurrence():
    vals = [floor_e_factorial(x) for x in range(22)]
    assert all(vals[x + 1] == (x + 1) * vals[x] + 1 for x in range(1, 21))
    # the subtractive form fails already at x = 1
    assert vals[2] != 2 * vals[1] - 1


def test_floor_e_satisfies_all_clauses():
    f = floor_e_fact_fun(14)
    assert check_clause_a(f) and check_clause_b(f) and check_clause_b(f, flat=True) and check_clause_c(f)
    assert arith_abc(f)


def test_lattice_condition_examples():
    ident = tab(lambda x: x, 16)
    for L in (UpSet.progression(2, 3), UpSet.of_finite({1, 4}), UpSet.final_segment(3)):
        assert theoremA_lattice_conditions(ident, L).label == WINDOW_CONSISTENT
    const = tab(lambda x: 5, 16)
    v = theoremA_lattice_conditions(const, UpSet.progression(2, 3), "bounded")
    assert v and v.member == "N"
    # zigzag: g(1) < g(0) so the final segment from g(0) pulls back to a set missing 1
    g = zigzag_g(12)
    v = theoremA_lattice_conditions(g, UpSet.final_segment(g(0)), "bounded")
    assert v.label == WINDOW_REFUTED
