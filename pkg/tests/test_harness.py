import itertools
import json
import random

import pytest
from hypothesis import given

from congpres.algebra import FiniteAlgebra, Operation, freez_star
from congpres.closure import PreconditionError
from congpres.harness import (
    TABLE1_ARROWS,
    TABLE1_EQUIVALENCES,
    SuiteReport,
    _collapse_report,
    agreement_report,
    progression_generators_report,
    cyclic_group,
    random_algebra,
    ring_tables,
    run_table1_suite,
    syntactic_formula_report,
    table1_conditions,
    two_element_algebras,
    verify_group_collapse,
    verify_ring_collapse,
    verify_nat_suite,
    verify_table1,
)
from congpres.arith import NatFun, zigzag_g

from conftest import algebra_with_unary


def test_diagram_shape():
    assert len(TABLE1_ARROWS) == 8 and len(TABLE1_EQUIVALENCES) == 4
    names = {p for _, p, q in TABLE1_ARROWS + TABLE1_EQUIVALENCES} | {q for _, p, q in TABLE1_ARROWS + TABLE1_EQUIVALENCES}
    assert len(names) == 8


def test_two_element_one_binary_exhaustive():
    algs = two_element_algebras()
    assert len(algs) == 16
    for alg in algs:
        for f in itertools.product(range(2), repeat=2):
            assert verify_table1(alg, f).passed


def test_order_reversal_is_a_converse_failure():
    alg = FiniteAlgebra(2, ())
    cond = table1_conditions(alg, (1, 0))
    assert cond["CongPres"] and not cond["PreordPres"]
    rep = verify_table1(alg, (1, 0))
    assert rep.passed and rep.converse_failures


@given(algebra_with_unary(max_size=3))
def test_table1_on_random_instances(case):
    alg, f = case
    assert verify_table1(alg, f).passed


@given(algebra_with_unary(max_size=3))
def test_freez_star_maps_satisfy_everything(case):
    alg, _ = case
    for g in freez_star(alg)[:4]:
        assert verify_table1(alg, g.image, expect_all=True).passed


def test_table1_detects_a_planted_violation(monkeypatch):
    import congpres.harness as h

    real = h.table1_conditions

    def broken(alg, f):
        cond = real(alg, f)
        cond["CongPres"] = not cond["PreordPres"]
        return cond

    monkeypatch.setattr(h, "table1_conditions", broken)
    rep = verify_table1(FiniteAlgebra(2, ()), (0, 1))
    assert not rep.passed


def test_random_algebra_is_seeded():
    a = [random_algebra(random.Random(5)) for _ in range(2)]
    assert a[0] == a[1]
    assert 1 <= len(a[0].operations) <= 2 and all(op.arity <= 2 for op in a[0].operations)


def test_small_table1_suite_report_is_deterministic():
    r1 = run_table1_suite(seed=3, bound=3, random_count=10)
    r2 = run_table1_suite(seed=3, bound=3, random_count=10)
    assert r1.passed
    assert json.dumps(r1.to_dict(), sort_keys=True) == json.dumps(r2.to_dict(), sort_keys=True)
    assert "wall_time" not in r1.to_dict() and "wall_time" in r1.to_dict(timing=True)


def test_group_collapse_examples():
    assert verify_group_collapse(cyclic_group(4)).passed
    with pytest.raises(PreconditionError):
        verify_group_collapse(FiniteAlgebra.build(2, [("and", 2, [0, 0, 0, 1])]))


def test_collapse_check_can_fail():
    # the two-element meet semilattice has the stable order 0 <= 1
    rep = _collapse_report("meet", FiniteAlgebra.build(2, [("and", 2, [0, 0, 0, 1])]), check_order=True)
    assert not rep.passed


def test_ring_collapse_examples():
    assert verify_ring_collapse(*ring_tables(4)).passed
    neg = Operation("neg", 1, (0, 2, 1))
    assert verify_ring_collapse(*ring_tables(3), extras=[neg]).passed
    n = 4
    sat_add = [min(x + y, n - 1) for x in range(n) for y in range(n)]
    sat_mul = [min(x * y, n - 1) for x in range(n) for y in range(n)]
    with pytest.raises(PreconditionError):
        verify_ring_collapse(sat_add, sat_mul)


def test_nat_reports_small():
    assert syntactic_formula_report(3, 3).passed
    assert progression_generators_report(4).passed
    fs = [NatFun.tabulate(lambda x: x, 16, "id"), zigzag_g(16)]
    assert agreement_report(fs).passed


def test_suite_report_merge():
    a, b = SuiteReport("x"), SuiteReport("y")
    b.instances.append({"key": "k"})
    b.failures.append({"key": "k"})
    a.merge(b)
    assert not a.passed and a.to_dict()["instance_count"] == 1


def test_nat_suite_reduced():
    rep = verify_nat_suite(window=20, facts_bound=3)
    assert rep.passed and rep.notes["corpus"] == 118
