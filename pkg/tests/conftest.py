import itertools

from hypothesis import settings, strategies as st

from congpres.algebra import FiniteAlgebra, Operation, PreorderRel, transitive_closure
from congpres.upset import UpSet

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def algebras(draw, max_size=4, max_ops=2, max_arity=2):
    n = draw(st.integers(1, max_size))
    ops = []
    for i in range(draw(st.integers(0, max_ops))):
        arity = draw(st.integers(0, max_arity))
        table = draw(st.lists(st.integers(0, n - 1), min_size=n**arity, max_size=n**arity))
        ops.append(Operation(f"o{i}", arity, tuple(table)))
    return FiniteAlgebra(n, tuple(ops))


@st.composite
def algebra_with_subset(draw, **kw):
    alg = draw(algebras(**kw))
    return alg, draw(st.integers(0, (1 << alg.size) - 1))


@st.composite
def algebra_with_unary(draw, **kw):
    alg = draw(algebras(**kw))
    f = tuple(draw(st.lists(st.integers(0, alg.size - 1), min_size=alg.size, max_size=alg.size)))
    return alg, f


def preorders(n):
    """A random preorder on n points: the reflexive-transitive closure of random pairs."""
    return st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n * n).map(
        lambda ps: PreorderRel(transitive_closure(PreorderRel.from_pairs(n, ps).rows))
    )


@st.composite
def upsets(draw, max_a=6, max_k=6):
    a = draw(st.integers(0, max_a))
    k = draw(st.integers(1, max_k))
    F = draw(st.frozensets(st.integers(0, max(a - 1, 0)), max_size=a)) if a else frozenset()
    D = draw(st.frozensets(st.integers(0, k - 1), max_size=k))
    return UpSet(a, k, frozenset(x for x in F if x < a), D)


def all_tables(n, arity):
    return itertools.product(range(n), repeat=n**arity)


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
