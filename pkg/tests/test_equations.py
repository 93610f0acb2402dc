"""Solution sets, equation theories and the Sol-Eq Galois closure."""

import random
from itertools import product

import pytest

from latclone import catalog, terms
from latclone.equations import (
    EquationSystem,
    equations_of,
    galois_closure,
    is_solution_set,
    solve,
)
from latclone.errors import LimitExceeded
from latclone.formulas import parse_formula, eval_formula
from latclone.operations import (
    OpTable,
    Relation,
    centralizer_slice,
    clone_slice,
    generators,
    graph,
    meet_op,
    pad_and_identify,
    preserves,
    projection,
)

C2 = catalog.chain(2)
C3 = catalog.chain(3)
B2 = catalog.boolean_lattice(2)
N5 = catalog.pentagon()
M3 = catalog.diamond()


def random_system(rng, lattice, mode, arity, count):
    ops = clone_slice(generators(lattice, mode), arity)
    pairs = [(rng.choice(ops), rng.choice(ops)) for _ in range(count)]
    return EquationSystem(arity, lattice.size, pairs)


def test_empty_system_solves_to_full_relation():
    system = EquationSystem(2, 3, [])
    assert solve(system, C3) == Relation.full(2, 3)


def test_meet_equals_join_forces_equality():
    system = EquationSystem.from_terms(
        [(terms.Meet(terms.Var("x"), terms.Var("y")),
          terms.Join(terms.Var("x"), terms.Var("y")))], ("x", "y"), C2)
    assert solve(system, C2).tuples == ((0, 0), (1, 1))


def test_absorption_equation_solves_to_the_order():
    system = EquationSystem.from_terms(
        [(terms.Meet(terms.Var("x"), terms.Var("y")), terms.Var("x"))], ("x", "y"), N5)
    expected = [(a, b) for a in range(5) for b in range(5) if N5.leq(a, b)]
    solved = solve(system, N5)
    assert solved.tuples == tuple(sorted(expected))
    assert len(solved) == 13  # 5 reflexive pairs plus 8 strict ones


def test_solve_matches_brute_force_on_random_systems():
    rng = random.Random(99)
    for lattice in (C3, B2, N5):
        system = random_system(rng, lattice, "lattice", 2, 3)
        expected = []
        for a in product(range(lattice.size), repeat=2):
            if all(f(*a) == g(*a) for f, g in system):
                expected.append(a)
        assert solve(system, lattice).tuples == tuple(expected)


def test_full_relation_separates_distinct_tables():
    theory = equations_of(Relation.full(2, C2.size), generators(C2, "lattice"))
    assert len(theory.ops) == 4
    assert all(len(block) == 1 for block in theory.blocks)


def test_theory_satisfies_reflects_blocks():
    # over the diagonal every operation agrees with every other
    diag = Relation(2, 2, [(0, 0), (1, 1)])
    theory = equations_of(diag, generators(C2, "lattice"))
    assert len(theory.blocks) == 1
    ops = theory.ops
    assert all(theory.satisfies(f, g) for f in ops for g in ops)
    separated = equations_of(Relation.full(2, 2), generators(C2, "lattice"))
    assert all(separated.satisfies(f, g) == (f == g)
               for f in separated.ops for g in separated.ops)


def test_pair_witness_theory_on_pentagon_is_trivial():
    phi = parse_formula("exists u . (u /\\ x = u /\\ y & u \\/ x = u \\/ y)",
                        variables=("x", "y"))
    T = eval_formula(phi, N5)
    theory = equations_of(T, generators(N5, "lattice"))
    assert len(theory.ops) == 4
    assert all(len(block) == 1 for block in theory.blocks)
    assert theory.closure() == Relation.full(2, 5)
    # the figure's pairs falsify every candidate equation between the four
    # binary term operations: they are members of T that separate all blocks
    assert (1, 2) in T and (2, 1) in T and (0, 4) not in T


def test_topless_witness_theory_is_trivial():
    fence = catalog.fence()
    phi = parse_formula("exists u . (x /\\ u = x & y /\\ u = y)", variables=("x", "y"),
                        mode="semilattice")
    T = eval_formula(phi, fence)
    theory = equations_of(T, [meet_op(fence)])
    assert len(theory.ops) == 3  # x, y, x /\ y
    assert all(len(block) == 1 for block in theory.blocks)
    # a maximal element against the bottom falsifies all three candidates
    a = 3
    assert (a, 0) in T and (0, a) in T
    e1, e2 = projection(2, 1, 4), projection(2, 2, 4)
    m = meet_op(fence)
    assert e1(a, 0) != e2(a, 0)
    assert e1(a, 0) != m(a, 0)
    assert e2(0, a) != m(0, a)


def test_galois_closure_of_solution_set_is_itself():
    rng = random.Random(4)
    for _ in range(5):
        system = random_system(rng, C3, "lattice", 2, 2)
        T = solve(system, C3)
        assert galois_closure(T, generators(C3, "lattice")) == T
        verdict, certificate = is_solution_set(T, generators(C3, "lattice"))
        assert verdict is True
        assert solve(certificate, C3) == T


def test_median_excess_witness_on_chain():
    # the ternary witness over the three-element chain misses (0, m, 1) and
    # closes to the whole cube
    from latclone.sdc import witness_boolean_gap
    T = witness_boolean_gap(C3)
    assert (0, 1, 2) not in T
    assert (0, 0, 2) in T
    closure = galois_closure(T, generators(C3, "lattice"))
    assert closure == Relation.full(3, 3)
    verdict, gap = is_solution_set(T, generators(C3, "lattice"))
    assert verdict is False
    assert gap in closure and gap not in T


def test_meet_witness_certificate_satisfies_surviving_equation():
    from latclone.sdc import witness_semilattice
    reduct = catalog.meet_reduct(N5)
    T = witness_semilattice(reduct)
    verdict, gap = is_solution_set(T, [meet_op(reduct)])
    assert verdict is False
    x, y, z = gap
    meet = reduct.meet
    assert meet[y][z] == meet[meet[x][y]][z]
    assert gap not in T


def test_blockwise_solutions_contain_the_relation():
    rng = random.Random(17)
    T = Relation(2, 5, [tuple(rng.randrange(5) for _ in range(2)) for _ in range(6)])
    theory = equations_of(T, generators(N5, "lattice"))
    for block in theory.blocks:
        if len(block) < 2:
            continue
        rep = theory.ops[block[0]]
        pairs = [(rep, theory.ops[i]) for i in block[1:]]
        block_solution = solve(EquationSystem(2, 5, pairs), N5)
        assert T.issubset(block_solution)


def test_padding_bridge_solution_set_is_the_graph():
    rng = random.Random(31)
    for _ in range(5):
        f = OpTable(2, 3, [rng.randrange(3) for _ in range(9)])
        padded = pad_and_identify(f, 3, (1, 2))
        system = EquationSystem(3, 3, [(padded, projection(3, 3, 3))])
        assert solve(system, C3) == graph(f)


def test_closure_laws_extensive_monotone_idempotent():
    rng = random.Random(55)
    pool = [(C3, "lattice"), (B2, "lattice"), (N5, "lattice"),
            (M3, "semilattice"), (C3, "semilattice")]
    for _ in range(10):
        lattice, mode = rng.choice(pool)
        n = rng.randint(1, 3)
        gens = generators(lattice, mode)
        small = Relation(n, lattice.size,
                         [tuple(rng.randrange(lattice.size) for _ in range(n))
                          for _ in range(rng.randint(0, 4))])
        extra = Relation(n, lattice.size,
                         list(small) + [tuple(rng.randrange(lattice.size) for _ in range(n))])
        close_small = galois_closure(small, gens)
        close_extra = galois_closure(extra, gens)
        assert small.issubset(close_small)
        assert close_small.issubset(close_extra)
        assert galois_closure(close_small, gens) == close_small


def test_solution_sets_are_closed_under_the_centralizer():
    rng = random.Random(77)
    for lattice in (C3, B2):
        gens = generators(lattice, "lattice")
        slices = {k: centralizer_slice(gens, k) for k in (1, 2)}
        for _ in range(5):
            system = random_system(rng, lattice, "lattice", 2, 2)
            T = solve(system, lattice)
            for k in (1, 2):
                for f in slices[k]:
                    assert preserves(f, T)[0]


def test_limit_degrades_to_unknown():
    T = Relation(3, 5, [(0, 1, 2)])
    with pytest.raises(LimitExceeded):
        equations_of(T, generators(N5, "lattice"), limit=20)
    assert is_solution_set(T, generators(N5, "lattice"), limit=20) == (None, None)
