"""Construction, validation and structure theory of finite (semi)lattices."""

from itertools import combinations, product

import pytest

from latclone import catalog
from latclone.errors import (
    AxiomViolation,
    BadSpec,
    NoGreatestElement,
    NotALattice,
    NotDistributive,
)
from latclone.lattice import (
    BooleanStructure,
    NonDistributiveMedian,
    birkhoff_embed,
    construct,
    cover_pairs,
    forbidden_sublattice,
    from_covers,
    from_meet_table,
    is_boolean,
    is_distributive,
    is_distributive_semilattice,
    join_irreducibles,
    median,
    semilattice_to_lattice,
    symdiff3,
)

from helpers import brute_distributive, brute_glb, brute_lub, order_matrix

C2 = catalog.chain(2)
C3 = catalog.chain(3)
C4 = catalog.chain(4)
B2 = catalog.boolean_lattice(2)
B3 = catalog.boolean_lattice(3)
N5 = catalog.pentagon()
M3 = catalog.diamond()
FENCE = catalog.fence()

LATTICES = [C2, C3, C4, B2, B3, N5, M3]


def test_two_element_chain_is_min_max():
    lat = construct(["0", "1"], covers=[(0, 1)])
    assert lat.meet == ((0, 0), (0, 1))
    assert lat.join == ((0, 1), (1, 1))
    assert lat.bottom == 0 and lat.top == 1


def test_pentagon_tables_match_cover_order_brute_force():
    # recompute glb/lub directly from the cover order and compare full tables
    size = 5
    leq = [[i == j for j in range(size)] for i in range(size)]
    for lo, hi in [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]:
        leq[lo][hi] = True
    for k in range(size):
        for i in range(size):
            for j in range(size):
                if leq[i][k] and leq[k][j]:
                    leq[i][j] = True
    for a in range(size):
        for b in range(size):
            assert N5.meet[a][b] == brute_glb(leq, size, a, b)
            assert N5.join[a][b] == brute_lub(leq, size, a, b)


def test_missing_lub_is_not_a_lattice():
    # two minimal upper bounds for the atoms
    with pytest.raises(NotALattice):
        from_covers(["0", "a", "b", "c", "d"],
                    [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)])
    # a valid meet table whose order has no top cannot yield joins
    with pytest.raises(NotALattice):
        from_meet_table(FENCE.names, FENCE.meet, kind="lattice")


def test_bad_specs():
    with pytest.raises(BadSpec):
        construct(["x", "x"], covers=[(0, 1)])
    with pytest.raises(BadSpec):
        from_covers(["a", "b"], [(0, 1), (1, 0)])  # cycle
    with pytest.raises(BadSpec):
        construct(["a"], covers=None, meet=None)
    with pytest.raises(BadSpec):
        from_covers(["a", "b"], [(0, 5)])


def test_axiom_violations_are_rejected():
    with pytest.raises(AxiomViolation):
        from_meet_table(["0", "1"], [[0, 1], [0, 1]], kind="semilattice")
    with pytest.raises(AxiomViolation):
        # idempotence failure
        from_meet_table(["0", "1"], [[1, 0], [0, 1]], kind="semilattice")


def test_size_cap_is_configurable():
    names = [str(i) for i in range(17)]
    covers = [(i, i + 1) for i in range(16)]
    with pytest.raises(BadSpec):
        from_covers(names, covers)
    assert from_covers(names, covers, max_size=17).size == 17


def test_order_agreement_on_all_fixtures():
    for lat in LATTICES:
        for a in range(lat.size):
            for b in range(lat.size):
                meet_leq = lat.meet[a][b] == a
                join_leq = lat.join[a][b] == b
                assert meet_leq == join_leq == lat.leq(a, b)


def test_cover_pairs_regenerate_the_structure():
    for lat in LATTICES:
        rebuilt = from_covers(lat.names, cover_pairs(lat))
        assert rebuilt.meet == lat.meet
        assert rebuilt.join == lat.join


def test_distributivity_verdicts():
    assert is_distributive(C3) == (True, None)
    verdict, triple = is_distributive(N5)
    assert not verdict
    x, y, z = triple
    assert N5.meet[x][N5.join[y][z]] != N5.join[N5.meet[x][y]][N5.meet[x][z]]
    assert not is_distributive(M3)[0]
    for lat in LATTICES:
        assert is_distributive(lat)[0] == brute_distributive(lat)


def test_forbidden_sublattice_agrees_with_distributivity():
    for lat in LATTICES:
        found = forbidden_sublattice(lat)
        assert (found is None) == is_distributive(lat)[0]


def test_forbidden_sublattice_shapes():
    assert forbidden_sublattice(B3) is None
    kind, elements = forbidden_sublattice(N5)
    assert kind == "N5" and elements == (0, 1, 2, 3, 4)
    kind, elements = forbidden_sublattice(M3)
    assert kind == "M3" and elements == (0, 1, 2, 3, 4)


def test_forbidden_sublattice_in_larger_host():
    # two glued chains: 0 < p < q < 1 and 0 < s < r < 1
    host = from_covers(["0", "p", "q", "r", "s", "1"],
                       [(0, 1), (1, 2), (2, 5), (0, 4), (4, 3), (3, 5)])
    kind, elements = forbidden_sublattice(host)
    assert kind == "N5"
    assert elements == (0, 1, 2, 3, 5)  # lexicographically least pentagon
    subset = set(elements)
    for a, b in combinations(elements, 2):
        assert host.meet[a][b] in subset and host.join[a][b] in subset


def test_boolean_verdicts():
    verdict, structure = is_boolean(B2)
    assert verdict
    assert structure.complement == (3, 2, 1, 0)
    assert is_boolean(C3) == (False, None)
    # C3's middle element really has no complement
    assert not any(C3.meet[1][y] == 0 and C3.join[1][y] == 2 for y in range(3))
    assert is_boolean(M3)[0] is False  # complemented but not distributive


def test_boolean_structure_validation():
    with pytest.raises(AxiomViolation):
        BooleanStructure(B2, (0, 1, 2, 3))  # identity is not a complement map
    with pytest.raises(AxiomViolation):
        BooleanStructure(B2, (3, 2, 0, 1))  # not an involution


def test_median_majority_absorption():
    for lat in (C3, B2, B3):
        for x in range(lat.size):
            for y in range(lat.size):
                assert median(lat, x, x, y) == x


def test_median_forms_agree_on_boolean_cube():
    for x, y, z in product(range(B3.size), repeat=3):
        meet_form = median(B3, x, y, z)
        join_form = B3.meet[B3.meet[B3.join[x][y]][B3.join[x][z]]][B3.join[y][z]]
        assert meet_form == join_form
    assert median(B2, 1, 2, 0) == 0


def test_median_warns_on_non_distributive_input():
    with pytest.warns(NonDistributiveMedian):
        value = median(N5, 1, 2, 3)
    meet = N5.meet
    join = N5.join
    assert value == join[join[meet[1][2]][meet[1][3]]][meet[2][3]]


def test_birkhoff_embedding_of_chain():
    emb = birkhoff_embed(C3)
    assert emb.atoms == (1, 2)
    assert emb.image == (0b00, 0b01, 0b11)


def test_birkhoff_b2_is_isomorphism():
    emb = birkhoff_embed(B2)
    assert emb.target_atoms == 2
    assert sorted(emb.image) == [0, 1, 2, 3]


def test_birkhoff_rejects_non_distributive():
    with pytest.raises(NotDistributive):
        birkhoff_embed(N5)
    with pytest.raises(NotDistributive):
        birkhoff_embed(M3)


def test_birkhoff_preserves_structure_everywhere():
    for lat in (C2, C3, C4, B2, B3):
        emb = birkhoff_embed(lat)
        assert len(set(emb.image)) == lat.size
        for a in range(lat.size):
            for b in range(lat.size):
                assert emb.image[lat.meet[a][b]] == emb.image[a] & emb.image[b]
                assert emb.image[lat.join[a][b]] == emb.image[a] | emb.image[b]


def test_join_irreducibles_of_boolean_cube_are_atoms():
    assert join_irreducibles(B3) == [1, 2, 4]


def test_symdiff3_is_bitmask_xor_on_boolean_cube():
    # element index of boolean_lattice(k) is its subset bitmask
    _, b = is_boolean(B3)
    for x, y, z in product(range(8), repeat=3):
        assert symdiff3(b, x, y, z) == x ^ y ^ z


def test_symdiff3_identities():
    for lat in (C2, B2, B3):
        _, b = is_boolean(lat)
        for x in range(lat.size):
            assert symdiff3(b, x, lat.bottom, lat.top) == b.complement[x]
            for y in range(lat.size):
                assert symdiff3(b, x, x, y) == y


def test_symdiff3_symmetry_and_two_step_agreement():
    _, b = is_boolean(B2)
    for x, y, z in product(range(4), repeat=3):
        value = symdiff3(b, x, y, z)
        assert value == symdiff3(b, y, x, z) == symdiff3(b, z, y, x)
        two_step = symdiff3(b, symdiff3(b, x, y, B2.bottom), z, B2.bottom)
        assert two_step == value


def test_semilattice_to_lattice_roundtrip():
    for lat in LATTICES:
        rebuilt = semilattice_to_lattice(catalog.meet_reduct(lat))
        assert rebuilt.join == lat.join
    with pytest.raises(NoGreatestElement):
        semilattice_to_lattice(FENCE)


def test_semilattice_distributivity():
    assert is_distributive_semilattice(catalog.meet_reduct(C4))
    assert is_distributive_semilattice(catalog.meet_reduct(B3))
    assert not is_distributive_semilattice(catalog.meet_reduct(N5))
    assert not is_distributive_semilattice(catalog.meet_reduct(M3))
    assert not is_distributive_semilattice(FENCE)


def test_fence_shape():
    assert FENCE.top is None
    assert FENCE.bottom == 0
    maximal = [x for x in range(FENCE.size)
               if all(not FENCE.leq(x, y) for y in range(FENCE.size) if y != x)]
    assert maximal == [2, 3]
