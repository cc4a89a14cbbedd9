from fractions import Fraction

import pytest

import oracles
from conftest import CATALOG_GROUPS, SMALL_GROUPS
from conjrank import burnside as bn
from conjrank import perm_core as pc
from conjrank.catalog import builtin_group
from conjrank.errors import ClassMismatch, NotASubgroup

# frozen from oracles.double_coset_matrix over the S4-classes of subgroups of
# Syl2(S4) = <(2 3), (0 1), (0 2)(1 3)>, classes in canonical order
S4_D8_MATRIX = [
    [24, 12, 12, 6, 6, 6, 3],
    [12, 7, 6, 4, 3, 3, 2],
    [12, 6, 8, 4, 6, 4, 3],
    [6, 4, 4, 3, 3, 2, 2],
    [6, 3, 6, 3, 6, 3, 3],
    [6, 3, 4, 2, 3, 3, 2],
    [3, 2, 3, 2, 3, 2, 2],
]
S3_MATRIX = [[6, 3, 2, 1], [3, 2, 1, 1], [2, 1, 2, 1], [1, 1, 1, 1]]


def tuples(G):
    return frozenset(g.images for g in G.elements)


def as_ints(M):
    return [[int(x) for x in row] for row in M.entries]


class TestMarksTable:
    def test_trivial(self):
        assert as_ints(bn.marks_table(builtin_group("C1")).M) == [[1]]

    def test_c2(self, C2):
        assert as_ints(bn.marks_table(C2).M) == [[2, 1], [0, 1]]

    def test_s3(self, S3):
        T = bn.marks_table(S3)
        assert [c.order for c in T.classes] == [1, 2, 3, 6]
        assert as_ints(T.M) == [[6, 3, 2, 1], [0, 1, 0, 1], [0, 0, 2, 1], [0, 0, 0, 1]]

    @pytest.mark.parametrize("name", ["S3", "D8", "A4", "Q8", "S4"])
    def test_against_coset_oracle(self, name):
        G = builtin_group(name)
        T = bn.marks_table(G)
        reps = [c.representative for c in T.classes]
        Gt = tuples(G)
        for i, P in enumerate(reps):
            for j, Q in enumerate(reps):
                assert T.M[i, j] == oracles.fixed_cosets(Gt, tuples(P), tuples(Q))

    @pytest.mark.parametrize("name", CATALOG_GROUPS)
    def test_invariants(self, name):
        G = builtin_group(name)
        T = bn.marks_table(G)
        reps = [c.representative for c in T.classes]
        n = len(reps)
        for i in range(n):
            for j in range(n):
                if T.M[i, j]:
                    assert pc.is_subconjugate(G, reps[i], reps[j])
                    assert i <= j
            assert T.M[i, i] == pc.normalizer(G, reps[i]).order // reps[i].order > 0
            assert T.M[0, i] == G.order // reps[i].order


class TestElements:
    def test_mark_of_one(self, S3):
        ring = bn.burnside_ring(S3)
        one = ring.one()
        assert all(bn.mark(one, c) == 1 for c in ring.classes)

    def test_mark_of_idempotent(self, S3):
        ring = bn.burnside_ring(S3)
        for i, e in enumerate(bn.idempotents(S3)):
            assert [bn.mark(e, j) for j in range(4)] == [int(i == j) for j in range(4)]

    def test_mark_of_s3_mod_c2(self, S3):
        ring = bn.burnside_ring(S3)
        x = ring.basis(1)
        assert bn.mark(x, ring.classes[0].representative) == 3

    def test_class_mismatch(self, S3, C2):
        x = bn.burnside_ring(S3).one()
        y = bn.burnside_ring(C2).one()
        with pytest.raises(ClassMismatch):
            bn.multiply(x, y)
        with pytest.raises(ClassMismatch):
            bn.mark(x, 17)

    def test_marks_consistency(self, S4):
        ring = bn.burnside_ring(S4)
        x = ring.element([1, -2, Fraction(1, 3), 0, 4, 0, 0, 1, 0, 0, 2])
        M = ring.table.M
        expected = [sum(M[i, j] * x.coeffs[j] for j in range(len(ring))) for i in range(len(ring))]
        assert list(x.marks) == expected
        assert ring.from_marks(x.marks) == x


class TestIdempotents:
    def test_trivial(self):
        es = bn.idempotents(builtin_group("C1"))
        assert len(es) == 1 and es[0].coeffs == (1,)

    def test_c2(self, C2):
        e1, e2 = bn.idempotents(C2)
        assert e1.coeffs == (Fraction(1, 2), 0)
        assert e2.coeffs == (Fraction(-1, 2), 1)

    def test_s3_marks_are_standard_basis(self, S3):
        for i, e in enumerate(bn.idempotents(S3)):
            assert list(e.marks) == [int(i == j) for j in range(4)]

    @pytest.mark.parametrize("name", CATALOG_GROUPS)
    def test_idempotent_suite(self, name):
        G = builtin_group(name)
        ring = bn.burnside_ring(G)
        es = bn.idempotents(G)
        total = ring.zero()
        for e in es:
            total = total + e
        assert total == ring.one()
        for i, e in enumerate(es):
            for j, f in enumerate(es):
                assert bn.multiply(e, f) == (e if i == j else ring.zero())


class TestMultiply:
    def test_identity(self, S3):
        ring = bn.burnside_ring(S3)
        x = ring.basis(1) + ring.basis(2).scale(3)
        assert bn.multiply(x, ring.one()) == x

    def test_s3_mod_c2_squared(self, S3):
        ring = bn.burnside_ring(S3)
        x = ring.basis(1)
        assert bn.multiply(x, x) == x + ring.basis(0)
        assert bn.multiply(x, x).marks == (9, 1, 0, 0)

    def test_product_of_gsets_against_orbit_decomposition(self, S4):
        # [G/P] x [G/Q] decomposes as sum over double cosets of [G/(P cap gQg^-1)]
        ring = bn.burnside_ring(S4)
        reps = [c.representative for c in ring.classes]
        for i in (1, 3, 5):
            for j in (2, 4, 6):
                P, Q = reps[i], reps[j]
                stabs = []
                seen = set()
                for g in S4:
                    key = frozenset(p * g * q for p in P for q in Q)
                    if key in seen:
                        continue
                    seen.add(key)
                    stabs.append(pc._from_elements(4, P.element_set & pc.conjugate(Q, g).element_set))
                assert bn.multiply(ring.basis(i), ring.basis(j)) == ring.from_gset(stabs)


class TestRho:
    def test_free_orbits(self, S4):
        ring = bn.burnside_ring(S4)
        assert bn.rho(ring.classes[0].representative, ring.basis(0)) == 24

    def test_c2_idempotent(self, C2):
        e = bn.idempotents(C2)[1]
        assert bn.rho(C2, e) == Fraction(1, 2)

    def test_s3_mod_c2(self, S3):
        ring = bn.burnside_ring(S3)
        C2 = ring.classes[1].representative
        assert bn.rho(C2, ring.basis(1)) == 2 == pc.double_coset_count(S3, C2, C2)

    def test_not_a_subgroup(self, S3):
        ring = bn.burnside_ring(S3)
        with pytest.raises(NotASubgroup):
            bn.rho(builtin_group("C4"), ring.one())

    @pytest.mark.parametrize("name", CATALOG_GROUPS)
    def test_burnside_lemma_consistency(self, name):
        G = builtin_group(name)
        ring = bn.burnside_ring(G)
        for i, cp in enumerate(ring.classes):
            for j, cq in enumerate(ring.classes):
                assert bn.rho(cp.representative, ring.basis(j)) == \
                    pc.double_coset_count(G, cp.representative, cq.representative)


class TestOrbitCounting:
    @pytest.mark.parametrize("name", CATALOG_GROUPS)
    def test_nonvanishing_pattern(self, name):
        G = builtin_group(name)
        ring = bn.burnside_ring(G)
        es = ring.idempotents
        Gt = tuples(G)
        for P in ring.classes:
            Pt = tuples(P.representative)
            for j, Q in enumerate(ring.classes):
                value = bn.rho(P.representative, es[j])
                # oracle: Q cyclic and some conjugate of Q inside P
                Qt = tuples(Q.representative)
                sub = any(oracles.conj_set(Qt, g) <= Pt for g in Gt)
                assert (value != 0) == (oracles.cyclic(Qt) and sub)

    @pytest.mark.parametrize("name", SMALL_GROUPS)
    def test_block_triangular(self, name):
        G = builtin_group(name)
        ring = bn.burnside_ring(G)
        order = sorted(range(len(ring)), key=lambda i: (
            not ring.classes[i].is_cyclic, ring.classes[i].order,
            ring.classes[i].representative.elements))
        ncyc = sum(1 for c in ring.classes if c.is_cyclic)
        es = ring.idempotents
        mat = [[ring.rho(ring.classes[i].representative, es[j]) for j in order] for i in order]
        for r, row in enumerate(mat):
            assert all(v == 0 for v in row[ncyc:])
            if r < ncyc:
                assert row[r] != 0
                assert all(v == 0 for v in row[r + 1:ncyc])


class TestCosetMatrix:
    def test_c2(self, C2):
        M, _ = bn.coset_matrix(C2, C2)
        assert as_ints(M) == [[2, 1], [1, 1]]

    def test_s3(self, S3):
        M, _ = bn.coset_matrix(S3, S3)
        assert as_ints(M) == S3_MATRIX

    def test_s3_c3(self, S3, C3_in_S3):
        M, _ = bn.coset_matrix(S3, C3_in_S3)
        assert as_ints(M) == [[6, 2], [2, 2]]

    def test_s4_d8_pinned(self, S4, D8_in_S4):
        M, classes = bn.coset_matrix(S4, D8_in_S4)
        assert as_ints(M) == S4_D8_MATRIX
        reps = [tuples(c.representative) for c in classes]
        assert as_ints(M) == oracles.double_coset_matrix(tuples(S4), reps)

    def test_cross_check_with_rho(self, S4, D8_in_S4):
        ring = bn.burnside_ring(S4)
        M, classes = bn.coset_matrix(S4, D8_in_S4)
        for i, P in enumerate(classes):
            for j, Q in enumerate(classes):
                x = ring.basis(Q.representative)
                assert M[i, j] == bn.rho(P.representative, x)

    def test_not_a_subgroup(self, S3):
        with pytest.raises(NotASubgroup):
            bn.coset_matrix(S3, builtin_group("C4"))


class TestVerifyTheoremGroup:
    def test_c2(self, C2):
        r = bn.verify_theorem_group(C2, C2)
        assert (r.rank, r.cyclic_classes, r.holds) == (2, 2, True)

    def test_s3(self, S3):
        r = bn.verify_theorem_group(S3, S3)
        assert (r.rank, r.cyclic_classes, r.holds) == (3, 3, True)

    def test_s4_d8_regression(self, S4, D8_in_S4):
        r = bn.verify_theorem_group(S4, D8_in_S4)
        assert r.rank == oracles.fraction_rank(S4_D8_MATRIX) == 4
        assert (r.cyclic_classes, r.holds) == (4, True)

    @pytest.mark.parametrize("name", SMALL_GROUPS)
    def test_basis_change_rank_law(self, name):
        G = builtin_group(name)
        for H in {G, pc.sylow_subgroup(G, 2) if G.order % 2 == 0 else G}:
            M, _ = bn.coset_matrix(G, H)
            E, _ = bn.idempotent_orbit_matrix(G, H)
            assert bn.rank(M) == bn.rank(E)
