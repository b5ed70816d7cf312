import numpy as np
import pytest

from brouwerlab.algebra import from_upsets, meet_irreducibles, validate_brouwer
from brouwerlab.errors import CapExceeded, NotAUslHom
from brouwerlab.freedist import (bruteforce_upset_count, free_leq, free_over,
                                 generator_mask, iota_arrow_check,
                                 medvedev_algebra, universal_extend)
from brouwerlab.order import (boolean_reverse_usl, canned_poset,
                              compute_implication_table, compute_join_table)

DEDEKIND = {1: 3, 2: 6, 3: 20, 4: 168}


class TestSizes:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_dedekind_and_oracle(self, n):
        f = medvedev_algebra(n)
        assert f.algebra.size == DEDEKIND[n]
        assert bruteforce_upset_count(n) == DEDEKIND[n]

    def test_large_needs_flag(self):
        with pytest.raises(CapExceeded):
            medvedev_algebra(5)

    def test_free2_meet_irreducible_count(self):
        assert len(meet_irreducibles(medvedev_algebra(2).algebra)) == 4


class TestFreeOver:
    def test_boolean1_gives_three_chain(self):
        f = free_over(boolean_reverse_usl(1))
        assert f.algebra.size == 3 and len(f.iota) == 2

    def test_boolean2_gives_six(self):
        f = free_over(boolean_reverse_usl(2))
        assert f.algebra.size == 6 and len(f.iota) == 4

    def test_two_chain_usl(self):
        u = compute_implication_table(compute_join_table(canned_poset("chain", 2)))
        f = free_over(u)
        assert f.algebra.size == 3
        assert f.algebra.top not in f.iota
        assert set(f.iota) == set(meet_irreducibles(f.algebra))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_iota_image_is_meet_irreducibles(self, n):
        f = medvedev_algebra(n)
        assert sorted(f.iota) == sorted(meet_irreducibles(f.algebra))
        assert len(f.iota) == 2 ** n


class TestFreeLeq:
    def test_reflexive(self):
        u = boolean_reverse_usl(2)
        assert free_leq(u, [1, 2], [1, 2])

    def test_empty_generator_set(self):
        u = boolean_reverse_usl(2)
        assert free_leq(u, [], [])
        assert not free_leq(u, [], [0])
        assert free_leq(u, [1], [])

    def test_meet_below_top_generator(self):
        u = boolean_reverse_usl(2)
        # {1} >= the empty set in reverse inclusion, so the meet of the atoms
        # sits below the generator of the top element
        assert free_leq(u, [1, 2], [0])

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_agrees_with_mask_comparison(self, n):
        u = boolean_reverse_usl(n)
        subsets = range(1 << u.size) if u.size <= 4 else range(0, 1 << u.size, 7)
        for xm in subsets:
            xs = [i for i in range(u.size) if xm >> i & 1]
            for ym in subsets:
                ys = [i for i in range(u.size) if ym >> i & 1]
                lhs = free_leq(u, xs, ys)
                rhs = generator_mask(u, xs) & generator_mask(u, ys) == generator_mask(u, ys)
                assert lhs == rhs

    @pytest.mark.parametrize("n", [1, 2])
    def test_agrees_with_algebra_order(self, n):
        f = medvedev_algebra(n)
        u = f.base
        masks = f.algebra.element_masks
        for xm in range(1 << u.size):
            xs = [i for i in range(u.size) if xm >> i & 1]
            xi = int(np.searchsorted(masks, np.uint64(generator_mask(u, xs))))
            for ym in range(1 << u.size):
                ys = [i for i in range(u.size) if ym >> i & 1]
                yi = int(np.searchsorted(masks, np.uint64(generator_mask(u, ys))))
                assert free_leq(u, xs, ys) == bool(f.algebra.leq[xi, yi])


class TestUniversalExtend:
    def test_identity_extension(self):
        f = medvedev_algebra(2)
        out, rep = universal_extend(f, list(f.iota), f.algebra)
        assert rep.ok
        assert all(int(out[e]) == e for e in range(f.algebra.size))

    def test_constant_bottom(self):
        f = medvedev_algebra(2)
        target = from_upsets(canned_poset("chain", 2))
        out, rep = universal_extend(f, [target.bottom] * 4, target)
        assert rep.ok
        for e in range(f.algebra.size):
            expected = target.top if e == f.algebra.top else target.bottom
            assert int(out[e]) == expected

    def test_collapse_to_three_chain(self):
        f = medvedev_algebra(2)
        target = from_upsets(canned_poset("chain", 2))
        mid = [x for x in range(3) if x not in (target.bottom, target.top)][0]
        # atoms {1},{2} |-> middle forces the usl top to the middle as well
        g = [0] * 4
        g[0b11] = target.bottom
        g[0b01] = g[0b10] = mid
        g[0b00] = mid
        out, rep = universal_extend(f, g, target)
        assert rep.ok
        assert sorted(set(int(v) for v in out)) == sorted({target.bottom, mid, target.top})

    def test_rejects_non_homomorphism(self):
        f = medvedev_algebra(2)
        target = from_upsets(canned_poset("chain", 2))
        mid = [x for x in range(3) if x not in (target.bottom, target.top)][0]
        g = [target.bottom, mid, mid, target.bottom]   # join of atoms broken
        with pytest.raises(NotAUslHom):
            universal_extend(f, g, target)


class TestIotaArrow:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_all_generator_pairs(self, n):
        assert iota_arrow_check(medvedev_algebra(n)).ok

    def test_specific_pair(self):
        f = medvedev_algebra(2)
        u = f.base
        # {1} -> {2} in the reverse powerset is {2}
        assert int(u.arrow[0b01, 0b10]) == 0b10
        lhs = f.iota[0b10]
        rhs = int(f.algebra.arrow[f.iota[0b01], f.iota[0b10]])
        assert lhs == rhs

    def test_arrow_of_element_with_itself(self):
        f = medvedev_algebra(2)
        for x in range(4):
            assert int(f.algebra.arrow[f.iota[x], f.iota[x]]) == f.algebra.bottom


class TestLawsOnFreeAlgebras:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_validate(self, n):
        assert validate_brouwer(medvedev_algebra(n).algebra).ok
