import numpy as np
import pytest

from brouwerlab.errors import CapExceeded, HostMismatch, NotDownwardClosed
from brouwerlab.order import (boolean_inclusion_usl, canned_poset,
                              quotient_to_poset, validate_preorder)
from brouwerlab.upsets import (DownSet, UpSet, downward_closure,
                               enumerate_upset_masks, enumerate_upsets,
                               principal_upset, upset_arrow,
                               upset_arrow_bruteforce, upset_join, upset_meet,
                               upward_closure, usl_upset_arrow, usl_upset_join)


def brute_upset_masks(p):
    """Oracle: filter all subsets with a plain membership test."""
    out = []
    for mask in range(1 << p.size):
        ok = True
        for i in range(p.size):
            if mask >> i & 1:
                for j in range(p.size):
                    if p.leq[i, j] and not mask >> j & 1:
                        ok = False
        if ok:
            out.append(mask)
    return out


class TestClosure:
    def test_closure_of_empty(self, fork):
        assert upward_closure(fork, []).mask == 0

    def test_chain_closure_of_bottom_is_everything(self, chain2):
        assert upward_closure(chain2, [0]).mask == 0b11

    def test_fork_leaf_is_maximal(self, fork):
        assert upward_closure(fork, [1]).mask == 0b010

    def test_invalid_upset_rejected(self, fork):
        with pytest.raises(ValueError):
            UpSet(fork, 0b001)          # root without its leaves

    def test_minimal_elements_view(self, fork):
        u = upward_closure(fork, [0])
        assert u.minimal_elements() == [0]


class TestEnumeration:
    @pytest.mark.parametrize("name,k,count", [
        ("chain", 2, 3), ("antichain", 2, 4), ("boolean", 2, 6),
        ("fork", None, 5), ("binary_tree", 2, 26),
    ])
    def test_counts(self, name, k, count):
        p = canned_poset(name, k)
        assert len(enumerate_upsets(p)) == count

    @pytest.mark.parametrize("name,k", [
        ("chain", 4), ("antichain", 4), ("boolean", 3), ("binary_tree", 2),
        ("fork", None), ("diamond", None),
    ])
    def test_matches_bruteforce_filter(self, name, k):
        p = canned_poset(name, k)
        got = [int(m) for m in enumerate_upset_masks(p)]
        assert got == brute_upset_masks(p)

    def test_sorted_lexicographically(self, fork):
        masks = [int(m) for m in enumerate_upset_masks(fork)]
        assert masks == sorted(masks)
        assert masks[0] == 0 and masks[-1] == fork.full_mask

    def test_cap_exceeded(self):
        with pytest.raises(CapExceeded):
            enumerate_upset_masks(canned_poset("antichain", 5), cap=10)

    def test_dfs_path_agrees_with_filter(self):
        # force the backtracking path by lowering the scan threshold
        import brouwerlab.upsets as U
        p = canned_poset("boolean", 3)
        old = U._FILTER_SCAN_LIMIT
        U._FILTER_SCAN_LIMIT = 0
        try:
            got = [int(m) for m in enumerate_upset_masks(p)]
        finally:
            U._FILTER_SCAN_LIMIT = old
        assert got == brute_upset_masks(p)

    def test_dfs_path_handles_preorders(self):
        import brouwerlab.upsets as U
        mat = np.eye(4, dtype=bool)
        for i, j in [(0, 1), (1, 0), (0, 2), (1, 2), (0, 3), (1, 3)]:
            mat[i, j] = True
        p = validate_preorder(mat)
        expected = brute_upset_masks(p)
        old = U._FILTER_SCAN_LIMIT
        U._FILTER_SCAN_LIMIT = 0
        try:
            got = [int(m) for m in enumerate_upset_masks(p)]
        finally:
            U._FILTER_SCAN_LIMIT = old
        assert got == expected

    def test_preorder_counts_match_quotient(self):
        # preorders up to 8 elements: up-sets correspond to quotient up-sets
        rng = np.random.default_rng(7)
        for _ in range(25):
            n = int(rng.integers(2, 9))
            base = np.eye(n, dtype=bool)
            for i in range(n):
                for j in range(i + 1, n):
                    r = rng.random()
                    if r < 0.2:
                        base[i, j] = True
                    elif r < 0.3:
                        base[i, j] = base[j, i] = True
            closed = base.copy()
            for _ in range(n):
                closed = closed | (closed @ closed)
            p = validate_preorder(closed)
            q, _ = quotient_to_poset(p)
            assert len(enumerate_upset_masks(p)) == len(enumerate_upset_masks(q))


class TestOperations:
    def test_meet_with_top_is_identity(self, fork):
        x = upward_closure(fork, [1])
        top = UpSet(fork, 0)
        assert upset_meet(x, top).mask == x.mask

    def test_join_with_bottom_is_identity(self, fork):
        x = upward_closure(fork, [1])
        bottom = UpSet(fork, fork.full_mask)
        assert upset_join(x, bottom).mask == x.mask

    def test_fork_leaf_union(self, fork):
        got = upset_meet(upward_closure(fork, [1]), upward_closure(fork, [2]))
        assert got.mask == 0b110

    def test_host_mismatch(self, fork, chain2):
        with pytest.raises(HostMismatch):
            upset_meet(UpSet(fork, 0), UpSet(chain2, 0))

    def test_arrow_examples(self, fork, chain2):
        # chain: arrow({top}, empty) is empty (the algebra's greatest element)
        assert upset_arrow(UpSet(chain2, 0b10), UpSet(chain2, 0)).mask == 0
        # arrow(X, X) is the full carrier (the algebra's least element)
        x = upward_closure(fork, [1])
        assert upset_arrow(x, x).mask == fork.full_mask
        # fork: arrow({leaf0}, empty) = {leaf1}
        assert upset_arrow(upward_closure(fork, [1]), UpSet(fork, 0)).mask == 0b100

    @pytest.mark.parametrize("name,k", [
        ("chain", 3), ("antichain", 3), ("fork", None),
        ("diamond", None), ("boolean", 2), ("binary_tree", 2),
    ])
    def test_closed_form_equals_bruteforce_union(self, name, k):
        p = canned_poset(name, k)
        ups = enumerate_upsets(p)
        for x in ups:
            for y in ups:
                assert upset_arrow(x, y).mask == upset_arrow_bruteforce(x, y).mask


class TestUslForms:
    def test_join_with_full_carrier(self):
        u = boolean_inclusion_usl(2)
        x = upward_closure(u.poset, [1])
        full = UpSet(u.poset, u.poset.full_mask)
        assert usl_upset_join(u, x, full).mask == x.mask

    def test_pairwise_join_example(self):
        u = boolean_inclusion_usl(2)
        x = upward_closure(u.poset, [0b01])
        y = upward_closure(u.poset, [0b10])
        assert usl_upset_join(u, x, y).mask == 0b1000   # just {1,2}

    def test_arrow_full_full(self):
        u = boolean_inclusion_usl(2)
        full = UpSet(u.poset, u.poset.full_mask)
        assert usl_upset_arrow(u, full, full).mask == u.poset.full_mask

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_elementwise_forms_match_mask_forms(self, n):
        from brouwerlab.order import boolean_reverse_usl
        for u in (boolean_inclusion_usl(n), boolean_reverse_usl(n)):
            ups = enumerate_upsets(u.poset)
            for x in ups:
                for y in ups:
                    assert usl_upset_join(u, x, y).mask == upset_join(x, y).mask
                    assert usl_upset_arrow(u, x, y).mask == upset_arrow(x, y).mask


class TestDownSets:
    def test_validation(self, fork):
        with pytest.raises(NotDownwardClosed):
            DownSet(fork, 0b010)        # leaf without the root

    def test_downward_closure(self, fork):
        d = downward_closure(fork, [1])
        assert d.mask == 0b011

    def test_complement_is_upset(self, fork):
        d = downward_closure(fork, [1])
        UpSet(fork, d.complement_mask())    # must not raise

    def test_principal(self, fork):
        assert principal_upset(fork, 0).mask == fork.full_mask
