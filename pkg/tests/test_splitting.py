from itertools import combinations

import pytest

from brouwerlab.corpus import corpus_pairs, curated_corpus
from brouwerlab.errors import PreconditionViolated
from brouwerlab.order import boolean_inclusion_usl
from brouwerlab.splitting import (SplittingInstance, canned_splitting_instance,
                                  interval_iso_check, is_splitting_class_finite,
                                  splitting_upto_depth, splitting_witness,
                                  tree_pipeline)
from brouwerlab.upsets import DownSet

CORPUS = corpus_pairs(curated_corpus())


@pytest.fixture(scope="module")
def powerset3():
    return canned_splitting_instance("powerset3")


class TestWitness:
    def test_pinned_example(self, powerset3):
        assert splitting_witness(powerset3, 0, [1]) == 2

    def test_no_witness_above_maximal(self, powerset3):
        assert splitting_witness(powerset3, 1, [2]) is None

    def test_empty_family_gives_least_extension(self, powerset3):
        assert splitting_witness(powerset3, 0, []) == 1

    def test_precondition_a_outside(self, powerset3):
        with pytest.raises(PreconditionViolated):
            splitting_witness(powerset3, 3, [1])

    def test_precondition_b_below_a(self, powerset3):
        with pytest.raises(PreconditionViolated):
            splitting_witness(powerset3, 1, [0])

    def test_antitone_in_family(self, powerset3):
        # a witness for a family also witnesses every subfamily
        fam = [1, 2, 4]
        for a in [0]:
            full = [b for b in fam if b != a]
            c = splitting_witness(powerset3, a, full)
            if c is None:
                continue
            for r in range(len(full) + 1):
                for sub in combinations(full, r):
                    cs = splitting_witness(powerset3, a, list(sub))
                    assert cs is not None
                    joins = [powerset3.usl.join[b, c] for b in sub]
                    assert all(int(j) not in powerset3.down for j in joins)


class TestFiniteVerdict:
    @pytest.mark.parametrize("name", ["powerset3", "fork", "chain"])
    def test_always_false_with_maximal_witness(self, name):
        inst = canned_splitting_instance(name)
        rep = is_splitting_class_finite(inst)
        summary = rep["is_splitting_class"]
        assert not summary.ok
        maximal = summary.witness[0]
        # witness is maximal within the class: nothing in A strictly above it
        leq = inst.usl.poset.leq
        assert all(not leq[maximal, b] or b == maximal for b in inst.members)

    def test_powerset3_reports_per_element(self, powerset3):
        rep = is_splitting_class_finite(powerset3)
        assert not rep["extends[a=1]"].ok      # {1} is maximal inside A
        assert rep["is_splitting_class"].witness == (1,)

    def test_chain_of_three(self):
        from brouwerlab.order import canned_poset, compute_join_table
        u = compute_join_table(canned_poset("chain", 3))
        inst = SplittingInstance(u, DownSet(u.poset, 0b111))
        rep = is_splitting_class_finite(inst)
        summary = rep["is_splitting_class"]
        assert not summary.ok
        assert summary.witness == (2,)      # the top of the chain

    def test_class_must_contain_bottom(self):
        u = boolean_inclusion_usl(2)
        with pytest.raises(Exception):
            SplittingInstance(u.usl, DownSet(u.poset, 0))


class TestUptoDepth:
    def test_powerset3_depth1_fails_on_full_family(self, powerset3):
        rep = splitting_upto_depth(powerset3, 1)
        assert [c.name for c in rep.checks] == ["extends[a=0]"]
        assert not rep.ok

    def test_singleton_class_fails_at_its_only_member(self):
        u = boolean_inclusion_usl(2)
        inst = SplittingInstance(u.usl, DownSet(u.poset, 0b0001))
        rep = splitting_upto_depth(inst, 1)
        assert len(rep.checks) == 1 and not rep.ok

    def test_full_family_truncation_is_strict(self):
        # any candidate c > a belongs to the maximal family itself, and
        # join(c, c) = c stays inside the class, so the truncated check can
        # only fail wherever the family is nonempty; positive answers live
        # in splitting_witness with proper subfamilies
        inst = canned_splitting_instance("fork")
        rep = splitting_upto_depth(inst, 1)
        assert [c.name for c in rep.checks] == ["extends[a=0]"]
        assert not rep.ok
        assert splitting_witness(inst, 0, [1]) == 2

    def test_depth_validated(self, powerset3):
        with pytest.raises(PreconditionViolated):
            splitting_upto_depth(powerset3, 0)


class TestIntervalIso:
    @pytest.mark.parametrize("name", ["powerset3", "fork", "chain"])
    def test_canned_instances(self, name):
        rep = interval_iso_check(canned_splitting_instance(name))
        assert rep.ok, rep.failed()

    def test_every_downset_of_boolean3(self):
        # exhaustive over all nonempty down-sets containing the bottom
        u = boolean_inclusion_usl(3)
        from brouwerlab.upsets import enumerate_upset_masks
        full = u.poset.full_mask
        downs = [full & ~int(m) for m in enumerate_upset_masks(u.poset)]
        for dm in downs:
            if not dm & 1:
                continue
            inst = SplittingInstance(u.usl, DownSet(u.poset, dm))
            assert interval_iso_check(inst).ok, bin(dm)


class TestPipeline:
    def test_fork_instance_maps_onto_depth1_tree(self):
        rep = tree_pipeline(canned_splitting_instance("fork"), 1, CORPUS)
        assert rep.ok
        assert rep["pmorphism_found"].ok

    def test_chain_instance_has_no_tree_pmorphism(self):
        rep = tree_pipeline(canned_splitting_instance("chain"), 1, ())
        assert not rep["pmorphism_found"].ok
        iso_checks = [c for c in rep.checks if c.name.startswith("interval_iso")]
        assert iso_checks and all(c.ok for c in iso_checks)

    def test_powerset3_depth1(self, powerset3):
        rep = tree_pipeline(powerset3, 1, CORPUS[:5])
        # the A-poset is the four-element "claw" {0 < 1,2,4}: it maps onto
        # the fork-shaped depth-1 tree
        assert rep["pmorphism_found"].ok
