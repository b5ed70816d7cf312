import numpy as np
import pytest

from brouwerlab.embeddings import (AlphaMap, alpha, canned_instance,
                                   check_strong_u_antichain, gamma_embedding,
                                   strong_u_antichain, verify_alpha_embedding)
from brouwerlab.errors import PreconditionViolated
from brouwerlab.freedist import universal_extend
from brouwerlab.order import boolean_inclusion_usl
from brouwerlab.upsets import DownSet, downward_closure


@pytest.fixture(scope="module")
def pair():
    return canned_instance("pair")


class TestStrongUAntichain:
    def test_singleton_vacuous(self):
        u = boolean_inclusion_usl(2)
        down = DownSet(u.poset, 0b0111)
        rep = check_strong_u_antichain(u, down, (1,))
        assert rep.ok

    def test_atoms_of_powerset(self):
        u = boolean_inclusion_usl(2)
        down = DownSet(u.poset, 0b0111)
        rep = check_strong_u_antichain(u, down, (1, 2))
        assert rep.ok

    def test_join_inside_down_set_rejected(self):
        u = boolean_inclusion_usl(2)
        down = DownSet(u.poset, 0b0111)
        rep = check_strong_u_antichain(u, down, (0, 1))
        assert not rep["pairwise_joins_escape"].ok
        assert rep["pairwise_joins_escape"].witness == (0, 1, 1)
        with pytest.raises(PreconditionViolated):
            strong_u_antichain(u, down, (0, 1))

    def test_member_outside_down_set_rejected(self):
        u = boolean_inclusion_usl(2)
        down = DownSet(u.poset, 0b0011)
        rep = check_strong_u_antichain(u, down, (2,))
        assert not rep["members_in_down_set"].ok


class TestAlpha:
    def test_alpha_empty_is_complement(self, pair):
        assert alpha(pair, 0).mask == pair.antichain.down.complement_mask()

    def test_alpha_examples(self, pair):
        # members are indices into the powerset of {1,2}: 1={1}, 2={2}, 3={1,2}
        assert alpha(pair, [0]).members() == [1, 3]
        assert alpha(pair, [1]).members() == [2, 3]
        assert alpha(pair, [0, 1]).members() == [1, 2, 3]

    def test_alpha_accepts_bitmask(self, pair):
        assert alpha(pair, 0b11).mask == alpha(pair, [0, 1]).mask

    def test_out_of_range_position(self, pair):
        with pytest.raises(Exception):
            alpha(pair, [5])

    def test_alpha_always_upward_closed(self):
        # also on a deliberately lopsided instance
        u = boolean_inclusion_usl(3)
        down = downward_closure(u.poset, [3])   # {emptyset,{1},{2},{1,2}}
        am = AlphaMap(strong_u_antichain(u, down, (3,)))
        for X in range(2):
            alpha(am, X)                        # constructor validates


class TestAlphaEmbedding:
    @pytest.mark.parametrize("name", ["unit", "pair", "triple"])
    def test_all_laws(self, name):
        rep = verify_alpha_embedding(canned_instance(name))
        assert rep.ok, rep.failed()

    @pytest.mark.parametrize("name", ["pair", "triple"])
    def test_upclosure_intersections_escape_the_class(self, name):
        # the key step behind join preservation: common upper bounds of two
        # antichain members always live in the complement of the down-set
        am = canned_instance(name)
        u = am.host
        acomp = am.antichain.down.complement_mask()
        xs = am.antichain.elements
        for i in range(len(xs)):
            for j in range(len(xs)):
                if i == j:
                    continue
                both = int(u.poset.up_masks[xs[i]]) & int(u.poset.up_masks[xs[j]])
                assert both & ~acomp == 0

    def test_broken_instance_fails_join_preservation(self):
        # force a non-antichain through the raw dataclass: {emptyset,{1}} in
        # the powerset of {1,2}; their join {1} stays inside the down-set
        from brouwerlab.embeddings import StrongUAntichain
        u = boolean_inclusion_usl(2)
        down = DownSet(u.poset, 0b0111)
        bad = AlphaMap(StrongUAntichain(u, down, (0, 1)))
        rep = verify_alpha_embedding(bad)
        assert not rep.ok
        names = {c.name for c in rep.failed()}
        assert "alpha_injective" in names or "alpha_preserves_join" in names \
            or "alpha_order_embedding" in names


class TestGammaEmbedding:
    def test_unit_fully_embeds(self):
        _, _, _, rep = gamma_embedding(canned_instance("unit"))
        assert rep.ok, rep.failed()

    def test_pair_homomorphism_laws(self, pair):
        free, gamma, ialg, rep = gamma_embedding(pair)
        for name in ("preserves_meet", "preserves_join", "extends_g_through_iota",
                     "top_to_top", "bottom_to_g_of_bottom",
                     "generators_meet_generate", "gamma_matches_alpha_on_generators",
                     "gamma_preserves_arrow_on_generators",
                     "gamma_preserves_arrow_on_free_part",
                     "formal_top_collapses_onto_usl_top_image",
                     "gamma_image_is_alpha_image"):
            assert rep[name].ok, name

    def test_pair_cannot_inject_by_counting(self, pair):
        # the free lattice has 6 elements, the interval only 2**2 = 4, so the
        # two embedding laws necessarily fail; pin the witness pair
        free, gamma, ialg, rep = gamma_embedding(pair)
        assert free.algebra.size == 6 and ialg.size == 4
        assert not rep["gamma_injective_on_free_part"].ok
        assert not rep["gamma_order_embedding_on_free_part"].ok
        assert rep["gamma_injective_on_free_part"].witness == (4, 5)

    def test_gamma_is_the_universal_extension(self, pair):
        free, gamma, ialg, _ = gamma_embedding(pair)
        g = [int(gamma[free.iota[x]]) for x in range(4)]
        out, rep = universal_extend(free, g, ialg)
        assert rep.ok
        assert np.array_equal(out, gamma)

    def test_bounds(self, pair):
        free, gamma, ialg, _ = gamma_embedding(pair)
        assert int(gamma[free.algebra.bottom]) == ialg.bottom
        assert int(gamma[free.algebra.top]) == ialg.top

    def test_theory_inclusion_through_the_image(self, pair):
        # the surjection free -> alpha-image gives Th(free) within Th(image);
        # the image is closed under the interval operations
        from brouwerlab.corpus import corpus_pairs, curated_corpus
        from brouwerlab.semantics import is_identity
        free, gamma, ialg, _ = gamma_embedding(pair)
        image = sorted(set(int(v) for v in gamma))
        pos = {e: i for i, e in enumerate(image)}
        k = len(image)
        leq = np.zeros((k, k), dtype=bool)
        meet = np.zeros((k, k), dtype=np.int32)
        join = np.zeros((k, k), dtype=np.int32)
        arrow = np.zeros((k, k), dtype=np.int32)
        for i, x in enumerate(image):
            for j, y in enumerate(image):
                leq[i, j] = ialg.leq[x, y]
                meet[i, j] = pos[int(ialg.meet[x, y])]
                join[i, j] = pos[int(ialg.join[x, y])]
                arrow[i, j] = pos[int(ialg.arrow[x, y])]
        from brouwerlab.algebra import raw_lattice, validate_brouwer
        img_alg = raw_lattice(leq, meet, join, arrow)
        assert validate_brouwer(img_alg).ok
        for name, f in corpus_pairs(curated_corpus()):
            in_free, _ = is_identity(free.algebra, f)
            in_img, _ = is_identity(img_alg, f)
            assert not in_free or in_img, name
