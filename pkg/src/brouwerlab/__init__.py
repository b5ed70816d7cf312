"""brouwerlab: finite Brouwer algebras, up-set lattices, Kripke frames,
free distributive lattices and splitting-class machinery, all verified by
exhaustive computation.
"""

__version__ = "0.1.0"

from .algebra import (BrouwerAlgebra, add_top, algebra_from_json, algebra_to_json,
                      canonical_laws_check, canonical_set_check, embeddable_shape,
                      from_upsets, interval, interval_homomorphism_check,
                      join_irreducibles, meet_irreducibles, subinterval,
                      validate_brouwer)
from .checks import CheckReport, LawCheck
from .corpus import CorpusEntry, curated_corpus, load_corpus
from .embeddings import (AlphaMap, StrongUAntichain, alpha, canned_instance,
                         check_strong_u_antichain, gamma_embedding,
                         strong_u_antichain, verify_alpha_embedding)
from .formulas import (And, Atom, Bot, Formula, Imp, Neg, Or, Top, parse, pretty,
                       random_formulas)
from .freedist import (FreeLattice, free_leq, free_over, iota_arrow_check,
                       medvedev_algebra, universal_extend)
from .ipc import cpc_valid, ipc_prove
from .kripke import (KripkeModel, PMorphism, dejongh_agreement, find_pmorphism,
                     forces, frame_valid, is_pmorphism, pmorphism_theory_transfer)
from .order import (ImplicativeUsl, Poset, Preorder, UpperSemilattice,
                    boolean_inclusion_usl, boolean_reverse_usl, canned_poset,
                    compute_implication_table, compute_join_table, poset_from_json,
                    poset_to_dot, poset_to_json, quotient_to_poset, usl_from_json,
                    usl_to_json, validate_poset, validate_preorder)
from .report import Report, RunConfig, Section
from .semantics import (Valuation, eval_algebra, eval_all, is_identity,
                        classify_positive, theory_compare)
from .splitting import (SplittingInstance, canned_splitting_instance,
                        interval_iso_check, is_splitting_class_finite,
                        splitting_upto_depth, splitting_witness, tree_pipeline)
from .suite import canned_algebra_family, canned_poset_family, run_suite
from .upsets import (DownSet, UpSet, downward_closure, enumerate_upset_masks,
                     enumerate_upsets, principal_upset, upset_arrow,
                     upset_arrow_bruteforce, upset_join, upset_meet,
                     upward_closure, usl_upset_arrow, usl_upset_join)
