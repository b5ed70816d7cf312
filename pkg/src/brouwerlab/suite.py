"""The full verification battery behind the `suite` CLI command.

Each section guards one family of guarantees: exact combinatorial counts,
exhaustive algebraic laws, cross-validation of the two semantics, logic
sandwiches, the embedding pipeline, p-morphism machinery, splitting checks,
and a determinism probe.  Sections report pass/fail with witnesses; the
battery is deterministic for a fixed seed and worker count.
"""

from __future__ import annotations

import time
from functools import lru_cache

import numpy as np

from .algebra import (BrouwerAlgebra, add_top, from_upsets, interval,
                      join_irreducibles, validate_brouwer)
from .checks import CheckReport, LawCheck
from .corpus import corpus_pairs, curated_corpus, load_corpus
from .embeddings import canned_instance, gamma_embedding, verify_alpha_embedding
from .formulas import parse, random_formulas
from .freedist import bruteforce_upset_count, iota_arrow_check, medvedev_algebra
from .ipc import ipc_prove
from .kripke import (PMorphism, dejongh_agreement, find_pmorphism,
                     is_pmorphism, pmorphism_theory_transfer)
from .order import Poset, canned_poset
from .report import Report, RunConfig, Section
from .semantics import eval_all, is_identity
from .splitting import (canned_splitting_instance, interval_iso_check,
                        is_splitting_class_finite, splitting_witness,
                        tree_pipeline)

DEDEKIND = {1: 3, 2: 6, 3: 20, 4: 168, 5: 7581}


@lru_cache(maxsize=8)
def _free(n: int):
    return medvedev_algebra(n)


def canned_poset_family(max_size: int = 6) -> list[tuple[str, Poset]]:
    """The named posets with at most max_size elements, deterministic order."""
    fam: list[tuple[str, Poset]] = []
    for k in range(1, max_size + 1):
        fam.append((f"chain{k}", canned_poset("chain", k)))
    for k in range(1, max_size + 1):
        fam.append((f"antichain{k}", canned_poset("antichain", k)))
    fam.append(("fork", canned_poset("fork")))
    fam.append(("diamond", canned_poset("diamond")))
    fam.append(("binary_tree1", canned_poset("binary_tree", 1)))
    for k in (1, 2):
        if (1 << k) <= max_size:
            fam.append((f"boolean{k}", canned_poset("boolean", k)))
    return fam


@lru_cache(maxsize=4)
def canned_algebra_family(include_large: bool = True) -> list[tuple[str, BrouwerAlgebra]]:
    """Algebras every law section runs over: up-set algebras of the canned
    posets, the free-lattice family, and derived constructions."""
    fam: list[tuple[str, BrouwerAlgebra]] = []
    for name, p in canned_poset_family(6):
        fam.append((f"up({name})", from_upsets(p)))
    upper = 4 if include_large else 3
    for n in range(1, upper + 1):
        fam.append((f"free{n}", _free(n).algebra))
    b2 = _free(2).algebra
    fam.append(("add_top(free2)", add_top(b2)))
    fam.append(("add_top(up(fork))", add_top(from_upsets(canned_poset("fork")))))
    b3 = _free(3).algebra
    coatoms = [x for x in range(b3.size)
               if x != b3.top and bool(b3.leq[x, b3.top])]
    mid = [x for x in range(b3.size) if x not in (b3.bottom, b3.top)]
    fam.append(("interval(free3)", interval(b3, mid[len(mid) // 2])))
    return fam


def _corpus(config: RunConfig):
    if config.corpus_path:
        return load_corpus(config.corpus_path)
    return curated_corpus()


def c01_free_lattice_sizes(config: RunConfig) -> Section:
    checks = []
    sizes = {}
    for n in range(1, 5):
        got = _free(n).algebra.size
        oracle = bruteforce_upset_count(n)
        sizes[f"free{n}"] = got
        checks.append(LawCheck(f"size_free{n}", got == DEDEKIND[n] == oracle,
                               None if got == DEDEKIND[n] == oracle else (got, oracle),
                               f"expected {DEDEKIND[n]}"))
    return Section("c01", "free-lattice sizes match the subset-filter oracle",
                   CheckReport(tuple(checks)), sizes)


def c02_brouwer_laws(config: RunConfig) -> Section:
    checks = []
    for name, alg in canned_algebra_family():
        rep = validate_brouwer(alg)
        for c in rep.checks:
            if not c.ok:
                checks.append(LawCheck(f"{name}.{c.name}", False, c.witness, c.detail))
        checks.append(LawCheck(f"laws[{name}]", rep.ok))
    return Section("c02", "lattice, distributivity and residuation laws, exhaustively",
                   CheckReport(tuple(checks)))


def c03_free_can(config: RunConfig) -> Section:
    from .algebra import canonical_laws_check, canonical_set_check, meet_irreducibles
    checks = []
    for n in range(1, 5):
        f = _free(n)
        mi = sorted(meet_irreducibles(f.algebra))
        ok = mi == sorted(f.iota) and len(f.iota) == 2 ** n
        checks.append(LawCheck(f"generators_are_meet_irreducibles[{n}]", ok,
                               None if ok else (len(mi), len(f.iota))))
        rep = iota_arrow_check(f)
        checks.append(LawCheck(f"iota_preserves_arrow[{n}]", rep.ok,
                               rep.checks[0].witness))
        if n <= 3:
            crep = canonical_set_check(f.algebra, f.iota)
            checks.append(LawCheck(f"generators_canonical[{n}]", crep.ok,
                                   tuple(c.name for c in crep.failed()) or None))
            lrep = canonical_laws_check(f.algebra, f.iota,
                                        family_cap=config.cap_family)
            checks.append(LawCheck(f"canonical_family_laws[{n}]", lrep.ok,
                                   tuple(c.name for c in lrep.failed()) or None,
                                   f"families up to size {config.cap_family}"))
    return Section("c03", "free-lattice generators: meet-irreducibles, canonical set, arrow preservation",
                   CheckReport(tuple(checks)))


def _formula_battery(config: RunConfig):
    corpus = corpus_pairs(_corpus(config))
    rng_formulas = random_formulas(config.seed, 200, depth=3, atoms=2)
    corpus = corpus + [(f"rnd{i}", f) for i, f in enumerate(rng_formulas)]
    return corpus


def c04_two_semantics_agree(config: RunConfig) -> Section:
    corpus = _formula_battery(config)
    jobs = config.resolved_jobs()
    checks = []
    for name, p in canned_poset_family(6):
        rep = dejongh_agreement(p, corpus, config.cap_valuations, jobs)
        bad = rep.failed()
        checks.append(LawCheck(f"agree[{name}]", rep.ok,
                               tuple(c.name for c in bad[:3]) if bad else None,
                               f"{len(corpus)} formulas"))
    return Section("c04", "frame semantics and algebra semantics coincide",
                   CheckReport(tuple(checks)))


def c05_ipc_sandwich(config: RunConfig) -> Section:
    corpus = corpus_pairs(_corpus(config))
    jobs = config.resolved_jobs()
    family = canned_algebra_family()
    classical = from_upsets(canned_poset("antichain", 1))
    checks = []
    for fname, f in corpus:
        provable = ipc_prove(f)
        for aname, alg in family:
            ident, _ = is_identity(alg, f, config.cap_valuations, jobs)
            if provable and not ident:
                checks.append(LawCheck(f"ipc_lower[{fname}@{aname}]", False, None,
                                       "theorem must be an identity everywhere"))
            if ident:
                classical_ok, _ = is_identity(classical, f, config.cap_valuations, jobs)
                if not classical_ok:
                    checks.append(LawCheck(f"cpc_upper[{fname}@{aname}]", False, None,
                                           "identity must be classically valid"))
    checks.append(LawCheck("sandwich", all(c.ok for c in checks),
                           None, f"{len(corpus)} formulas x {len(family)} algebras"))
    return Section("c05", "theorems below every theory, theories below classical logic",
                   CheckReport(tuple(checks)))


def c06_wlem_marker(config: RunConfig) -> Section:
    wlem = parse("~p1 | ~~p1")
    jobs = config.resolved_jobs()
    checks = []
    for name, alg in canned_algebra_family():
        top_ji = alg.top in join_irreducibles(alg)
        ident, wit = is_identity(alg, wlem, config.cap_valuations, jobs)
        if top_ji:
            checks.append(LawCheck(f"wlem_holds[{name}]", ident, wit))
    fork_alg = from_upsets(canned_poset("fork"))
    ident, wit = is_identity(fork_alg, wlem, config.cap_valuations, jobs)
    pinned = (not ident) and wit == {0: 1}
    label = fork_alg.label(wit[0]) if wit else None
    checks.append(LawCheck("wlem_fails_on_fork_with_pinned_witness", pinned,
                           None if pinned else (wit,),
                           f"witness element {label}"))
    return Section("c06", "weak excluded middle tracks join-irreducibility of the top",
                   CheckReport(tuple(checks)))


def c07_add_top_positive(config: RunConfig) -> Section:
    corpus = [(n, f) for n, f in corpus_pairs(_corpus(config))]
    jobs = config.resolved_jobs()
    checks = []
    from .formulas import is_positive
    for name, alg in canned_algebra_family():
        if alg.size > 20:
            continue
        extended = add_top(alg)
        for fname, f in corpus:
            if not is_positive(f):
                continue
            atoms = sorted(f.atoms())
            small_vals = eval_all(alg, f, atoms, cap=config.cap_valuations)
            big_vals = eval_all(extended, f, atoms, radix=alg.size,
                                cap=config.cap_valuations)
            if not np.array_equal(small_vals, big_vals):
                k = int(np.nonzero(small_vals != big_vals)[0][0])
                checks.append(LawCheck(f"commutes[{fname}@{name}]", False, (k,),
                                       "evaluation must agree on old elements"))
            big_ident, _ = is_identity(extended, f, config.cap_valuations, jobs)
            small_ident, _ = is_identity(alg, f, config.cap_valuations, jobs)
            if big_ident and not small_ident:
                checks.append(LawCheck(f"transfer[{fname}@{name}]", False, None,
                                       "identity in the extension must restrict"))
    checks.append(LawCheck("add_top_positive_fragment", all(c.ok for c in checks)))
    return Section("c07", "positive formulas evaluate identically under a new top",
                   CheckReport(tuple(checks)))


def c08_embedding_pipeline(config: RunConfig) -> Section:
    checks = []
    for name in ("unit", "pair"):
        am = canned_instance(name)
        rep = verify_alpha_embedding(am, config.cap_upsets)
        checks.append(LawCheck(f"alpha[{name}]", rep.ok,
                               tuple(c.name for c in rep.failed()) or None))
        _, _, _, grep = gamma_embedding(am, config.cap_upsets)
        for c in grep.checks:
            checks.append(LawCheck(f"gamma[{name}].{c.name}", c.ok, c.witness, c.detail))
    return Section("c08", "strong-antichain embedding laws on the canned instances",
                   CheckReport(tuple(checks)))


def c09_pmorphisms(config: RunConfig) -> Section:
    corpus = corpus_pairs(_corpus(config))
    fork = canned_poset("fork")
    chain2 = canned_poset("chain", 2)
    checks = []
    pm = find_pmorphism(fork, chain2, require_onto=True)
    checks.append(LawCheck("fork_onto_chain2", pm is not None and pm.mapping == (0, 1, 1),
                           None if pm else ("none",)))
    none = find_pmorphism(chain2, fork, require_onto=True)
    checks.append(LawCheck("chain2_onto_fork_rejected", none is None))
    bad = PMorphism(chain2, fork, (0, 1))
    ok, wit = is_pmorphism(bad)
    checks.append(LawCheck("back_condition_witness", (not ok) and wit == ("back", 0, 2), wit))
    pm2 = find_pmorphism(canned_poset("binary_tree", 2), canned_poset("binary_tree", 1),
                         require_onto=True)
    checks.append(LawCheck("tree2_onto_tree1", pm2 is not None))

    transferable = []
    if pm is not None:
        transferable.append(("fork->chain2", pm))
    if pm2 is not None:
        transferable.append(("tree2->tree1", pm2))
    for name, p in canned_poset_family(6):
        ident = PMorphism(p, p, tuple(range(p.size)))
        transferable.append((f"id[{name}]", ident))
    for tname, morphism in transferable:
        rep = pmorphism_theory_transfer(morphism, corpus, config.cap_valuations)
        bad = rep.failed()
        checks.append(LawCheck(f"transfer[{tname}]", rep.ok,
                               tuple(c.name for c in bad[:3]) if bad else None))
    return Section("c09", "p-morphism search, rejection, and refutation transfer",
                   CheckReport(tuple(checks)))


def c10_splitting(config: RunConfig) -> Section:
    corpus = corpus_pairs(_corpus(config))
    checks = []
    inst = canned_splitting_instance("powerset3")
    wit = splitting_witness(inst, 0, [1])
    checks.append(LawCheck("pinned_witness", wit == 2, (wit,),
                           "a = empty, family {{1}}: expect {2}"))
    for name in ("powerset3", "fork", "chain"):
        instance = canned_splitting_instance(name)
        rep = is_splitting_class_finite(instance)
        summary = rep["is_splitting_class"]
        checks.append(LawCheck(f"finite_class_fails[{name}]",
                               (not summary.ok) and summary.witness is not None,
                               summary.witness))
        iso = interval_iso_check(instance, config.cap_upsets)
        checks.append(LawCheck(f"interval_iso[{name}]", iso.ok,
                               tuple(c.name for c in iso.failed()) or None))
    pipe = tree_pipeline(canned_splitting_instance("fork"), 1, corpus, config.cap_upsets)
    checks.append(LawCheck("fork_pipeline", pipe.ok,
                           tuple(c.name for c in pipe.failed()[:3]) or None))
    pipe2 = tree_pipeline(canned_splitting_instance("chain"), 1, (), config.cap_upsets)
    checks.append(LawCheck("chain_pipeline_no_pmorphism",
                           not pipe2["pmorphism_found"].ok))
    return Section("c10", "splitting witnesses, finiteness verdicts, interval isomorphism",
                   CheckReport(tuple(checks)))


def c11_determinism(config: RunConfig) -> Section:
    """Re-run a representative slice with 1 and with 8 workers; compare bytes."""
    probe = parse("(p1 -> p2) | (p2 -> p1)")
    alg = _free(3).algebra
    one = is_identity(alg, probe, config.cap_valuations, jobs=1)
    many = is_identity(alg, probe, config.cap_valuations, jobs=8)
    checks = [LawCheck("witness_stable_across_jobs", one == many, (one[1], many[1]))]
    fam = canned_poset_family(4)
    corpus = corpus_pairs(_corpus(config))[:8]
    for name, p in fam[:4]:
        r1 = dejongh_agreement(p, corpus, config.cap_valuations, jobs=1)
        r8 = dejongh_agreement(p, corpus, config.cap_valuations, jobs=8)
        same = [c.as_dict() for c in r1.checks] == [c.as_dict() for c in r8.checks]
        checks.append(LawCheck(f"report_stable[{name}]", same))
    return Section("c11", "reports are byte-stable under parallelism",
                   CheckReport(tuple(checks)))


_SECTIONS = [
    c01_free_lattice_sizes,
    c02_brouwer_laws,
    c03_free_can,
    c04_two_semantics_agree,
    c05_ipc_sandwich,
    c06_wlem_marker,
    c07_add_top_positive,
    c08_embedding_pipeline,
    c09_pmorphisms,
    c10_splitting,
    c11_determinism,
]


def run_suite(config: RunConfig, only: list[str] | None = None) -> Report:
    report = Report("suite", config, timings={})
    for fn in _SECTIONS:
        name = fn.__name__.split("_")[0]
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        section = fn(config)
        report.timings[f"{section.name}"] = time.perf_counter() - t0
        report.add(section)
    return report
