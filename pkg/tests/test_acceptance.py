"""Acceptance battery: one test per criterion, one printed line each.

Run as `pytest tests/test_acceptance.py -v -s` for the live lines, or use
the CLI (`brouwerlab suite`) for the same checks as a report.  Criterion 8
asserts the full embedding-law checklist for the two-generator instance;
the count argument printed with it shows why the free lattice of size 6
cannot inject into a four-element interval, so that sub-check fails and is
expected to fail.  Everything else must pass.
"""

import json
import time

import numpy as np
import pytest

from brouwerlab.algebra import (add_top, from_upsets, join_irreducibles,
                                meet_irreducibles, validate_brouwer)
from brouwerlab.cli import main as cli_main
from brouwerlab.corpus import corpus_pairs, curated_corpus
from brouwerlab.embeddings import canned_instance, gamma_embedding, verify_alpha_embedding
from brouwerlab.formulas import is_positive, parse, random_formulas
from brouwerlab.freedist import (bruteforce_upset_count, iota_arrow_check,
                                 medvedev_algebra)
from brouwerlab.ipc import ipc_prove
from brouwerlab.kripke import (PMorphism, dejongh_agreement, find_pmorphism,
                               is_pmorphism, pmorphism_theory_transfer)
from brouwerlab.order import canned_poset
from brouwerlab.semantics import eval_all, is_identity
from brouwerlab.splitting import (canned_splitting_instance, interval_iso_check,
                                  is_splitting_class_finite, splitting_witness,
                                  tree_pipeline)
from brouwerlab.suite import canned_algebra_family, canned_poset_family

CORPUS = corpus_pairs(curated_corpus())


def report(num: int, ok: bool, detail: str = ""):
    line = f"CRITERION {num:02d}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  ({detail})"
    print(line, flush=True)


def test_criterion_01_free_lattice_sizes():
    t0 = time.perf_counter()
    expected = {1: 3, 2: 6, 3: 20, 4: 168}
    got = {n: medvedev_algebra(n).algebra.size for n in expected}
    oracle = {n: bruteforce_upset_count(n) for n in expected}
    elapsed = time.perf_counter() - t0
    ok = got == expected == oracle and elapsed < 5.0
    report(1, ok, f"sizes {got}, oracle agreement, {elapsed:.2f}s")
    assert got == expected
    assert oracle == expected
    assert elapsed < 5.0


def test_criterion_02_brouwer_laws_exhaustive():
    family = canned_algebra_family()
    failures = []
    b4_elapsed = None
    for name, alg in family:
        assert alg.size <= 168
        t0 = time.perf_counter()
        rep = validate_brouwer(alg)
        dt = time.perf_counter() - t0
        if alg.size == 168:
            b4_elapsed = dt
        for c in rep.checks:
            if not c.ok:
                failures.append((name, c.name, c.witness))
    ok = not failures and b4_elapsed is not None and b4_elapsed < 60.0
    report(2, ok, f"{len(family)} algebras, largest-law scan {b4_elapsed:.2f}s")
    assert not failures, failures
    assert b4_elapsed < 60.0


def test_criterion_03_generators_and_arrow_preservation():
    ok = True
    details = []
    for n in range(1, 5):
        f = medvedev_algebra(n)
        gens_ok = sorted(f.iota) == sorted(meet_irreducibles(f.algebra))
        count_ok = len(f.iota) == 2 ** n
        arrow_ok = iota_arrow_check(f).ok
        ok = ok and gens_ok and count_ok and arrow_ok
        details.append(f"n={n}:{'ok' if gens_ok and count_ok and arrow_ok else 'BAD'}")
    report(3, ok, " ".join(details))
    assert ok


def test_criterion_04_semantics_cross_validation():
    t0 = time.perf_counter()
    formulas = CORPUS + [(f"rnd{i}", f)
                         for i, f in enumerate(random_formulas(0, 200, depth=3, atoms=2))]
    assert len(CORPUS) >= 20
    assert all(len(f.atoms()) <= 2 for _, f in formulas[len(CORPUS):])
    disagreements = []
    for name, p in canned_poset_family(6):
        rep = dejongh_agreement(p, formulas)
        disagreements.extend((name, c.name) for c in rep.failed())
    elapsed = time.perf_counter() - t0
    ok = not disagreements and elapsed < 120.0
    report(4, ok, f"{len(formulas)} formulas x {len(canned_poset_family(6))} frames, "
                  f"{elapsed:.1f}s")
    assert not disagreements, disagreements[:5]
    assert elapsed < 120.0


def test_criterion_05_ipc_sandwich():
    family = canned_algebra_family()
    classical = from_upsets(canned_poset("antichain", 1))
    bad = []
    for fname, f in CORPUS:
        provable = ipc_prove(f)
        for aname, alg in family:
            ident, _ = is_identity(alg, f)
            if provable and not ident:
                bad.append(("lower", fname, aname))
            if ident and not is_identity(classical, f)[0]:
                bad.append(("upper", fname, aname))
    ok = not bad
    report(5, ok, f"{len(CORPUS)} formulas x {len(family)} algebras")
    assert not bad, bad[:5]


def test_criterion_06_wlem_marker():
    wlem = parse("~p1 | ~~p1")
    bad = []
    for name, alg in canned_algebra_family():
        if alg.top in join_irreducibles(alg):
            ident, wit = is_identity(alg, wlem)
            if not ident:
                bad.append((name, wit))
    fork_alg = from_upsets(canned_poset("fork"))
    ident, wit = is_identity(fork_alg, wlem)
    pinned = (not ident) and wit == {0: 1} and fork_alg.label(1) == "up(leaf0)"
    ok = not bad and pinned
    report(6, ok, f"join-irreducible-top algebras pass; fork witness {wit}")
    assert not bad, bad
    assert pinned


def test_criterion_07_add_top_positive_fragment():
    checked = 0
    bad = []
    for name, alg in canned_algebra_family():
        if alg.size > 20:
            continue
        extended = add_top(alg)
        for fname, f in CORPUS:
            if not is_positive(f):
                continue
            atoms = sorted(f.atoms())
            small = eval_all(alg, f, atoms)
            big = eval_all(extended, f, atoms, radix=alg.size)
            if not np.array_equal(small, big):
                bad.append(("commute", name, fname))
            big_ident, _ = is_identity(extended, f)
            small_ident, _ = is_identity(alg, f)
            if big_ident and not small_ident:
                bad.append(("transfer", name, fname))
            checked += 1
    ok = not bad and checked > 0
    report(7, ok, f"{checked} positive-formula/algebra pairs")
    assert not bad, bad[:5]


def test_criterion_08_embedding_pipeline():
    failures = []
    for name in ("unit", "pair"):
        am = canned_instance(name)
        arep = verify_alpha_embedding(am)
        failures.extend((f"alpha[{name}]", c.name, c.witness) for c in arep.failed())
    t0 = time.perf_counter()
    _, _, _, g_unit = gamma_embedding(canned_instance("unit"))
    free, gamma, ialg, g_pair = gamma_embedding(canned_instance("pair"))
    pair_elapsed = time.perf_counter() - t0
    failures.extend(("gamma[unit]", c.name, c.witness) for c in g_unit.failed())
    failures.extend(("gamma[pair]", c.name, c.witness) for c in g_pair.failed())
    ok = not failures and pair_elapsed < 10.0
    report(8, ok, f"free size {free.algebra.size} vs interval size {ialg.size}; "
                  f"{pair_elapsed:.2f}s; failures: "
                  f"{[f'{where}:{what}' for where, what, _ in failures] or 'none'}")
    assert pair_elapsed < 10.0
    assert not failures, failures


def test_criterion_09_pmorphism_machinery():
    fork = canned_poset("fork")
    chain2 = canned_poset("chain", 2)
    bad = []
    pm = find_pmorphism(fork, chain2, require_onto=True)
    if pm is None or pm.mapping != (0, 1, 1):
        bad.append("fork->chain2")
    if find_pmorphism(chain2, fork, require_onto=True) is not None:
        bad.append("chain2->fork should be rejected")
    pm2 = find_pmorphism(canned_poset("binary_tree", 2),
                         canned_poset("binary_tree", 1), require_onto=True)
    if pm2 is None:
        bad.append("tree2->tree1")
    morphisms = [m for m in (pm, pm2) if m is not None]
    fam = canned_poset_family(6)
    for sname, src in fam:
        morphisms.append(PMorphism(src, src, tuple(range(src.size))))
    for tname, dst in fam[:6]:
        for sname, src in fam:
            if src.size >= dst.size and sname != tname:
                found = find_pmorphism(src, dst, require_onto=True)
                if found is not None:
                    morphisms.append(found)
    for m in morphisms:
        if not is_pmorphism(m)[0]:
            bad.append("invalid morphism in battery")
            continue
        rep = pmorphism_theory_transfer(m, CORPUS)
        if not rep.ok:
            bad.append((m.mapping, [c.name for c in rep.failed()][:2]))
    ok = not bad
    report(9, ok, f"{len(morphisms)} onto morphisms transferred over {len(CORPUS)} formulas")
    assert not bad, bad[:5]


def test_criterion_10_splitting():
    bad = []
    inst = canned_splitting_instance("powerset3")
    if splitting_witness(inst, 0, [1]) != 2:
        bad.append("pinned witness")
    for name in ("powerset3", "fork", "chain"):
        instance = canned_splitting_instance(name)
        rep = is_splitting_class_finite(instance)
        summary = rep["is_splitting_class"]
        if summary.ok or summary.witness is None:
            bad.append(f"finite verdict[{name}]")
        if instance.usl.size <= 12 and not interval_iso_check(instance).ok:
            bad.append(f"interval iso[{name}]")
    pipe = tree_pipeline(canned_splitting_instance("fork"), 1, CORPUS)
    if not pipe.ok:
        bad.append("fork pipeline")
    ok = not bad
    report(10, ok, "witness {2}; finite classes fail at maximal members; iso exact")
    assert not bad, bad


def test_criterion_11_determinism():
    import contextlib
    import io

    def run(jobs: str) -> tuple[int, str]:
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = cli_main(["suite", "--seed", "0", "--jobs", jobs,
                             "--format", "json"])
        return code, buf.getvalue()

    t0 = time.perf_counter()
    code1, out1 = run("1")
    code8, out8 = run("8")
    elapsed = time.perf_counter() - t0
    identical = out1 == out8
    ok = identical and elapsed < 300.0 and code1 == code8
    report(11, ok, f"two full runs in {elapsed:.1f}s, byte-identical: {identical}")
    assert identical
    assert elapsed < 300.0
    json.loads(out1)    # well-formed
