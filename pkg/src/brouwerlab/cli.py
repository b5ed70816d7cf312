"""Command-line interface.

One binary, subcommand style; all verification logic lives in the library.
Exit codes: 0 all checks passed, 1 a check failed (witnesses in the output),
2 usage or input errors (bad JSON, bad grammar, unknown names).
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .algebra import (algebra_from_json, algebra_to_json, from_upsets, interval,
                      join_irreducibles, meet_irreducibles, validate_brouwer)
from .checks import CheckReport, LawCheck
from .corpus import corpus_pairs, curated_corpus, load_corpus
from .embeddings import (AlphaMap, canned_instance, gamma_embedding,
                         strong_u_antichain, verify_alpha_embedding)
from .errors import BrouwerlabError, InputError
from .formulas import parse as parse_formula
from .formulas import pretty
from .ipc import cpc_valid, ipc_prove
from .kripke import PMorphism, dejongh_agreement, find_pmorphism, frame_valid, is_pmorphism
from .order import (canned_poset, load_json_file, poset_from_json, poset_to_dot,
                    poset_to_json, usl_from_json, compute_implication_table)
from .report import Report, RunConfig, Section
from .semantics import classify_positive, eval_algebra, is_identity
from .splitting import (SplittingInstance, canned_splitting_instance,
                        is_splitting_class_finite, splitting_upto_depth,
                        splitting_witness, tree_pipeline)
from .suite import run_suite
from .upsets import DownSet
import json


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        cap_upsets=args.cap_upsets,
        cap_valuations=args.cap_valuations,
        cap_family=args.cap_family,
        jobs=args.jobs,
        seed=args.seed,
        fmt=args.format,
        corpus_path=args.corpus,
        allow_large=args.allow_large,
        timings=args.timings,
    )


def _load_poset(args):
    if getattr(args, "file", None):
        return poset_from_json(load_json_file(args.file))
    if getattr(args, "name", None):
        return canned_poset(args.name, getattr(args, "k", None))
    raise InputError("need --file or --name")


def _load_algebra(args):
    if getattr(args, "algebra", None):
        return algebra_from_json(load_json_file(args.algebra))
    return from_upsets(_load_poset(args))


def _load_downset(path: str, poset) -> DownSet:
    doc = load_json_file(path)
    members = doc["members"] if isinstance(doc, dict) else doc
    mask = 0
    for m in members:
        mask |= 1 << int(m)
    return DownSet(poset, mask)


def _parse_ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(tok) for tok in text.replace(",", " ").split()]


def _emit(report: Report) -> int:
    sys.stdout.write(report.render())
    return 0 if report.ok else 1


def _single_section(cmd: str, config: RunConfig, title: str,
                    checks: list[LawCheck], facts: dict | None = None) -> Report:
    rep = Report(cmd, config)
    rep.add(Section(cmd.split()[0], title, CheckReport(tuple(checks)), facts or {}))
    return rep


# --- subcommand handlers ---------------------------------------------------

def _cmd_poset(args, config: RunConfig) -> int:
    p = _load_poset(args)
    if args.action == "show" and config.fmt == "dot":
        sys.stdout.write(poset_to_dot(p))
        return 0
    if getattr(args, "dump", None):
        with open(args.dump, "w", encoding="utf-8") as fh:
            json.dump(poset_to_json(p), fh, indent=1, sort_keys=True)
    facts = {"size": p.size, "covers": len(p.covers())}
    if args.action == "show":
        facts["json"] = json.dumps(poset_to_json(p), sort_keys=True)
    checks = [LawCheck("valid_poset", True, None, "reflexive, transitive, antisymmetric")]
    return _emit(_single_section(f"poset {args.action}", config,
                                 "poset validation", checks, facts))


def _cmd_algebra(args, config: RunConfig) -> int:
    if args.action == "build":
        alg = from_upsets(_load_poset(args), config.cap_upsets)
        if args.dump:
            with open(args.dump, "w", encoding="utf-8") as fh:
                json.dump(algebra_to_json(alg), fh, indent=1, sort_keys=True)
        rep = _single_section("algebra build", config, "up-set algebra",
                              [LawCheck("built", True)],
                              {"size": alg.size, "bottom": alg.bottom, "top": alg.top})
        return _emit(rep)
    alg = _load_algebra(args)
    if args.action == "validate":
        vrep = validate_brouwer(alg)
        return _emit(_single_section("algebra validate", config,
                                     "exhaustive law checks", list(vrep.checks),
                                     {"size": alg.size}))
    if args.action == "irreducibles":
        mi = meet_irreducibles(alg)
        ji = join_irreducibles(alg)
        facts = {
            "meet_irreducibles": mi,
            "join_irreducibles": ji,
            "meet_labels": [alg.label(x) for x in mi],
            "join_labels": [alg.label(x) for x in ji],
        }
        return _emit(_single_section("algebra irreducibles", config,
                                     "irreducible elements", [LawCheck("computed", True)],
                                     facts))
    if args.action == "interval":
        if args.element is None:
            raise InputError("algebra interval needs --element")
        if not 0 <= args.element < alg.size:
            raise InputError(f"element {args.element} out of range 0..{alg.size - 1}")
        sub = interval(alg, args.element)
        if args.dump:
            with open(args.dump, "w", encoding="utf-8") as fh:
                json.dump(algebra_to_json(sub), fh, indent=1, sort_keys=True)
        vrep = validate_brouwer(sub)
        return _emit(_single_section("algebra interval", config,
                                     f"interval [0, {args.element}]",
                                     list(vrep.checks), {"size": sub.size}))
    raise InputError(f"unknown algebra action {args.action!r}")


def _cmd_free_lattice(args, config: RunConfig) -> int:
    from .freedist import medvedev_algebra
    f = medvedev_algebra(args.n, allow_large=config.allow_large, cap=config.cap_upsets)
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            json.dump(algebra_to_json(f.algebra), fh, indent=1, sort_keys=True)
    facts = {"size": f.algebra.size, "generators": len(f.iota)}
    return _emit(_single_section("free-lattice", config,
                                 f"free distributive lattice over the {args.n}-cube",
                                 [LawCheck("built", True)], facts))


def _cmd_formula(args, config: RunConfig) -> int:
    f = parse_formula(args.formula)
    if args.action == "classify":
        facts = {
            "formula": pretty(f),
            "atoms": sorted(i + 1 for i in f.atoms()),
            "positive": classify_positive(f),
            "ipc_theorem": ipc_prove(f),
            "classical_tautology": cpc_valid(f),
        }
        return _emit(_single_section("formula classify", config, "formula classification",
                                     [LawCheck("classified", True)], facts))
    alg = _load_algebra(args)
    if args.action == "eval":
        assignment = {}
        for part in (args.assign or "").split(","):
            part = part.strip()
            if not part:
                continue
            name, _, val = part.partition("=")
            if not name.startswith("p"):
                raise InputError(f"bad assignment {part!r}")
            assignment[int(name[1:]) - 1] = int(val)
        val = eval_algebra(alg, f, assignment)
        facts = {"value": val, "label": alg.label(val)}
        if args.heyting:
            # dual-order reading: the least element becomes the top
            facts["view"] = "heyting (dual order; valid = top)"
            facts["is_top"] = val == alg.bottom
        else:
            facts["is_least"] = val == alg.bottom
        return _emit(_single_section("formula eval", config, "algebra evaluation",
                                     [LawCheck("evaluated", True)], facts))
    if args.action == "valid":
        ident, wit = is_identity(alg, f, config.cap_valuations, config.resolved_jobs())
        facts = {"identity": ident}
        if args.heyting:
            facts["view"] = "heyting (dual order; an identity evaluates to the top)"
        if wit is not None:
            facts["witness"] = {f"p{k + 1}": v for k, v in sorted(wit.items())}
            facts["witness_labels"] = {f"p{k + 1}": alg.label(v)
                                       for k, v in sorted(wit.items())}
        checks = [LawCheck("identity", ident,
                           tuple(sorted(wit.items())) if wit else None)]
        return _emit(_single_section("formula valid", config, "identity check",
                                     checks, facts))
    raise InputError(f"unknown formula action {args.action!r}")


def _cmd_kripke(args, config: RunConfig) -> int:
    p = _load_poset(args) if (args.file or args.name) else None
    if p is None:
        raise InputError("need --file or --name for the frame")
    if args.action == "valid":
        f = parse_formula(args.formula)
        ok, wit = frame_valid(p, f, config.cap_valuations, config.cap_upsets)
        facts = {"valid": ok}
        if wit is not None:
            assignment, world = wit
            facts["witness_valuation"] = {f"p{a + 1}": mask for a, mask in assignment.items()}
            facts["witness_world"] = world
        return _emit(_single_section("kripke valid", config, "frame validity",
                                     [LawCheck("frame_valid", ok)], facts))
    if args.action == "agree":
        corpus = corpus_pairs(load_corpus(config.corpus_path)
                              if config.corpus_path else curated_corpus())
        rep = dejongh_agreement(p, corpus, config.cap_valuations, config.resolved_jobs())
        return _emit(_single_section("kripke agree", config,
                                     "frame vs algebra semantics", list(rep.checks)))
    raise InputError(f"unknown kripke action {args.action!r}")


def _cmd_pmorphism(args, config: RunConfig) -> int:
    src = poset_from_json(load_json_file(args.src)) if args.src.endswith(".json") \
        else canned_poset(*_name_k(args.src))
    dst = poset_from_json(load_json_file(args.dst)) if args.dst.endswith(".json") \
        else canned_poset(*_name_k(args.dst))
    if args.action == "check":
        mapping = tuple(_parse_ints(args.map))
        pm = PMorphism(src, dst, mapping)
        ok, wit = is_pmorphism(pm)
        onto_ok = pm.is_onto() if args.onto else True
        checks = [LawCheck("pmorphism", ok, wit)]
        if args.onto:
            checks.append(LawCheck("onto", onto_ok))
        return _emit(_single_section("pmorphism check", config, "forth/back conditions",
                                     checks, {"mapping": list(mapping)}))
    if args.action == "find":
        pm = find_pmorphism(src, dst, require_onto=args.onto)
        checks = [LawCheck("found", pm is not None,
                           None, "lexicographically least map" if pm else "no map exists")]
        facts = {"mapping": list(pm.mapping)} if pm else {}
        return _emit(_single_section("pmorphism find", config, "backtracking search",
                                     checks, facts))
    raise InputError(f"unknown pmorphism action {args.action!r}")


def _name_k(token: str) -> tuple[str, int | None]:
    if ":" in token:
        name, _, k = token.partition(":")
        return name, int(k)
    return token, None


def _load_instance(args):
    if args.instance:
        return canned_splitting_instance(args.instance)
    usl = usl_from_json(load_json_file(args.usl))
    down = _load_downset(args.downset, usl.poset)
    return SplittingInstance(usl, down)


def _cmd_splitting(args, config: RunConfig) -> int:
    inst = _load_instance(args)
    if args.action == "witness":
        fam = _parse_ints(args.b_set or "")
        c = splitting_witness(inst, args.a, fam)
        facts = {"witness": c,
                 "witness_label": inst.usl.label(c) if c is not None else None}
        return _emit(_single_section("splitting witness", config, "extension witness",
                                     [LawCheck("witness_exists", c is not None)], facts))
    if args.action == "check":
        rep = (splitting_upto_depth(inst, args.depth) if args.depth
               else is_splitting_class_finite(inst))
        title = (f"witness condition below height {args.depth}" if args.depth
                 else "full splitting condition (finite instances always fail)")
        return _emit(_single_section("splitting check", config, title, list(rep.checks)))
    if args.action == "pipeline":
        corpus = corpus_pairs(load_corpus(config.corpus_path)
                              if config.corpus_path else curated_corpus())
        rep = tree_pipeline(inst, args.depth or 1, corpus, config.cap_upsets)
        return _emit(_single_section("splitting pipeline", config,
                                     "tree p-morphism and interval isomorphism",
                                     list(rep.checks)))
    raise InputError(f"unknown splitting action {args.action!r}")


def _cmd_embedding(args, config: RunConfig) -> int:
    if args.instance:
        am = canned_instance(args.instance)
    else:
        usl_raw = usl_from_json(load_json_file(args.usl))
        usl = compute_implication_table(usl_raw)
        down = _load_downset(args.downset, usl.poset)
        xs = tuple(_parse_ints(args.antichain))
        am = AlphaMap(strong_u_antichain(usl, down, xs))
    if args.n is not None and args.n != am.n:
        raise InputError(f"--n {args.n} does not match the antichain size {am.n}")
    arep = verify_alpha_embedding(am, config.cap_upsets)
    free, gamma, ialg, grep = gamma_embedding(am, config.cap_upsets)
    if config.fmt == "dot":
        hi = sorted(set(int(v) for v in gamma))
        sys.stdout.write(poset_to_dot(ialg.as_poset(), highlight=hi))
        return 0 if (arep.ok and grep.ok) else 1
    rep = Report("embedding verify", config)
    rep.add(Section("alpha", "powerset-to-interval embedding laws", arep,
                    {"n": am.n, "interval_size": ialg.size}))
    rep.add(Section("gamma", "free-lattice extension laws", grep,
                    {"free_size": free.algebra.size,
                     "image_size": len(set(int(v) for v in gamma))}))
    return _emit(rep)


def _cmd_corpus(args, config: RunConfig) -> int:
    entries = load_corpus(config.corpus_path) if config.corpus_path else curated_corpus()
    alg = None
    if args.algebra:
        alg = algebra_from_json(load_json_file(args.algebra))
    checks = []
    rows = []
    for e in entries:
        provable = ipc_prove(e.formula)
        classical = cpc_valid(e.formula)
        ok = True
        if e.expect == "IPC":
            ok = provable and classical
        elif e.expect == "CPC_not_IPC":
            ok = (not provable) and classical
        elif e.expect == "JAN":
            ok = (not provable) and classical
        row = {"name": e.name, "expect": e.expect, "ipc": provable, "cpc": classical}
        if alg is not None:
            ident, _ = is_identity(alg, e.formula, config.cap_valuations,
                                   config.resolved_jobs())
            row["identity"] = ident
            if provable and not ident:
                ok = False
        rows.append(row)
        checks.append(LawCheck(f"classification[{e.name}]", ok,
                               None if ok else (e.expect, provable, classical)))
    return _emit(_single_section("corpus run", config, "corpus classification",
                                 checks, {"entries": rows}))


def _cmd_suite(args, config: RunConfig) -> int:
    rep = run_suite(config, only=args.only)
    return _emit(rep)


# --- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--jobs", type=int, default=0,
                        help="worker threads (default: BROUWERLAB_JOBS or 1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap-upsets", type=int, default=10 ** 6)
    common.add_argument("--cap-valuations", type=int, default=10 ** 7)
    common.add_argument("--cap-family", type=int, default=3)
    common.add_argument("--corpus", default=None, help="corpus JSON file")
    common.add_argument("--allow-large", action="store_true")
    common.add_argument("--timings", action="store_true",
                        help="include wall-clock timings (breaks byte-determinism)")

    ap = argparse.ArgumentParser(
        prog="brouwerlab",
        description="finite Brouwer-algebra and Kripke-frame machinery, "
                    "verified by exhaustive computation",
        parents=[common],
    )
    ap.add_argument("--version", action="version", version=f"brouwerlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_parser(name: str, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    sp = add_parser("poset", help="validate or display posets")
    sp.add_argument("action", choices=("validate", "show"))
    sp.add_argument("--file")
    sp.add_argument("--name")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--dump")
    sp.set_defaults(fn=_cmd_poset)

    sp = add_parser("algebra", help="build and inspect Brouwer algebras")
    sp.add_argument("action", choices=("build", "validate", "irreducibles", "interval"))
    sp.add_argument("--poset", dest="file")
    sp.add_argument("--name")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--algebra")
    sp.add_argument("--element", type=int, default=None)
    sp.add_argument("--dump")
    sp.set_defaults(fn=_cmd_algebra)

    sp = add_parser("free-lattice", help="free distributive lattice over the n-cube")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--dump")
    sp.set_defaults(fn=_cmd_free_lattice)

    sp = add_parser("formula", help="evaluate, check, classify formulas")
    sp.add_argument("action", choices=("eval", "valid", "classify"))
    sp.add_argument("--formula", required=True)
    sp.add_argument("--algebra")
    sp.add_argument("--poset", dest="file")
    sp.add_argument("--name")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--assign", default="")
    sp.add_argument("--heyting", action="store_true",
                    help="present results in the dual (top-valid) order")
    sp.set_defaults(fn=_cmd_formula)

    sp = add_parser("kripke", help="frame validity and semantics agreement")
    sp.add_argument("action", choices=("valid", "agree"))
    sp.add_argument("--frame", dest="file")
    sp.add_argument("--name")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--formula", default="")
    sp.set_defaults(fn=_cmd_kripke)

    sp = add_parser("pmorphism", help="check or search for p-morphisms")
    sp.add_argument("action", choices=("check", "find"))
    sp.add_argument("--from", dest="src", required=True,
                    help="poset JSON file or canned name[:k]")
    sp.add_argument("--to", dest="dst", required=True)
    sp.add_argument("--map", default="")
    sp.add_argument("--onto", action="store_true")
    sp.set_defaults(fn=_cmd_pmorphism)

    sp = add_parser("embedding", help="strong-antichain interval embeddings")
    sp.add_argument("action", choices=("verify",))
    sp.add_argument("--instance", default=None,
                    help="canned instance: unit, pair, triple")
    sp.add_argument("--usl")
    sp.add_argument("--downset")
    sp.add_argument("--antichain", default="")
    sp.add_argument("--n", type=int, default=None)
    sp.set_defaults(fn=_cmd_embedding)

    sp = add_parser("splitting", help="splitting-class checks")
    sp.add_argument("action", choices=("witness", "check", "pipeline"))
    sp.add_argument("--instance", default=None,
                    help="canned instance: powerset3, fork, chain")
    sp.add_argument("--usl")
    sp.add_argument("--downset")
    sp.add_argument("--a", type=int, default=0)
    sp.add_argument("--b-set", dest="b_set", default="")
    sp.add_argument("--depth", type=int, default=None)
    sp.set_defaults(fn=_cmd_splitting)

    sp = add_parser("corpus", help="run the corpus battery")
    sp.add_argument("action", choices=("run",))
    sp.add_argument("--algebra")
    sp.set_defaults(fn=_cmd_corpus)

    sp = add_parser("suite", help="run the full verification battery")
    sp.add_argument("--only", nargs="*", default=None,
                    help="restrict to sections, e.g. c01 c04")
    sp.set_defaults(fn=_cmd_suite)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    config = _config_from_args(args)
    try:
        return args.fn(args, config)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except BrouwerlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
