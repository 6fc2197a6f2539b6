"""Command-line front end.

Exit codes: 0 success; 1 mathematical "no" (no witness, failed hypothesis,
failed verification row); 2 malformed input; 3 resource cap exceeded.
Output is deterministic for a fixed configuration and seed.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import images, pipeline, returns, verification, words
from .errors import InputError, ResourceLimitError, StructuralError
from .fingrp import FiniteGroup, alternating, cyclic, elem_abelian, h18, perm_from_cycles, perm_group, symmetric
from .freegrp import FreeEndo, GroupWord, fold
from .props import DEFAULT_SEED
from .words import Substitution


@dataclass
class RunConfig:
    output_format: str = "text"
    seed: int = DEFAULT_SEED
    jobs: int = 1
    max_word_length: int = words.MAX_WORD_LENGTH
    max_iterations: int = words.MAX_ITERATIONS
    enumeration_cap: int = images.ENUMERATION_CAP

    def validate(self) -> "RunConfig":
        for name in ("max_word_length", "max_iterations", "enumeration_cap", "jobs"):
            if getattr(self, name) < 1:
                raise InputError("%s must be positive" % name)
        if self.output_format not in ("text", "json"):
            raise InputError("format must be text or json")
        return self


def _load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError("cannot read config %s: %s" % (args.config, exc))
        for key in ("output_format", "seed", "jobs", "max_word_length",
                    "max_iterations", "enumeration_cap"):
            if key in data:
                setattr(cfg, key, data[key])
    if args.format:
        cfg.output_format = args.format
    if args.seed is not None:
        cfg.seed = args.seed
    if args.jobs is not None:
        cfg.jobs = args.jobs
    if args.cap_word_length is not None:
        cfg.max_word_length = args.cap_word_length
    if args.cap_iterations is not None:
        cfg.max_iterations = args.cap_iterations
    if args.cap_enumeration is not None:
        cfg.enumeration_cap = args.cap_enumeration
    return cfg.validate()


# ---------------------------------------------------------------------------
# Input loading


def load_substitution(spec: str) -> Substitution:
    """A built-in name (thue-morse, ab-a3b, ac-aca2c-ac2ac) or a JSON file
    {"alphabet": ["a","b"], "rules": {"a": "ab", "b": "ba"}}."""
    if spec in verification.BUILTIN_SUBSTITUTIONS:
        return verification.builtin_substitution(spec)
    data = _read_json(spec)
    if "rules" not in data:
        raise InputError("%s does not define a substitution (no \"rules\")" % spec)
    alphabet = data.get("alphabet") or sorted(data["rules"])
    return Substitution.make(data["rules"], alphabet)


def load_endomorphism(spec: str) -> FreeEndo:
    """The built-in name thue-morse-reduced or a JSON file
    {"generators": [...], "images": {gen: "tokens with ^-1", ...}}."""
    if spec == "thue-morse-reduced":
        return pipeline.reduced_three_generator_endo()
    data = _read_json(spec)
    if "images" not in data:
        raise InputError("%s does not define an endomorphism (no \"images\")" % spec)
    gens = data.get("generators") or sorted(data["images"])
    return FreeEndo.make({g: GroupWord.from_tokens(w) for g, w in data["images"].items()},
                         generators=gens)


def load_target(spec: str):
    """Substitution or endomorphism, decided by the builtin name or by
    which of "rules"/"images" the file carries."""
    if spec in verification.BUILTIN_SUBSTITUTIONS:
        return verification.builtin_substitution(spec)
    if spec == "thue-morse-reduced":
        return pipeline.reduced_three_generator_endo()
    data = _read_json(spec)
    if "rules" in data:
        alphabet = data.get("alphabet") or sorted(data["rules"])
        return Substitution.make(data["rules"], alphabet)
    if "images" in data:
        gens = data.get("generators") or sorted(data["images"])
        return FreeEndo.make({g: GroupWord.from_tokens(w) for g, w in data["images"].items()},
                             generators=gens)
    raise InputError("%s defines neither a substitution nor an endomorphism" % spec)


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s (not a built-in name either)" % (path, exc))
    except json.JSONDecodeError as exc:
        raise InputError("%s is not valid JSON: %s" % (path, exc))


def parse_group(spec: str) -> FiniteGroup:
    """Grammar: cyclic:N | elab:P:K | sym:N | alt:N | h18 | perm:(c y c l e s);(...)"""
    if spec == "h18":
        return h18()
    head, _, rest = spec.partition(":")
    try:
        if head == "cyclic":
            return cyclic(int(rest))
        if head == "elab":
            p, k = rest.split(":")
            return elem_abelian(int(p), int(k))
        if head == "sym":
            return symmetric(int(rest))
        if head == "alt":
            return alternating(int(rest))
        if head == "perm":
            return _parse_perm_group(rest)
    except ValueError as exc:
        raise InputError("bad group spec %r: %s" % (spec, exc))
    raise InputError("unknown group spec %r" % (spec,))


def _parse_perm_group(body: str) -> FiniteGroup:
    perms = []
    for part in body.split(";"):
        part = part.strip()
        if not part:
            continue
        cycles = []
        for chunk in part.replace(")(", ");(").split(";"):
            chunk = chunk.strip().lstrip("(").rstrip(")")
            if chunk:
                cycles.append(tuple(int(x) for x in chunk.split()))
        if not cycles:
            raise InputError("empty permutation in %r" % (body,))
        degree = max(x for c in cycles for x in c)
        perms.append((cycles, degree))
    if not perms:
        raise InputError("no permutations in %r" % (body,))
    degree = max(d for _, d in perms)
    return perm_group([perm_from_cycles(cycles, degree) for cycles, _ in perms])


def parse_generator_word(token: str) -> GroupWord:
    token = token.strip()
    if " " in token or "^" in token:
        return GroupWord.from_tokens(token)
    return GroupWord.positive(token)


# ---------------------------------------------------------------------------
# Commands


def cmd_analyze(args, cfg: RunConfig) -> int:
    report = pipeline.analyze(load_substitution(args.substitution))
    _emit(cfg, report.as_dict(), _render_analysis)
    return 0


def _render_analysis(d: dict) -> str:
    lines = ["substitution:       %s" % ", ".join("%s->%s" % kv for kv in d["substitution"].items()),
             "primitive:          %s" % d["primitive"],
             "weakly primitive:   %s%s" % (d["weakly_primitive"],
                                           " (power %d)" % d["weak_power"] if d["weak_power"] else ""),
             "connections:        %s" % (", ".join(d["connections"]) or "-"),
             "surviving letters:  %s" % "".join(d["ultimate_alphabet"]),
             "shared first/last:  %s / %s" % (d["same_first_letter"] or "-",
                                              d["same_last_letter"] or "-"),
             "group invertible:   %s" % d["ultimately_group_invertible"]]
    if d["free_rank"] is not None:
        lines.append("free of rank:       %d" % d["free_rank"])
    return "\n".join(lines)


def cmd_returns(args, cfg: RunConfig) -> int:
    subst = load_substitution(args.substitution)
    data = returns.return_words(subst, args.block,
                                max_word_length=cfg.max_word_length,
                                max_iterations=cfg.max_iterations)
    payload = data.as_dict()
    _emit(cfg, payload, lambda d: "block %s, recurrence bound %d:\n  %s"
          % (d["block"], d["recurrence_bound"], "\n  ".join(d["returns"])))
    return 0


def cmd_presentation(args, cfg: RunConfig) -> int:
    subst = load_substitution(args.substitution)
    pres = pipeline.build_presentation(subst, args.connection)
    _emit(cfg, pres.as_dict(), _render_presentation)
    return 0


def _render_presentation(d: dict) -> str:
    lines = ["generators: %s" % ", ".join(d["generators"]),
             "connection: %s   power: %d   code: %s   delay: %s"
             % (d["connection"], d["tilde_exponent"], d["code"], d["delay"]["verdict"])]
    for g in d["generators"]:
        lines.append("  %s -> %s" % (g, d["endomorphism"]["images"][g]))
    for note in d["notes"]:
        lines.append("note: %s" % note)
    return "\n".join(lines)


def cmd_check_image(args, cfg: RunConfig) -> int:
    target = load_target(args.target)
    group = parse_group(args.group)
    report = images.image_survey(target, [group], enumeration_cap=cfg.enumeration_cap)
    row = report.rows[0]
    _emit(cfg, row.as_dict(), _render_survey_row)
    if row.verdict == "resource-limit":
        raise ResourceLimitError(row.error or "enumeration cap exceeded")
    return 0 if row.verdict == "image" else 1


def _render_survey_row(d: dict) -> str:
    if d["verdict"] != "image":
        return "%s: %s%s" % (d["group"], d["verdict"],
                             " (%s)" % d["error"] if d.get("error") else "")
    w = d["witness"]
    imgs = ", ".join("%s->%s" % kv for kv in w["images"].items())
    return ("%s: image  witness %s  period %d  rank %s"
            % (d["group"], imgs, w["period"], d["rank"]))


def cmd_abelian_rank(args, cfg: RunConfig) -> int:
    endo = load_endomorphism(args.endomorphism)
    rank = images.abelian_rank(endo, args.prime)
    _emit(cfg, {"prime": args.prime, "rank": rank},
          lambda d: "rank of the mod-%d abelianized quotient: %d" % (d["prime"], d["rank"]))
    return 0


def cmd_fold(args, cfg: RunConfig) -> int:
    gens = [parse_generator_word(t) for t in args.generators.split(",") if t.strip()]
    if not gens:
        raise InputError("no generators given")
    letters = tuple(args.alphabet) if args.alphabet else \
        tuple(sorted({g for w in gens for g, _ in w.syllables}))
    graph = fold(gens, letters)
    payload = {
        "alphabet": list(letters),
        "rank": graph.rank,
        "whole_group": graph.is_whole_group,
        "basis": [str(w) for w in graph.basis()],
    }
    _emit(cfg, payload, lambda d: "rank %d, whole group: %s\nbasis: %s"
          % (d["rank"], d["whole_group"], "; ".join(d["basis"]) or "-"))
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    rows = verification.run_all(cfg.seed)
    if cfg.output_format == "json":
        print(json.dumps([{"name": r.name, "passed": r.passed, "detail": r.detail}
                          for r in rows], ensure_ascii=False, indent=2))
    else:
        width = max(len(r.name) for r in rows)
        for r in rows:
            print("%s  %-*s  %s" % ("PASS" if r.passed else "FAIL", width, r.name, r.detail))
    failed = [r for r in rows if not r.passed]
    if failed:
        print("%d of %d rows failed" % (len(failed), len(rows)), file=sys.stderr)
        return 1
    return 0


def _emit(cfg: RunConfig, payload: dict, renderer) -> None:
    if cfg.output_format == "json":
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print(renderer(payload))


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftgrp",
        description="Return-word presentations and finite images for "
                    "substitutive subshift groups.")
    parser.add_argument("--format", choices=("text", "json"), default=None)
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized property checks")
    parser.add_argument("--jobs", type=int, default=None,
                        help="accepted for compatibility; execution is single-threaded")
    parser.add_argument("--config", default=None, help="JSON config file")
    parser.add_argument("--cap-word-length", type=int, default=None)
    parser.add_argument("--cap-iterations", type=int, default=None)
    parser.add_argument("--cap-enumeration", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structural facts about a substitution")
    p.add_argument("substitution", help="built-in name or JSON file")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("returns", help="return words of a block")
    p.add_argument("substitution")
    p.add_argument("--block", required=True)
    p.set_defaults(fn=cmd_returns)

    p = sub.add_parser("presentation", help="presentation on the return-word code")
    p.add_argument("substitution")
    p.add_argument("--connection", default=None,
                   help="two-letter connection; defaults to the first available")
    p.set_defaults(fn=cmd_presentation)

    p = sub.add_parser("check-image", help="decide whether a finite group is an image")
    p.add_argument("target", help="substitution or endomorphism (built-in or JSON file)")
    p.add_argument("--group", required=True,
                   help="cyclic:N | elab:P:K | sym:N | alt:N | h18 | perm:(1 2 3);(3 4 5)")
    p.set_defaults(fn=cmd_check_image)

    p = sub.add_parser("abelian-rank", help="rank of the mod-p abelianized quotient")
    p.add_argument("endomorphism", help="built-in name or JSON file")
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(fn=cmd_abelian_rank)

    p = sub.add_parser("fold", help="folded subgroup graph of free-group generators")
    p.add_argument("--generators", required=True,
                   help="comma-separated words; token form with ^-1 allowed")
    p.add_argument("--alphabet", default=None)
    p.set_defaults(fn=cmd_fold)

    p = sub.add_parser("verify", help="run the built-in verification table")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
        return args.fn(args, cfg)
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print("resource limit: %s" % exc, file=sys.stderr)
        return 3
    except StructuralError as exc:
        print("failed: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
