"""Command line entry point: ``freewidth <verb> --instance FILE [options]``.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 property violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import lab
from .errors import FreewidthError
from .instances import load_instance
from .words import hamming_to_palindrome

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3


def cmd_reduce(inst, args):
    w = inst.reduce(inst.parse(args.word))
    out = {"reduced": inst.format(w)}
    if inst.kind == "amalgam":
        out["syllable_length"] = len(w)
    return out


def cmd_normal_form(inst, args):
    return {"normal_form": inst.format(inst.normal_form(inst.parse(args.word)))}


def cmd_signature(inst, args):
    w = inst.parse(args.word)
    if inst.kind == "hnn":
        return {"reduced": inst.format(inst.reduce(w)), "signature": list(inst.signature(w))}
    nf = inst.normal_form(w)
    sf = inst.special_form(nf)
    return {
        "normal_form": inst.format(nf),
        "syllable_length": len(nf),
        "special_form": [["a", t.theta] if hasattr(t, "theta") else [t.factor, t.element] for t in sf.tokens],
        "marks": [int(x) for x in sf.marks()],
    }


def cmd_f(inst, args):
    return inst.run_stats(inst.parse(args.word)).to_json()


def cmd_palindrome(inst, args):
    w = inst.parse(args.word)
    return {"reverse": inst.format(inst.reverse(w)), "group_palindrome": inst.is_group_palindrome(w)}


def cmd_hamming(inst, args):
    letters = inst.parse_letters(args.word)
    if inst.kind == "amalgam":
        letters = [inst.canonical_letter(x) for x in letters]
    return {"hamming": hamming_to_palindrome(letters)}


def cmd_witness(inst, args):
    w = inst.witness_word(args.K)
    return {"K": args.K, "word": inst.format(w), "stats": inst.run_stats(w).to_json()}


def cmd_bound(inst, args):
    w = inst.parse(args.word)
    out = {"m": args.m, "lower_bound": inst.plength_lower_bound(w, args.m)}
    if inst.kind == "hnn" or inst.witness is not None:
        out["f"] = inst.f(w)
    if inst.kind == "amalgam":
        # (36m+12)k-9 is what the palindrome and defect bounds give; the other form is shown for comparison
        out["product_bound_used"] = "(36m+12)k-9"
        out["product_bound_stated"] = "36k+12mk-9"
    else:
        out["product_bound_used"] = "7k+24mk-6"
    return out


def cmd_ball(inst, args):
    ball = lab.enumerate_ball(inst, args.radius)
    return {"radius": args.radius, "elements": len(ball), "layers": ball.layers}


def cmd_plength(inst, args):
    w = inst.parse(args.word)
    k = lab.plength_oracle(inst, w, args.m, max_len=args.max_len, max_k=args.max_k)
    return {"m": args.m, "max_len": args.max_len, "max_k": args.max_k,
            "plength": "unknown" if k is None else k,
            "lower_bound": inst.plength_lower_bound(w, args.m)}


def cmd_verify(inst, args):
    kwargs = {}
    if args.max_len is not None:
        kwargs["oracle_max_len" if args.suite == "oracle-consistency" else "max_len"] = args.max_len
    report = lab.verify_suite(inst, args.suite, samples=args.samples, seed=args.seed, m=args.m,
                              radius=args.radius, max_k=args.max_k, **kwargs)
    return report.to_json()


def cmd_growth(inst, args):
    return lab.growth_report(inst, args.m, args.K).to_json()


def cmd_classify(inst, args):
    return inst.summary()


VERBS = {
    "reduce": (cmd_reduce, ("word",)),
    "normal-form": (cmd_normal_form, ("word",)),
    "signature": (cmd_signature, ("word",)),
    "f": (cmd_f, ("word",)),
    "palindrome": (cmd_palindrome, ("word",)),
    "hamming": (cmd_hamming, ("word",)),
    "witness": (cmd_witness, ("K",)),
    "bound": (cmd_bound, ("word", "m")),
    "ball": (cmd_ball, ("radius",)),
    "plength": (cmd_plength, ("word", "m", "max_len", "max_k")),
    "verify": (cmd_verify, ("suite", "samples", "seed", "m", "radius", "max_len", "max_k")),
    "growth": (cmd_growth, ("m", "K")),
    "classify": (cmd_classify, ()),
}


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freewidth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, (_, flags) in VERBS.items():
        p = sub.add_parser(verb)
        p.add_argument("--instance", required=True, help="HNN or amalgam instance file (JSON)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if "word" in flags:
            p.add_argument("--word", required=True, help="whitespace separated tokens")
        if "m" in flags:
            p.add_argument("--m", type=_nonneg, default=None if verb == "verify" else 0)
        if "K" in flags:
            p.add_argument("--K", type=_positive, default=10)
        if "radius" in flags:
            p.add_argument("--radius", type=_nonneg, default=6)
        if "max_len" in flags:
            p.add_argument("--max-len", type=_nonneg, default=None if verb == "verify" else lab.DEFAULT_MAX_LEN)
        if "max_k" in flags:
            p.add_argument("--max-k", type=_nonneg, default=lab.DEFAULT_MAX_K)
        if "samples" in flags:
            p.add_argument("--samples", type=_positive, default=1000)
        if "seed" in flags:
            p.add_argument("--seed", type=int, default=0)
        if "suite" in flags:
            p.add_argument("--suite", required=True)
    return parser


def _text(report, indent: str = "") -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            lines.extend(f"{indent}  " + "  ".join(f"{k}={v}" for k, v in row.items()) for row in value)
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler, _ = VERBS[args.verb]
    try:
        lab.default_workers()
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    try:
        inst = load_instance(args.instance)
        report = handler(inst, args)
    except FreewidthError as exc:
        err = {"error": exc.name, "message": str(exc)}
        print(json.dumps(err, sort_keys=True) if args.format == "json" else f"{exc.name}: {exc}")
        return EXIT_DOMAIN
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_text(report))
    if args.verb == "verify" and report["violations"]:
        return EXIT_VIOLATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
