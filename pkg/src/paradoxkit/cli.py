"""Command-line interface: ``paradoxkit <command> [options]``.

Exit codes: 0 pass, 1 fail (with a counterexample in the report), 2 bad
usage or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .equidecomp import bsb_combine, compose_piecewise, verify_bijection
from .equidecomp.instances import dump_map, load_instance
from .equidecomp.piecewise import sorted_members
from .errors import ParadoxKitError
from .modular_cert import build_certificate, certificate_from_json, certificate_to_dict, verify_certificate
from .orbits import center_absorption_demo, check_distinct, hausdorff_lift_sample, orbit_segment, sphere_point
from .rotations import PythagoreanTriple, ScaledVec, brute_force_freeness
from .words import Word, enumerate_reduced, verify_f2_paradox

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_vector(text: str) -> tuple[int, int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"expected X,Y,Z, got {text!r}")
    try:
        return tuple(int(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise UsageError(f"expected integers in {text!r}") from None


def _rational_vector(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"expected x,y,z, got {text!r}")
    try:
        return tuple(Fraction(p) for p in parts)  # type: ignore[return-value]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected rationals in {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker processes (default 1)")
    p.add_argument("--seed-order", choices=["fixed"], default=argparse.SUPPRESS, help="seed ordering (only 'fixed')")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="paradoxkit", description="Exact free-group and paradox checks.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-free", parents=[common], help="brute-force freeness sweep")
    p.add_argument("--triple", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--witness", default="0,0,1")

    p = sub.add_parser("certificate", parents=[common], help="build or check a mod-c certificate")
    p.add_argument("action", choices=["build", "check"])
    p.add_argument("--triple")
    p.add_argument("--out")
    p.add_argument("--in", dest="infile")

    p = sub.add_parser("words", parents=[common], help="reduce or enumerate words")
    p.add_argument("action", choices=["reduce", "enumerate"])
    p.add_argument("word", nargs="*", help="letters s S t T (or the Greek forms)")
    p.add_argument("--max-len", type=int, default=2)

    p = sub.add_parser("f2-paradox", parents=[common], help="truncated paradox of the free group")
    p.add_argument("--max-len", type=int, required=True)

    for name in ("bsb", "compose"):
        p = sub.add_parser(name, parents=[common], help=f"{name} on a JSON instance")
        p.add_argument("--instance", required=True)
        p.add_argument("--window", type=int, default=1001)

    p = sub.add_parser("lift-sample", parents=[common], help="finite orbit lift with Y/Z/E classes")
    p.add_argument("--triple", default="3,4,5")
    p.add_argument("--seeds", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("orbit", parents=[common], help="exact orbit of one generator")
    p.add_argument("--gen", choices=["sigma", "tau"], required=True)
    p.add_argument("--seed", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--triple", default="3,4,5")

    p = sub.add_parser("absorb-demo", parents=[common], help="absorbing the center into a circle orbit")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--triple", default="3,4,5")
    return parser


# -- commands: each returns (exit code, text, json payload) --------------------------


def _triple(text: str | None) -> PythagoreanTriple:
    if text is None:
        raise UsageError("--triple is required")
    return PythagoreanTriple.parse(text)


def cmd_verify_free(args) -> tuple[int, str, Any]:
    triple = _triple(args.triple)
    if args.max_len < 0:
        raise UsageError("--max-len must be non-negative")
    witness = ScaledVec(_int_vector(args.witness), 0, triple.c)
    r = brute_force_freeness(triple, args.max_len, witness, threads=args.threads)
    payload = {
        "triple": triple.as_list(),
        "max_len": args.max_len,
        "witness": list(witness.v),
        "words_checked": r.words_checked,
        "verdict": "PASS" if r.passed else "FAIL",
        "residues_nonzero": r.residues_nonzero,
    }
    if not r.passed:
        payload["counterexample"] = {"word": r.counterexample.to_ascii(), "reason": r.reason}
    return (EXIT_PASS if r.passed else EXIT_FAIL), r.summary(), payload


def _certificate_text(doc: dict) -> str:
    lines = [f"certificate for {tuple(doc['triple'])} mod {doc['modulus']}: {doc['verdict']}"]
    lines.append(f"  multipliers k={doc['multipliers']['k']} mu={doc['multipliers']['mu']}")
    for ch in doc["checks"]:
        mark = "ok" if ch["pass"] else "FAILED"
        extra = f" ({ch['violation']})" if "violation" in ch else ""
        lines.append(f"  {ch['name']}: {mark}{extra}")
    return "\n".join(lines)


def cmd_certificate(args) -> tuple[int, str, Any]:
    if args.action == "build":
        cert = build_certificate(_triple(args.triple))
        doc = certificate_to_dict(cert)
        text = _certificate_text(doc)
        if args.out:
            Path(args.out).write_text(json.dumps(doc, indent=1) + "\n")
            text += f"\nwritten to {args.out}"
        return (EXIT_PASS if cert.verdict == "FREE" else EXIT_FAIL), text, doc
    if not args.infile:
        raise UsageError("certificate check needs --in FILE")
    try:
        cert = certificate_from_json(Path(args.infile).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read certificate: {exc}") from None
    if args.triple and PythagoreanTriple.parse(args.triple) != cert.triple:
        raise UsageError(f"certificate is for {cert.triple}, not {args.triple}")
    verdict = verify_certificate(cert)
    cert.checks, cert.verdict = verdict.checks, verdict.verdict
    doc = certificate_to_dict(cert)
    return (EXIT_PASS if verdict.free else EXIT_FAIL), _certificate_text(doc), doc


def cmd_words(args) -> tuple[int, str, Any]:
    if args.action == "reduce":
        try:
            w = Word.parse("".join(args.word))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return EXIT_PASS, w.to_ascii(), {"input": " ".join(args.word), "reduced": w.to_ascii(), "length": len(w)}
    if args.max_len < 0:
        raise UsageError("--max-len must be non-negative")
    ws = [w.to_ascii() for w in enumerate_reduced(args.max_len)]
    return EXIT_PASS, "\n".join(ws), {"max_len": args.max_len, "count": len(ws), "words": ws}


def cmd_f2(args) -> tuple[int, str, Any]:
    r = verify_f2_paradox(args.max_len)
    payload = {"max_len": r.max_len, "words_checked": r.words_checked, "checks": r.checks,
               "verdict": "PASS" if r.passed else "FAIL"}
    if not r.passed:
        payload["counterexample"] = {"word": r.counterexample.to_ascii() if r.counterexample else None,
                                     "reason": r.reason}
    return (EXIT_PASS if r.passed else EXIT_FAIL), r.summary(), payload


def _load(path: str) -> dict:
    try:
        return load_instance(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read instance: {exc}") from None


def cmd_bsb(args) -> tuple[int, str, Any]:
    inst = _load(args.instance)
    h = bsb_combine(inst["f"], inst["g"], inst["B"])
    report = verify_bijection(h, inst["A"], inst["B"], window=args.window)
    payload = {"backend": inst["backend"], "pieces": dump_map(h), "validated_on": h.validated_on,
               "bijection": {"passed": report.passed, "checked": report.checked}}
    sample = sorted_members(inst["A"], 16)[:16]
    lines = [f"bsb: {len(h)} pieces ({h.validated_on}); bijection {report.summary()}"]
    for p in h.pieces:
        lines.append(f"  {p.block!r} -> {p.motion}")
    lines.append("  h: " + ", ".join(f"{x}->{h(x)}" for x in sample))
    if not report.passed:
        payload["bijection"]["counterexample"] = {"element": _plain(report.witness), "reason": report.reason}
    return (EXIT_PASS if report.passed else EXIT_FAIL), "\n".join(lines), payload


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


def cmd_compose(args) -> tuple[int, str, Any]:
    inst = _load(args.instance)
    f, g = inst["f"], inst["g"]
    h = compose_piecewise(f, g)
    bad = None
    for x in sorted_members(inst["A"], args.window):
        if h(x) != g(f(x)):
            bad = x
            break
    bound = len(f) * len(g)
    ok = bad is None and len(h) <= bound
    payload = {"backend": inst["backend"], "pieces": dump_map(h), "piece_count": len(h), "bound": bound,
               "pointwise": bad is None}
    text = f"compose: {len(h)} pieces (bound {bound}); pointwise {'ok' if bad is None else 'FAILED'}"
    if bad is not None:
        payload["counterexample"] = {"element": _plain(bad)}
        text += f" at {bad!r}"
    return (EXIT_PASS if ok else EXIT_FAIL), text, payload


def _read_seeds(path: str, base: int) -> list[ScaledVec]:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read seeds: {exc}") from None
    seeds = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            seeds.append(sphere_point(_rational_vector(line), base))
        except ValueError as exc:
            raise UsageError(f"bad seed {line!r}: {exc}") from None
    if not seeds:
        raise UsageError("seed file is empty")
    return seeds


def cmd_lift(args) -> tuple[int, str, Any]:
    triple = _triple(args.triple)
    seeds = _read_seeds(args.seeds, triple.c)
    sample = hausdorff_lift_sample(triple, seeds, args.max_len, threads=args.threads)
    text = sample.summary()
    if args.out:
        body = sample.to_json() + "\n" if args.out.endswith(".json") else sample.to_csv()
        Path(args.out).write_text(body)
        text += f"\nwritten to {args.out}"
    else:
        text += "\n" + sample.to_csv().rstrip("\n")
    return (EXIT_PASS if sample.passed else EXIT_FAIL), text, sample.to_dict()


def cmd_orbit(args) -> tuple[int, str, Any]:
    triple = _triple(args.triple)
    if args.steps < 0:
        raise UsageError("--steps must be non-negative")
    seed = sphere_point(_rational_vector(args.seed), triple.c)
    gen = Word.parse("s" if args.gen == "sigma" else "t")
    pts = orbit_segment(gen, seed, args.steps, triple)
    dist = check_distinct(pts)
    rows = [{"i": i, "v": list(p.v), "exp": p.n} for i, p in enumerate(pts)]
    payload = {"gen": args.gen, "triple": triple.as_list(), "points": rows, "distinct": dist.distinct}
    lines = [f"{r['i']},{r['v'][0]},{r['v'][1]},{r['v'][2]},{r['exp']}" for r in rows]
    lines.append(f"distinct: {dist.distinct}")
    if not dist.distinct:
        payload["counterexample"] = {"collision": list(dist.collision)}
        lines[-1] += f" (collision {dist.collision})"
    return (EXIT_PASS if dist.distinct else EXIT_FAIL), "\n".join(lines), payload


def cmd_absorb(args) -> tuple[int, str, Any]:
    r = center_absorption_demo(_triple(args.triple), args.steps)
    payload = {
        "steps": r.n,
        "first_iterate": [str(x) for x in r.first_iterate],
        "max_norm2": str(r.max_norm2),
        "within_two_thirds": r.within_two_thirds,
        "distinct": r.distinct.distinct,
        "absorption": r.absorption.passed,
        "verdict": "PASS" if r.passed else "FAIL",
    }
    if not r.passed:
        payload["counterexample"] = {"collision": r.distinct.collision or r.absorption.collision}
    return (EXIT_PASS if r.passed else EXIT_FAIL), r.summary(), payload


COMMANDS = {
    "verify-free": cmd_verify_free,
    "certificate": cmd_certificate,
    "words": cmd_words,
    "f2-paradox": cmd_f2,
    "bsb": cmd_bsb,
    "compose": cmd_compose,
    "lift-sample": cmd_lift,
    "orbit": cmd_orbit,
    "absorb-demo": cmd_absorb,
}


def dispatch(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    args.json = getattr(args, "json", False)
    args.threads = getattr(args, "threads", 1)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=err)
        return EXIT_USAGE
    try:
        code, text, payload = COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail(args, out, err, "USAGE", str(exc), parser)
    except ParadoxKitError as exc:
        return _fail(args, out, err, exc.code, exc.message, None)
    except ValueError as exc:
        return _fail(args, out, err, "BAD_INPUT", str(exc), None)
    if args.json:
        print(json.dumps(payload, indent=1, sort_keys=False), file=out)
    else:
        print(text, file=out)
    return code


def _fail(args, out, err, code: str, message: str, parser) -> int:
    if args.json:
        print(json.dumps({"error": code, "message": message}, indent=1), file=out)
    else:
        print(f"error: {code}: {message}", file=err)
        if parser is not None:
            parser.print_usage(err)
    return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
