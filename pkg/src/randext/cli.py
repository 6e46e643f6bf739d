"""Command-line front end: ``randext extract`` and ``randext params``.

Exit status: 0 success, 1 no extractable output (m = 0), 2 malformed
input or inconsistent flags, 3 degenerate two-source input.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from fractions import Fraction
from pathlib import Path

from .bits import BitFormat, BitString, parse_bits, serialize_bits, shorten_input
from .errors import DegenerateInputError, ExtractorError
from .extractors import circulant_extract, dodis_extract, toeplitz_extract, vn_extract
from .ntt import ModulusChoice
from .params import (
    Direction,
    ExtractorSpec,
    Kind,
    SecondSource,
    SecurityModel,
    _largest_m,
    as_fraction,
    calc_output_length,
    calc_seed_length,
    is_na_prime,
    na_search,
    output_bound,
    parse_number,
    suggest_extractor,
)
from .trevisan import compute_params, trevisan_extract

EXIT_OK, EXIT_NO_OUTPUT, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    """Inconsistent or missing flags."""


def _number(text: str) -> Fraction:
    try:
        return parse_number(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _integer(text: str) -> int:
    value = _number(text)
    if value.denominator != 1:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    return int(value)


def _fmt(q) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q} (~{float(q):.6g})"


def _report(lines: dict) -> None:
    width = max(map(len, lines))
    for key, value in lines.items():
        print(f"{key:<{width}} : {value}", file=sys.stderr)


# ------------------------------------------------------------------ extract


@dataclasses.dataclass
class Job:
    kind: Kind
    model: SecurityModel
    eps: Fraction | None
    x: BitString
    k1: Fraction | None
    y: BitString | None = None
    k2: Fraction | None = None
    m: int = 0
    notes: list = dataclasses.field(default_factory=list)

    @property
    def n1(self) -> int:
        return len(self.x)


def _read_bits(path: str, fmt: BitFormat, what: str) -> BitString:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {what} {path!r}: {exc.strerror}") from None
    return parse_bits(data, fmt)


def _adjust_length(job: Job, policy: str) -> None:
    """Bring the input to an admissible prime length by zero-padding or trimming."""
    offset = 1 if job.kind is Kind.CIRCULANT else 0
    base = job.n1 + offset
    target = na_search(base, Direction.NEXT if policy == "up" else Direction.CLOSEST)
    if target == base:
        return
    if target > base:
        job.x = job.x + BitString.zeros(target - base)
        job.notes.append(f"padded input with {target - base} zero bits (entropy unchanged)")
        return
    cut = base - target
    job.x, new_k1 = shorten_input(job.x, job.k1 if job.k1 is not None else 0, cut)
    if job.k1 is not None:
        job.k1 = as_fraction(new_k1)
    job.notes.append(f"trimmed {cut} input bits, k1 reduced by {cut}")


def _spec(job: Job, n2: int | None, k2) -> ExtractorSpec:
    return ExtractorSpec(job.kind, job.n1, job.k1, job.eps, job.model, n2, k2)


def _seed_entropy(job: Job, seed_bits: int, used: int) -> Fraction:
    """Entropy left in the first ``used`` bits of a seed of ``seed_bits`` bits."""
    k2 = job.k2 if job.k2 is not None else Fraction(seed_bits)
    return max(k2 - max(seed_bits - used, 0), Fraction(0))


def _required_seed(job: Job, m: int) -> int:
    if job.kind is Kind.TREVISAN:
        return compute_params(job.n1, m, job.eps).d
    return calc_seed_length(job.kind, job.n1, m)


def _max_output(job: Job, seed_bits: int) -> int:
    """Largest ``m`` the security model allows, accounting for seed truncation."""
    if job.k1 is None or job.eps is None:
        raise UsageError("--k1 and --epsilon are required unless --m is given")
    if job.model.seeded:
        if job.k2 is not None and job.k2 != seed_bits:
            raise UsageError("seeded models need a uniform seed; use a two-source model with --k2")
        return calc_output_length(_spec(job, None, None))
    if job.kind in (Kind.CIRCULANT, Kind.DODIS):
        n2 = _required_seed(job, 0)
        return calc_output_length(_spec(job, n2, _seed_entropy(job, seed_bits, n2)))
    if job.kind is Kind.TREVISAN:
        # truncating a weak seed keeps its deficiency n2 - k2
        k2 = job.k2 if job.k2 is not None else Fraction(seed_bits)
        return calc_output_length(_spec(job, seed_bits, k2))

    def bound(m: int):
        n2 = job.n1 + m - 1
        return output_bound(_spec(job, n2, _seed_entropy(job, seed_bits, n2)))

    return _largest_m(bound)


def _run(job: Job, force: ModulusChoice | None) -> BitString:
    if job.kind is Kind.CIRCULANT:
        return circulant_extract(job.x, job.y, job.m, force)
    if job.kind is Kind.DODIS:
        return dodis_extract(job.x, job.y, job.m, force)
    if job.kind is Kind.TOEPLITZ:
        return toeplitz_extract(job.x, job.y, job.m, force)
    return trevisan_extract(job.x, job.y, compute_params(job.n1, job.m, job.eps))


def cmd_extract(args) -> int:
    kind = Kind(args.extractor)
    fmt = BitFormat(args.format)
    x = _read_bits(args.input, fmt, "input")
    if args.n1 is not None:
        if args.n1 > len(x):
            raise UsageError(f"--n1 {args.n1} exceeds the {len(x)} bits in {args.input}")
        x = x[: args.n1]
    job = Job(kind, SecurityModel(args.model), args.epsilon, x, args.k1, k2=args.k2)
    report = {"extractor": kind.value}

    if kind is Kind.VON_NEUMANN:
        if args.seed is not None:
            raise UsageError("von-neumann takes no seed")
        out = vn_extract(x)
        report.update({"n1": job.n1, "m": len(out)})
        _report(report)
        if not len(out):
            print("warning: every input pair was equal; output is empty", file=sys.stderr)
        Path(args.output).write_bytes(serialize_bits(out, fmt))
        return EXIT_OK

    if args.seed is None:
        raise UsageError(f"{kind.value} needs --seed")
    if kind is Kind.TREVISAN and job.eps is None:
        raise UsageError("trevisan needs --epsilon to size its field and design")
    if job.k1 is not None and not 0 <= job.k1 <= job.n1:
        raise UsageError(f"--k1 must lie in [0, {job.n1}]")
    if job.eps is not None and not 0 < job.eps < 1:
        raise UsageError("--epsilon must lie in (0, 1)")
    n1_given = job.n1
    if kind in (Kind.CIRCULANT, Kind.DODIS):
        _adjust_length(job, args.adjust)
    seed = _read_bits(args.seed, fmt, "seed")
    if job.k2 is not None and not 0 <= job.k2 <= len(seed):
        raise UsageError(f"--k2 must lie in [0, {len(seed)}]")

    bound = None
    if args.m is None or (job.k1 is not None and job.eps is not None):
        bound = _max_output(job, len(seed))
    job.m = args.m if args.m is not None else bound
    report.update({"n1 (given)": n1_given, "n1 (used)": job.n1, "k1": _fmt(job.k1) if job.k1 is not None else "n/a"})
    if not job.m or job.m <= 0:
        report["m"] = 0
        _report(report)
        print("error: no output is possible at this entropy and error level", file=sys.stderr)
        return EXIT_NO_OUTPUT

    n2 = _required_seed(job, job.m)
    if len(seed) < n2:
        raise UsageError(f"seed has {len(seed)} bits, {kind.value} needs {n2}")
    job.y = seed[:n2]
    if len(seed) > n2:
        job.notes.append(f"seed truncated from {len(seed)} to {n2} bits")
    report.update({
        "n2": n2,
        "k2": _fmt(_seed_entropy(job, len(seed), n2)),
        "m": job.m,
        "epsilon": _fmt(job.eps) if job.eps is not None else "n/a",
        "model": job.model.value,
    })
    if bound is not None and job.m > bound:
        job.notes.append(f"warning: m exceeds the security bound {bound}")
    for i, note in enumerate(job.notes, 1):
        report[f"note {i}"] = note
    _report(report)
    force = ModulusChoice.BIG if args.force_big_modulus else None
    out = _run(job, force)
    Path(args.output).write_bytes(serialize_bits(out, fmt))
    return EXIT_OK


# ------------------------------------------------------------------- params


def cmd_output_length(args) -> int:
    spec = ExtractorSpec(args.extractor, args.n1, args.k1, args.epsilon, args.model, args.n2, args.k2)
    print(calc_output_length(spec))
    return EXIT_OK


def cmd_seed_length(args) -> int:
    kind = Kind(args.extractor)
    if kind in (Kind.TOEPLITZ, Kind.TREVISAN) and args.m is None:
        raise UsageError(f"{kind.value} seed length needs --m")
    if kind is Kind.TREVISAN and args.epsilon is None:
        raise UsageError("trevisan seed length needs --epsilon")
    print(calc_seed_length(kind, args.n1, args.m or 0, args.epsilon))
    return EXIT_OK


def cmd_suggest(args) -> int:
    rec = suggest_extractor(
        exchangeable=args.exchangeable,
        second_source=args.second_source,
        adversary=args.adversary,
        seed_budget=args.seed_budget,
        n1=args.n1,
        k1=args.k1,
        eps=args.epsilon if args.epsilon is not None else Fraction(1, 2**32),
    )
    if not rec.possible:
        print("no-extraction-possible")
    else:
        print(rec.kind.value if rec.model is None else f"{rec.kind.value} {rec.model.value}")
    print(rec.reason, file=sys.stderr)
    return EXIT_OK


def cmd_na_prime(args) -> int:
    if args.direction == "check":
        print("true" if is_na_prime(args.n) else "false")
    else:
        print(na_search(args.n, args.direction))
    return EXIT_OK


# ------------------------------------------------------------------- parser


def _add_param_flags(p: argparse.ArgumentParser, *, extractor_required: bool = True) -> None:
    p.add_argument("--extractor", required=extractor_required, choices=[k.value for k in Kind])
    p.add_argument("--n1", type=_integer, help="input length in bits")
    p.add_argument("--k1", type=_number, help="input min-entropy")
    p.add_argument("--k2", type=_number, help="seed min-entropy (two-source models)")
    p.add_argument("--epsilon", type=_number, help="target error, e.g. 1e-10 or 2^-32")
    p.add_argument("--model", default=SecurityModel.QUANTUM_SEEDED.value, choices=[s.value for s in SecurityModel])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="randext", description="Seeded, two-source and deterministic randomness extraction.")
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", help="run an extractor on files")
    _add_param_flags(ex)
    ex.add_argument("--input", required=True, help="file holding the weak input")
    ex.add_argument("--seed", help="file holding the seed or second source")
    ex.add_argument("--format", default="raw", choices=[f.value for f in BitFormat],
                    help="encoding of input, seed and output files")
    ex.add_argument("--m", type=_integer, help="output length; defaults to the largest secure value")
    ex.add_argument("--output", required=True, help="file to write the extracted bits to")
    ex.add_argument("--adjust", default="up", choices=["up", "closest"],
                    help="reach an admissible length by padding (up) or via the closest admissible prime")
    ex.add_argument("--force-big-modulus", action="store_true", help=argparse.SUPPRESS)
    ex.set_defaults(func=cmd_extract)

    params = sub.add_parser("params", help="parameter calculations")
    psub = params.add_subparsers(dest="params_command", required=True)

    ol = psub.add_parser("output-length", help="largest secure output length")
    _add_param_flags(ol)
    ol.add_argument("--n2", type=_integer)
    ol.set_defaults(func=cmd_output_length)

    sl = psub.add_parser("seed-length", help="seed bits an extractor needs")
    _add_param_flags(sl)
    sl.add_argument("--m", type=_integer)
    sl.set_defaults(func=cmd_seed_length)

    sg = psub.add_parser("suggest", help="pick an extractor for a scenario")
    _add_param_flags(sg, extractor_required=False)
    sg.add_argument("--exchangeable", action="store_true")
    sg.add_argument("--second-source", default="none", choices=[s.value for s in SecondSource])
    sg.add_argument("--adversary", default="quantum", choices=["classical", "quantum"])
    sg.add_argument("--seed-budget", type=_integer)
    sg.set_defaults(func=cmd_suggest)

    na = psub.add_parser("na-prime", help="primes with 2 as a primitive root")
    na.add_argument("direction", choices=["next", "previous", "closest", "check"])
    na.add_argument("n", type=_integer)
    na.set_defaults(func=cmd_na_prime)
    return parser


def _check_param_flags(args) -> None:
    if args.command != "params" or args.params_command in ("na-prime", "suggest"):
        return
    if args.n1 is None:
        raise UsageError("--n1 is required")
    if args.params_command == "output-length" and (args.k1 is None or args.epsilon is None):
        raise UsageError("--k1 and --epsilon are required")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        _check_param_flags(args)
        return args.func(args)
    except DegenerateInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (UsageError, ExtractorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
