"""Command line entry point: ``probesort {gen|run|bench|verify|lemma-rand|report}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .generators import FAMILIES, GenSpec, generate, max_extra
from .model import Instance, ParseError, mispredicted_count, parse, serialize, true_ham_path, validate_instance
from .oracle import ProbeOracle
from .seeding import default_seed, derive_seed, instance_seed
from .verifier import brute_force_solve, lemma_rand_check


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def resolve_w(token: str, n: int, m: int) -> int:
    """``12``, ``n``, ``m``, ``n/10`` or ``m/2`` (floor division)."""
    token = token.strip()
    base, _, div = token.partition("/")
    scope = {"n": n, "m": m}
    try:
        value = scope[base] if base in scope else int(base)
        if div:
            value //= int(div)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read w value {token!r}") from None
    return value


def _spec_from_args(args: argparse.Namespace, seed: int) -> GenSpec:
    n = args.n
    if args.extra is not None and args.density is not None:
        raise UsageError("give at most one of --extra and --density")
    if args.density is not None:
        extra = round(args.density * max_extra(n, args.family))
    else:
        extra = args.extra or 0
    m = n - 1 + extra
    if args.w is None:
        w = n - 1 if args.family == "flipped_backbone" else 0
    else:
        w = resolve_w(args.w, n, m)
    return GenSpec(n, extra, w, seed, args.family)


def _load_instance(args: argparse.Namespace, seed: int) -> Instance:
    if args.instance:
        try:
            return parse(Path(args.instance).read_text())
        except ParseError as exc:
            raise UsageError(f"{args.instance}: {exc}") from None
    if args.n is None:
        raise UsageError("need --instance FILE or --n to generate one")
    return generate(_spec_from_args(args, instance_seed(seed)))


def _add_gen_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--n", type=int, required=required, help="vertex count")
    p.add_argument("--extra", type=int, help="number of chords beyond the Hamiltonian backbone")
    p.add_argument("--density", type=float, help="fraction of possible chords to include")
    p.add_argument("--w", help="mispredicted edges: integer, n, m, n/K or m/K")
    p.add_argument("--family", choices=FAMILIES, default="random")


def cmd_gen(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args, instance_seed(args.seed))
    text = serialize(generate(spec))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    inst = _load_instance(args, args.seed)
    rec = bench.run_algorithm(args.algo, inst, args.seed)
    bench.write_records(sys.stdout, [rec])
    return 0


def _repro(algo: str, spec: GenSpec, seed: int) -> str:
    return (f"probesort run --algo {algo} --n {spec.n} --extra {spec.extra_edges} --w {spec.w} "
            f"--family {spec.family} --seed {seed}")


def cmd_bench(args: argparse.Namespace) -> int:
    algos = [a for a in args.algo.split(",") if a]
    for a in algos:
        if a not in bench.ALGOS:
            raise UsageError(f"unknown algorithm {a!r}")
    w_tokens = [t for t in args.w.split(",") if t.strip()]
    out_path = Path(args.out) if args.out else None
    fresh = out_path is None or not out_path.exists() or out_path.stat().st_size == 0
    out = open(out_path, "a", newline="") if out_path else sys.stdout
    rows = 0
    try:
        if fresh:
            bench.write_records(out, [])
        for n in args.n:
            for chords in args.chords:
                extra = min(round(chords * n), max_extra(n, args.family))
                m = n - 1 + extra
                for tok in w_tokens:
                    w = n - 1 if args.family == "flipped_backbone" else resolve_w(tok, n, m)
                    for trial in range(args.trials):
                        row_seed = derive_seed(args.seed, n, chords, tok, trial)
                        spec = GenSpec(n, extra, w, instance_seed(row_seed), args.family)
                        inst = generate(spec)
                        for algo in algos:
                            try:
                                rec = bench.run_algorithm(algo, inst, row_seed)
                            except Exception as exc:
                                print(f"probesort bench: {algo} failed: {exc}", file=sys.stderr)
                                print(f"reproduce with: {_repro(algo, spec, row_seed)}", file=sys.stderr)
                                return 2
                            bench.write_records(out, [rec], header=False)
                            rows += 1
        out.flush()
    finally:
        if out_path:
            out.close()
    print(f"{rows} rows", file=sys.stderr)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    inst = _load_instance(args, args.seed)
    report = validate_instance(inst)
    if not report:
        for v in report.violations:
            print(f"INVALID {v}")
        return 1
    expected = true_ham_path(inst)
    brute_path, brute_probes = brute_force_solve(ProbeOracle(inst))
    print(f"valid n={inst.n} m={inst.m} w={mispredicted_count(inst)}")
    ok = brute_path == expected
    print(f"{'PASS' if ok else 'FAIL'} brute probes={brute_probes}")
    for algo in [a for a in args.algo.split(",") if a]:
        try:
            rec = bench.run_algorithm(algo, inst, args.seed)
        except bench.IncorrectRun as exc:
            print(f"FAIL {algo} {exc}")
            ok = False
            continue
        print(f"PASS {algo} probes={rec.probes} iterations={rec.iterations}")
    return 0 if ok else 1


def cmd_lemma_rand(args: argparse.Namespace) -> int:
    rep = lemma_rand_check(args.n, args.trials, args.seed)
    for line in rep.lines():
        print(line)
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    with open(args.csv, newline="") as fh:
        try:
            records = bench.read_records(fh)
        except ValueError as exc:
            raise UsageError(f"{args.csv}: {exc}") from None
    rep = bench.bound_report(records)
    for line in rep.lines():
        print(line)
    return 1 if rep.flags else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="probesort", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    seed_default = default_seed()

    def seed_flag(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=lambda s: int(s, 0), default=seed_default,
                       help="master seed (default: $PROBESORT_SEED or 0)")

    p = sub.add_parser("gen", help="write a random instance")
    _add_gen_flags(p, required=True)
    seed_flag(p)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run one algorithm on one instance")
    p.add_argument("--algo", choices=bench.ALGOS, required=True)
    p.add_argument("--instance", help="instance file")
    _add_gen_flags(p, required=False)
    seed_flag(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bench", help="sweep a grid and write CSV rows")
    p.add_argument("--algo", default="rand", help="comma list of " + ",".join(bench.ALGOS))
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--w", default="0", help="comma list: integers, n, m, n/K, m/K")
    p.add_argument("--chords", type=_float_list, default=[3.0],
                   help="comma list of chords per vertex (default 3)")
    p.add_argument("--family", choices=FAMILIES, default="random")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--out", help="CSV file to append to (default stdout)")
    seed_flag(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="validate an instance and cross-check solvers")
    p.add_argument("--instance")
    _add_gen_flags(p, required=False)
    p.add_argument("--algo", default="rand,det,combined")
    seed_flag(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lemma-rand", help="prefix-maxima statistics of random permutations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    seed_flag(p)
    p.set_defaults(func=cmd_lemma_rand)

    p = sub.add_parser("report", help="compare bench CSV rows with the probe bounds")
    p.add_argument("csv")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"probesort {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
