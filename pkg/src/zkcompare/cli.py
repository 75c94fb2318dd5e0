"""Command-line entry point.

Exit codes: 0 success or valid proof, 1 invalid proof or failed correctness
gate, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import secrets
import sys

from . import bench, snark, stark
from .pairing import CurveError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageError()


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zkcompare", description="Pairing SNARK and FRI STARK side by side.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("snark-setup", help="run the trusted setup and write the keys")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out-pk", required=True)
    p.add_argument("--out-vk", required=True)

    p = sub.add_parser("snark-prove", help="prove knowledge of x with x^3 + x + 5 = y")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--pk", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("snark-verify", help="check a SNARK proof against a public y")
    p.add_argument("--vk", required=True)
    p.add_argument("--proof", required=True)
    p.add_argument("--public-y", type=int, required=True)

    p = sub.add_parser("stark-prove", help="prove the FibonacciSq statement")
    p.add_argument("--queries", type=int, default=stark.DEFAULT_NUM_QUERIES)
    p.add_argument("--out", required=True)

    p = sub.add_parser("stark-verify", help="check a STARK proof")
    p.add_argument("--proof", required=True)

    p = sub.add_parser("bench", help="benchmark both systems")
    p.add_argument("--iterations", type=int, default=5)
    p.add_argument("--warmup", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--queries", type=int, default=stark.DEFAULT_NUM_QUERIES)
    p.add_argument("--csv", default=None)
    p.add_argument("--markdown", default=None)

    p = sub.add_parser("report", help="render a Markdown table from a bench CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--out", default=None)
    return parser


def _read(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)


def _seed(value: int | None) -> int:
    if value is None:
        value = secrets.randbits(63)
        print(f"seed: {value}", file=sys.stderr)
    return value


def _snark_setup(args) -> int:
    seed = _seed(args.seed)
    qap = snark.r1cs_to_qap(snark.build_cubic_circuit())
    waste = snark.ToxicWaste.from_seed(seed, qap)
    pk, vk = snark.trusted_setup(qap, waste)
    del waste
    _write(args.out_pk, pk.to_bytes())
    _write(args.out_vk, vk.to_bytes())
    return EXIT_OK


def _snark_prove(args) -> int:
    pk = snark.ProvingKey.from_bytes(_read(args.pk))
    circuit = snark.build_cubic_circuit()
    witness = snark.generate_witness(circuit, args.x)
    proof = snark.prove(pk, witness, snark.r1cs_to_qap(circuit))
    _write(args.out, snark.serialize_snark_proof(proof))
    print(f"public y = {witness.public_output}")
    return EXIT_OK


def _snark_verify(args) -> int:
    vk = snark.VerificationKey.from_bytes(_read(args.vk))
    try:
        proof = snark.deserialize_snark_proof(_read(args.proof))
    except snark.ProofFormatError as exc:
        print(f"invalid proof: {exc}", file=sys.stderr)
        return EXIT_INVALID
    ok = snark.verify_snark(vk, proof, [args.public_y])
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_INVALID


def _stark_prove(args) -> int:
    if args.queries < 1:
        raise _UsageError("--queries must be at least 1")
    proof = stark.stark_prove(num_queries=args.queries)
    _write(args.out, stark.serialize_stark_proof(proof))
    return EXIT_OK


def _stark_verify(args) -> int:
    try:
        proof = stark.deserialize_stark_proof(_read(args.proof))
    except stark.StarkFormatError as exc:
        print(f"invalid proof: {exc}", file=sys.stderr)
        return EXIT_INVALID
    ok = stark.stark_verify(proof)
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_INVALID


def _bench(args) -> int:
    try:
        cfg = bench.BenchConfig(
            iterations=args.iterations,
            warmup_iterations=args.warmup,
            seed=_seed(args.seed),
            num_queries=args.queries,
            csv_path=args.csv,
            markdown_path=args.markdown,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    try:
        rows = bench.run_bench(cfg)
    except bench.CorrectnessError as exc:
        print(f"correctness gate failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(bench.emit_report(rows, "markdown").decode())
    return EXIT_OK


def _report(args) -> int:
    rows = bench.parse_csv(_read(args.csv))
    text = bench.emit_report(rows, "markdown")
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text.decode())
    return EXIT_OK


_COMMANDS = {
    "snark-setup": _snark_setup,
    "snark-prove": _snark_prove,
    "snark-verify": _snark_verify,
    "stark-prove": _stark_prove,
    "stark-verify": _stark_verify,
    "bench": _bench,
    "report": _report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        if exc.args:
            print(f"zkcompare: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"zkcompare: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, CurveError) as exc:
        # malformed key files or bad CSV: the input is unusable, not a usage error
        print(f"zkcompare: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
