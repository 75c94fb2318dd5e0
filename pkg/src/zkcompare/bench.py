"""Benchmark harness: timings, proof sizes and memory for both proof systems.

Each system runs ``warmup_iterations`` untimed passes and then
``iterations`` timed ones; reported figures are medians. A run whose proof
fails to verify aborts the whole benchmark with ``CorrectnessError``.
"""

from __future__ import annotations

import contextlib
import csv
import io
import statistics
import time
from dataclasses import dataclass, field
from typing import Iterator

from . import snark, stark

CSV_HEADER = [
    "system",
    "proof_gen_ms",
    "proof_verify_ms",
    "proof_size_bytes",
    "mem_before_kb",
    "mem_after_kb",
    "trusted_setup",
    "security",
]

TABLE_LABELS = [
    "Proof Gen Time",
    "Proof Verif Time",
    "Proof Size",
    "Trusted Setup",
    "Security Assump",
]

# Go reference implementations on an Apple M1, for side-by-side context only
REFERENCE_M1 = {
    "snark": {
        "Proof Gen Time": "55.47 ms",
        "Proof Verif Time": "1807.42 ms",
        "Proof Size": "384 B",
        "Memory Usage Before": "352 KB",
        "Memory Usage After": "3,666 KB",
    },
    "stark": {
        "Proof Gen Time": "3809.64 ms",
        "Proof Verif Time": "472.25 ms",
        "Proof Size": "68,564 B",
        "Memory Usage Before": "4,126 KB",
        "Memory Usage After": "6,405 KB",
    },
}

SNARK_PHASES = ("setup", "witness", "qap", "prove-commitments", "verify-pairings")
STARK_PHASES = ("trace", "interpolate", "lde", "commit", "constraints", "fri", "queries", "verify")


class CorrectnessError(RuntimeError):
    """A proof produced during benchmarking did not verify."""


@dataclass
class BenchConfig:
    iterations: int = 5
    warmup_iterations: int = 1
    seed: int = 0
    num_queries: int = stark.DEFAULT_NUM_QUERIES
    snark_x: int = 3
    csv_path: str | None = None
    markdown_path: str | None = None

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.warmup_iterations < 0:
            raise ValueError("warmup_iterations must be >= 0")


@dataclass
class PhaseTiming:
    phase: str
    duration_ns: int
    max_ns: int
    percent: float


@dataclass
class MemorySample:
    before_kb: int | None = None
    after_kb: int | None = None

    @property
    def available(self) -> bool:
        return self.before_kb is not None and self.after_kb is not None


@dataclass
class BenchRow:
    system: str
    proof_gen_ms: float
    proof_verify_ms: float
    proof_size_bytes: int
    mem_before_kb: int | None
    mem_after_kb: int | None
    trusted_setup: bool
    security: str
    phases: list[PhaseTiming] = field(default_factory=list, compare=False)
    verified: bool = field(default=True, compare=False)
    proof_bytes: bytes = field(default=b"", compare=False, repr=False)


def read_rss_kb() -> int | None:
    """Resident set size of this process in KB, or None if it cannot be read."""
    try:
        import psutil

        return psutil.Process().memory_info().rss // 1024
    except Exception:
        return None


@contextlib.contextmanager
def sample_memory() -> Iterator[MemorySample]:
    """Record resident memory before and after the ``with`` body.

    Both fields stay None on platforms without a readable RSS.
    """
    sample = MemorySample(before_kb=read_rss_kb())
    try:
        yield sample
    finally:
        after = read_rss_kb()
        if sample.before_kb is None or after is None:
            sample.before_kb = sample.after_kb = None
        else:
            sample.after_kb = after


def _summarise(runs: list[dict[str, int]], order: tuple[str, ...]) -> list[PhaseTiming]:
    medians = {p: int(statistics.median(r[p] for r in runs)) for p in order}
    total = sum(medians.values()) or 1
    return [
        PhaseTiming(p, medians[p], max(r[p] for r in runs), 100.0 * medians[p] / total)
        for p in order
    ]


def _ms(ns: float) -> float:
    return ns / 1e6


def _snark_once(cfg: BenchConfig) -> tuple[dict[str, int], bytes]:
    timings: dict[str, int] = {}

    def lap(name: str, start: int) -> int:
        now = time.perf_counter_ns()
        timings[name] = now - start
        return now

    t = time.perf_counter_ns()
    circuit = snark.build_cubic_circuit()
    qap = snark.r1cs_to_qap(circuit)
    waste = snark.ToxicWaste.from_seed(cfg.seed, qap)
    pk, vk = snark.trusted_setup(qap, waste)
    del waste
    t = lap("setup", t)
    witness = snark.generate_witness(circuit, cfg.snark_x)
    t = lap("witness", t)
    qap = snark.r1cs_to_qap(circuit)
    t = lap("qap", t)
    proof = snark.prove(pk, witness, qap)
    t = lap("prove-commitments", t)
    ok = snark.verify_snark(vk, proof, [witness.public_output])
    lap("verify-pairings", t)
    if not ok:
        raise CorrectnessError("SNARK proof failed verification")
    return timings, snark.serialize_snark_proof(proof)


def run_snark_bench(cfg: BenchConfig) -> BenchRow:
    for _ in range(cfg.warmup_iterations):
        _snark_once(cfg)
    runs = []
    proof_bytes = b""
    memory = MemorySample()
    for i in range(cfg.iterations):
        if i == 0:
            with sample_memory() as memory:
                timings, proof_bytes = _snark_once(cfg)
        else:
            timings, again = _snark_once(cfg)
            if again != proof_bytes:
                raise CorrectnessError("SNARK proof bytes changed between iterations")
        runs.append(timings)
    gen = statistics.median(r["witness"] + r["qap"] + r["prove-commitments"] for r in runs)
    verify = statistics.median(r["verify-pairings"] for r in runs)
    return BenchRow(
        system="snark",
        proof_gen_ms=_ms(gen),
        proof_verify_ms=_ms(verify),
        proof_size_bytes=len(proof_bytes),
        mem_before_kb=memory.before_kb,
        mem_after_kb=memory.after_kb,
        trusted_setup=True,
        security="EC",
        phases=_summarise(runs, SNARK_PHASES),
        proof_bytes=proof_bytes,
    )


def _stark_once(cfg: BenchConfig) -> tuple[dict[str, int], bytes]:
    timings: dict[str, int] = {}
    proof = stark.stark_prove(num_queries=cfg.num_queries, timings=timings)
    t = time.perf_counter_ns()
    ok = stark.stark_verify(proof)
    timings["verify"] = time.perf_counter_ns() - t
    if not ok:
        raise CorrectnessError("STARK proof failed verification")
    return timings, stark.serialize_stark_proof(proof)


def run_stark_bench(cfg: BenchConfig) -> BenchRow:
    for _ in range(cfg.warmup_iterations):
        _stark_once(cfg)
    runs = []
    proof_bytes = b""
    memory = MemorySample()
    for i in range(cfg.iterations):
        if i == 0:
            with sample_memory() as memory:
                timings, proof_bytes = _stark_once(cfg)
        else:
            timings, again = _stark_once(cfg)
            if again != proof_bytes:
                raise CorrectnessError("STARK proof bytes changed between iterations")
        runs.append(timings)
    prove_phases = STARK_PHASES[:-1]
    gen = statistics.median(sum(r[p] for p in prove_phases) for r in runs)
    verify = statistics.median(r["verify"] for r in runs)
    return BenchRow(
        system="stark",
        proof_gen_ms=_ms(gen),
        proof_verify_ms=_ms(verify),
        proof_size_bytes=len(proof_bytes),
        mem_before_kb=memory.before_kb,
        mem_after_kb=memory.after_kb,
        trusted_setup=False,
        security="Hash",
        phases=_summarise(runs, STARK_PHASES),
        proof_bytes=proof_bytes,
    )


def run_bench(cfg: BenchConfig) -> list[BenchRow]:
    """Both systems, sequentially, never interleaved within a timing window."""
    rows = [run_snark_bench(cfg), run_stark_bench(cfg)]
    if cfg.csv_path:
        with open(cfg.csv_path, "wb") as fh:
            fh.write(emit_report(rows, "csv"))
    if cfg.markdown_path:
        with open(cfg.markdown_path, "wb") as fh:
            fh.write(emit_report(rows, "markdown"))
    return rows


def size_ratio(rows: list[BenchRow]) -> float:
    by_system = {r.system: r for r in rows}
    return by_system["stark"].proof_size_bytes / by_system["snark"].proof_size_bytes


def _opt(value: int | None) -> str:
    return "" if value is None else str(value)


def emit_report(rows: list[BenchRow], fmt: str = "csv") -> bytes:
    if not rows:
        raise ValueError("no benchmark rows to report")
    failed = [r.system for r in rows if not r.verified]
    if failed:
        raise CorrectnessError(f"refusing to report unverified runs: {', '.join(failed)}")
    if fmt == "csv":
        return _emit_csv(rows)
    if fmt == "markdown":
        return _emit_markdown(rows)
    raise ValueError(f"unknown report format {fmt!r}")


def _emit_csv(rows: list[BenchRow]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(
            [
                r.system,
                repr(r.proof_gen_ms),
                repr(r.proof_verify_ms),
                r.proof_size_bytes,
                _opt(r.mem_before_kb),
                _opt(r.mem_after_kb),
                "yes" if r.trusted_setup else "no",
                r.security,
            ]
        )
    return buf.getvalue().encode()


def parse_csv(data: bytes | str) -> list[BenchRow]:
    text = data.decode() if isinstance(data, bytes) else data
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    rows = []
    for rec in reader:
        rows.append(
            BenchRow(
                system=rec["system"],
                proof_gen_ms=float(rec["proof_gen_ms"]),
                proof_verify_ms=float(rec["proof_verify_ms"]),
                proof_size_bytes=int(rec["proof_size_bytes"]),
                mem_before_kb=int(rec["mem_before_kb"]) if rec["mem_before_kb"] else None,
                mem_after_kb=int(rec["mem_after_kb"]) if rec["mem_after_kb"] else None,
                trusted_setup=rec["trusted_setup"] == "yes",
                security=rec["security"],
            )
        )
    return rows


def _fmt_kb(value: int | None) -> str:
    return "n/a" if value is None else f"{value:,} KB"


def _emit_markdown(rows: list[BenchRow]) -> bytes:
    names = [r.system.upper() for r in rows]
    refs = [REFERENCE_M1.get(r.system, {}) for r in rows]
    header = ["Metric"] + names + [f"{n} (Go ref, M1)" for n in names]
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "---|" * len(header),
    ]

    def row(label: str, values: list[str]) -> None:
        ref_values = [ref.get(label, "-") for ref in refs]
        lines.append("| " + " | ".join([label] + values + ref_values) + " |")

    row("Proof Gen Time", [f"{r.proof_gen_ms:.2f} ms" for r in rows])
    row("Proof Verif Time", [f"{r.proof_verify_ms:.2f} ms" for r in rows])
    row("Proof Size", [f"{r.proof_size_bytes:,} B" for r in rows])
    lines.append(
        "| Trusted Setup | "
        + " | ".join("Yes" if r.trusted_setup else "No" for r in rows * 2)
        + " |"
    )
    lines.append("| Security Assump | " + " | ".join(r.security for r in rows * 2) + " |")
    row("Memory Usage Before", [_fmt_kb(r.mem_before_kb) for r in rows])
    row("Memory Usage After", [_fmt_kb(r.mem_after_kb) for r in rows])

    systems = {r.system for r in rows}
    if {"snark", "stark"} <= systems:
        lines += ["", f"Proof size ratio (STARK / SNARK): {size_ratio(rows):.1f}x"]

    for r in rows:
        if not r.phases:
            continue
        lines += [
            "",
            f"### {r.system.upper()} phase breakdown",
            "",
            "| Phase | Median (ms) | Max (ms) | Share (%) |",
            "|---|---|---|---|",
        ]
        for p in r.phases:
            lines.append(
                f"| {p.phase} | {_ms(p.duration_ns):.2f} | {_ms(p.max_ns):.2f} | {p.percent:.1f} |"
            )
    return ("\n".join(lines) + "\n").encode()
