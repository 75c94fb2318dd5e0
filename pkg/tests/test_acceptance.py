"""One test per acceptance criterion; the terminal summary prints PASS/FAIL per line."""

import dataclasses
import random
import time

import pytest

from zkcompare import bench, snark, stark
from zkcompare.algebra import (
    BN_BASE_P,
    SNARK_R,
    STARK_Q,
    Polynomial,
    lagrange_interpolate,
)
from zkcompare.commit import MerklePath, Transcript
from zkcompare.pairing import G1, G2, G1Point, pairing

R = SNARK_R.modulus
Q = STARK_Q.modulus


def _setup(seed):
    circuit = snark.build_cubic_circuit()
    qap = snark.r1cs_to_qap(circuit)
    pk, vk = snark.trusted_setup(qap, snark.ToxicWaste.from_seed(seed, qap))
    return circuit, qap, pk, vk


def test_ac01_snark_end_to_end():
    start = time.perf_counter()
    circuit, qap, pk, vk = _setup(seed=1)
    proof = snark.prove(pk, snark.generate_witness(circuit, 3), qap)
    checks = snark.pairing_checks(vk, proof, [35])
    ok = snark.verify_snark(vk, proof, [35])
    elapsed = time.perf_counter() - start
    assert checks == [True] * 5
    assert ok
    assert elapsed < 60


def test_ac02_snark_soundness_probes(snark_keys, snark_proof):
    _, vk = snark_keys
    rejected = []
    for name in snark.SnarkProof.FIELDS:
        element = getattr(snark_proof, name)
        moved = element + (G1 if isinstance(element, G1Point) else G2)
        mutated = dataclasses.replace(snark_proof, **{name: moved})
        rejected.append(not snark.verify_snark(vk, mutated, [35]))
    rejected.append(not snark.verify_snark(vk, snark_proof, [36]))
    assert rejected == [True] * 9


def test_ac03_snark_proof_size_constant(snark_keys, circuit, qap):
    pk, _ = snark_keys
    xs = [0, 3, 7, random.Random(3).randrange(R)]
    sizes = {
        len(snark.serialize_snark_proof(snark.prove(pk, snark.generate_witness(circuit, x), qap)))
        for x in xs
    }
    assert sizes == {576}


def test_ac04_stark_statement():
    trace = stark.generate_trace()
    v = trace.values
    assert (v[0], v[1], v[1022]) == (1, 3141592, 2338775057)
    assert all(v[i + 2] == (v[i + 1] ** 2 + v[i] ** 2) % Q for i in range(1021))


def test_ac05_stark_end_to_end():
    start = time.perf_counter()
    proof = stark.stark_prove()
    elapsed = time.perf_counter() - start
    assert stark.stark_verify(proof)
    assert elapsed < 600


def test_ac06_stark_soundness(stark_run, domains):
    proof, art, _ = stark_run
    bad_trace = art.trace.replace(300, art.trace.values[300] + 1)
    poly = stark.interpolate_trace(bad_trace, domains)
    with pytest.raises(stark.DishonestTraceError):
        stark.generate_program_constraints(poly, domains)

    q0 = proof.queries[0]
    t0 = q0.trace[0]

    def with_query(**changes):
        queries = (dataclasses.replace(q0, **changes),) + proof.queries[1:]
        return dataclasses.replace(proof, queries=queries)

    flipped = bytes([t0.path.siblings[0][0] ^ 1]) + t0.path.siblings[0][1:]
    bad_path = MerklePath(t0.path.leaf_index, (flipped,) + t0.path.siblings[1:])
    roots = list(proof.fri_roots)
    roots[0] = bytes(32)
    cp_open = dataclasses.replace(q0.layers[0][0], value=(q0.layers[0][0].value + 1) % Q)
    cases = [
        with_query(trace=(dataclasses.replace(t0, value=t0.value + 1),) + q0.trace[1:]),
        with_query(trace=(dataclasses.replace(t0, path=bad_path),) + q0.trace[1:]),
        with_query(layers=((cp_open, q0.layers[0][1]),) + q0.layers[1:]),
        dataclasses.replace(proof, fri_roots=tuple(roots)),
        dataclasses.replace(proof, final_constant=(proof.final_constant + 1) % Q),
    ]
    assert [stark.stark_verify(c) for c in cases] == [False] * 5


def test_ac07_fri_structure(domains):
    rng = random.Random(7)
    cp = Polynomial([rng.randrange(Q) for _ in range(2045)] + [1], STARK_Q)
    layers, final_constant, _ = stark.fri_commit(cp, domains, Transcript())
    assert len(layers) - 1 == 11
    assert layers[-1].poly.degree() == 0
    assert layers[-1].poly.coeffs[0] == final_constant


def test_ac08_size_ratio(stark_run, snark_proof):
    proof, _, _ = stark_run
    stark_size = len(stark.serialize_stark_proof(proof))
    snark_size = len(snark.serialize_snark_proof(snark_proof))
    assert stark_size / snark_size > 50


def test_ac09_determinism(stark_run):
    proofs = []
    for _ in range(2):
        circuit, qap, pk, _ = _setup(seed=42)
        proofs.append(snark.serialize_snark_proof(snark.prove(pk, snark.generate_witness(circuit, 3), qap)))
    assert proofs[0] == proofs[1]

    proof, art, _ = stark_run
    assert stark.serialize_stark_proof(stark.stark_prove()) == stark.serialize_stark_proof(proof)
    alphas, betas, indices = stark.replay_challenges(proof)
    assert list(alphas) + betas + indices == art.challenges


def test_ac10_algebra_and_pairing_suites(stark_run, domains):
    rng = random.Random(10)
    for fid in (STARK_Q, SNARK_R, BN_BASE_P):
        for _ in range(1000):
            a, b, c = (fid(rng.randrange(fid.modulus)) for _ in range(3))
            assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
            assert a + b == b + a and a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert a + fid.zero == a and a * fid.one == a

    for _ in range(200):
        num = Polynomial([rng.randrange(Q) for _ in range(rng.randrange(1, 34))], STARK_Q)
        den = Polynomial([rng.randrange(Q) for _ in range(rng.randrange(1, 33))] + [1], STARK_Q)
        quo, rem = num.divmod(den)
        assert quo * den + rem == num and rem.degree() < den.degree()

    trace = stark_run[1].trace
    points = list(zip(domains.trace_domain, trace.values))
    poly = lagrange_interpolate(points, STARK_Q)
    assert poly.eval_many(domains.trace_domain[: len(trace)]) == list(trace.values)

    base = pairing(G1, G2)
    for _ in range(20):
        a = rng.randrange(2, 1 << 16)
        lhs = pairing(G1 * a, G2)
        assert lhs == pairing(G1, G2 * a) == base**a


def test_ac11_bench_report():
    cfg = bench.BenchConfig(iterations=1, warmup_iterations=0, seed=3)
    rows = [bench.run_snark_bench(cfg), bench.run_stark_bench(cfg)]
    assert bench.parse_csv(bench.emit_report(rows, "csv")) == rows
    md = bench.emit_report(rows, "markdown").decode()
    assert all(label in md for label in bench.TABLE_LABELS)
    rows[1].verified = False
    with pytest.raises(bench.CorrectnessError):
        bench.emit_report(rows, "csv")
