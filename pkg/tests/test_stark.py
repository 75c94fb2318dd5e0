import dataclasses
import random

import pytest

from zkcompare import stark
from zkcompare.algebra import STARK_Q, Polynomial, lagrange_interpolate
from zkcompare.commit import MerklePath, Transcript

Q = STARK_Q.modulus

# frozen serialized sizes of this wire format (blowup 8)
GOLDEN_SIZE_3_QUERIES = 21016
GOLDEN_SIZE_10_QUERIES = 69120


@pytest.fixture(scope="module")
def trace():
    return stark.generate_trace()


def test_trace_statement(trace):
    assert len(trace) == 1023
    assert trace[0] == 1
    assert trace[1] == 3141592
    assert trace[2] == (3141592**2 + 1) % Q
    assert trace[1022] == 2338775057


def test_trace_recurrence_and_idempotence(trace):
    v = trace.values
    for i in range(1021):
        assert v[i + 2] == (v[i + 1] ** 2 + v[i] ** 2) % Q
    assert stark.generate_trace() == trace


def test_domains(domains):
    assert (Q - 1) == 3 * 2**30
    g = domains.g
    assert pow(g, 1024, Q) == 1 and pow(g, 512, Q) != 1
    assert len(set(domains.eval_domain)) == 8192
    assert domains.eval_size // len(domains.trace_domain) == 8
    # the coset never meets the trace subgroup
    assert not set(domains.eval_domain) & set(domains.trace_domain)
    assert pow(domains.h, 8, Q) == g


def test_build_domains_rejects_unsupported_size():
    with pytest.raises(ValueError):
        stark.build_domains(blowup=2**30)


def test_interpolation_reproduces_full_trace(stark_run, domains):
    _, art, _ = stark_run
    poly = art.trace_poly
    assert poly.degree() <= 1022
    values = poly.eval_many(domains.trace_domain[:1023])
    assert values == list(art.trace.values)
    assert poly.eval(1) == 1
    assert poly.eval(pow(domains.g, 1022, Q)) == 2338775057


def test_lde(stark_run, domains):
    _, art, _ = stark_run
    assert len(art.lde) == 8192
    # every 8th coset point lies on 5*<g>, so re-interpolating those recovers P
    sub = [(domains.eval_domain[8 * j], art.lde[8 * j]) for j in range(1024)]
    assert lagrange_interpolate(sub, STARK_Q) == art.trace_poly
    const = Polynomial.constant(42, STARK_Q)
    assert stark.low_degree_extend(const, domains) == [42] * 8192


def test_constraint_quotients_are_exact(stark_run, domains):
    _, art, _ = stark_run
    divisions = stark.constraint_divisions(art.trace_poly, domains)
    assert all(rem.is_zero() for _, rem in divisions)
    g = domains.g
    p = art.trace_poly
    x = pow(g, 5, Q)
    num = (p.eval_int(x * g * g % Q) - p.eval_int(x * g % Q) ** 2 - p.eval_int(x) ** 2) % Q
    assert num == 0


def test_corrupted_trace_is_rejected(trace, domains):
    rng = random.Random(12)
    positions = [500] + rng.sample(range(1023), 9)
    for pos in positions:
        bad = trace.replace(pos, trace.values[pos] + 1)
        poly = stark.interpolate_trace(bad, domains)
        divisions = stark.constraint_divisions(poly, domains)
        assert any(not rem.is_zero() for _, rem in divisions)
        if pos <= 1021:
            assert not divisions[2][1].is_zero()
        with pytest.raises(stark.DishonestTraceError):
            stark.generate_program_constraints(poly, domains)


def test_composition_degree(stark_run):
    _, art, _ = stark_run
    assert art.composition.cp.degree() <= 2045
    assert art.composition.cp.degree() == 1023


def test_zero_quotients_compose_to_zero():
    zero = Polynomial.zero(STARK_Q)
    cs = stark.ConstraintSet(zero, zero, zero)
    cp, _ = stark.compose_constraints(cs, Transcript())
    assert cp.cp.is_zero()


def test_fold_examples():
    beta = 1234567
    assert stark.fri_fold(Polynomial.constant(9, STARK_Q), beta) == Polynomial.constant(9, STARK_Q)
    assert stark.fri_fold(Polynomial.x(STARK_Q), beta) == Polynomial.constant(beta, STARK_Q)
    folded = stark.fri_fold(Polynomial([1, 2, 3, 4], STARK_Q), beta)
    assert folded == Polynomial([1 + 2 * beta, 3 + 4 * beta], STARK_Q)


def test_fri_on_constant_has_no_folds(domains):
    layers, const, _ = stark.fri_commit(Polynomial.constant(77, STARK_Q), domains, Transcript())
    assert len(layers) == 1 and const == 77


def test_fri_layer_count_for_degree_2045(domains):
    rng = random.Random(2045)
    cp = Polynomial([rng.randrange(Q) for _ in range(2045)] + [1], STARK_Q)
    layers, _, _ = stark.fri_commit(cp, domains, Transcript())
    degrees = [layer.poly.degree() for layer in layers]
    assert degrees == [2045, 1022, 511, 255, 127, 63, 31, 15, 7, 3, 1, 0]
    assert len(layers) - 1 == 11


def test_fri_layers_halve_and_split_correctly(stark_run):
    _, art, _ = stark_run
    layers = art.fri_layers
    assert [l.poly.degree() for l in layers] == [1023, 511, 255, 127, 63, 31, 15, 7, 3, 1, 0]
    rng = random.Random(6)
    for prev, nxt in zip(layers, layers[1:]):
        assert nxt.poly.degree() <= (prev.poly.degree() + 1) // 2
        assert len(nxt.domain) == len(prev.domain) // 2
        even = Polynomial(prev.poly.coeffs[0::2], STARK_Q)
        odd = Polynomial(prev.poly.coeffs[1::2], STARK_Q)
        for _ in range(20):
            x = rng.randrange(Q)
            x2 = x * x % Q
            assert prev.poly.eval_int(x) == (even.eval_int(x2) + x * odd.eval_int(x2)) % Q


def test_fold_consistency_from_openings(stark_run, domains):
    proof, art, _ = stark_run
    inv2 = pow(2, -1, Q)
    betas = [l.beta for l in art.fri_layers[1:]]
    for i, query in zip(art.indices, proof.queries):
        x = domains.eval_domain[i]
        for k, (here, sib) in enumerate(query.layers):
            fx, fnx = here.value, sib.value
            folded = ((fx + fnx) * inv2 + betas[k] * (fx - fnx) * pow(2 * x, -1, Q)) % Q
            nxt = art.fri_layers[k + 1]
            assert folded == nxt.poly.eval_int(x * x % Q)
            x = x * x % Q


def test_honest_proof_verifies(stark_run):
    proof, _, timings = stark_run
    assert stark.stark_verify(proof)
    assert set(timings) == {"trace", "interpolate", "lde", "commit", "constraints", "fri", "queries"}


def test_verifier_replays_prover_challenges(stark_run):
    proof, art, _ = stark_run
    alphas, betas, indices = stark.replay_challenges(proof)
    assert list(alphas) + betas + indices == art.challenges
    assert indices == art.indices


def test_query_offsets(stark_run):
    proof, art, _ = stark_run
    for i, query in zip(art.indices, proof.queries):
        assert [o.path.leaf_index for o in query.trace] == [i, i + 8, i + 16]


def _with_query(proof, q, **changes):
    queries = list(proof.queries)
    queries[q] = dataclasses.replace(queries[q], **changes)
    return dataclasses.replace(proof, queries=tuple(queries))


def _shift(opening, delta=1):
    return dataclasses.replace(opening, value=(opening.value + delta) % Q)


def mutations(proof):
    q0 = proof.queries[0]
    t0 = q0.trace[0]
    flipped = bytes([t0.path.siblings[0][0] ^ 1]) + t0.path.siblings[0][1:]
    bad_path = MerklePath(t0.path.leaf_index, (flipped,) + t0.path.siblings[1:])
    layer2 = list(q0.layers)
    layer2[2] = (_shift(layer2[2][0]), layer2[2][1])
    roots = list(proof.fri_roots)
    roots[3] = bytes(32)
    return {
        "trace-opening-value": _with_query(proof, 0, trace=(_shift(t0),) + q0.trace[1:]),
        "trace-opening-path": _with_query(
            proof, 0, trace=(dataclasses.replace(t0, path=bad_path),) + q0.trace[1:]
        ),
        "fri-layer-opening": _with_query(proof, 0, layers=tuple(layer2)),
        "fri-root": dataclasses.replace(proof, fri_roots=tuple(roots)),
        "final-constant": dataclasses.replace(proof, final_constant=proof.final_constant + 1),
        "trace-root": dataclasses.replace(proof, trace_root=bytes(32)),
        "cp-root": dataclasses.replace(proof, cp_root=bytes(32)),
    }


@pytest.mark.parametrize(
    "case",
    [
        "trace-opening-value",
        "trace-opening-path",
        "fri-layer-opening",
        "fri-root",
        "final-constant",
        "trace-root",
        "cp-root",
    ],
)
def test_mutated_proof_rejected(stark_run, case):
    proof, _, _ = stark_run
    assert not stark.stark_verify(mutations(proof)[case])


def test_malformed_structure_is_false_not_error(stark_run):
    proof, _, _ = stark_run
    assert not stark.stark_verify(dataclasses.replace(proof, queries=proof.queries[:-1]))
    assert not stark.stark_verify(dataclasses.replace(proof, fri_roots=()))
    assert not stark.stark_verify(dataclasses.replace(proof, blowup=3))


def test_serialization_round_trip(stark_run):
    proof, _, _ = stark_run
    data = stark.serialize_stark_proof(proof)
    assert len(data) == GOLDEN_SIZE_10_QUERIES
    assert stark.deserialize_stark_proof(data) == proof
    with pytest.raises(stark.StarkFormatError):
        stark.deserialize_stark_proof(data[:-5])
    with pytest.raises(stark.StarkFormatError):
        stark.deserialize_stark_proof(data + b"\x00")


def test_proving_is_deterministic(stark_run):
    proof, _, _ = stark_run
    again = stark.stark_prove()
    assert stark.serialize_stark_proof(again) == stark.serialize_stark_proof(proof)


def test_size_grows_with_query_count():
    sizes = [len(stark.serialize_stark_proof(stark.stark_prove(num_queries=n))) for n in range(1, 6)]
    assert sizes == sorted(set(sizes))
    assert sizes[2] == GOLDEN_SIZE_3_QUERIES


def test_prove_rejects_zero_queries():
    with pytest.raises(ValueError):
        stark.stark_prove(num_queries=0)
