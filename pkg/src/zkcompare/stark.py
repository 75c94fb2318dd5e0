"""Transparent FRI-based proof for the FibonacciSq statement.

Statement: the 1023-element sequence a0 = 1, a_{n+2} = a_{n+1}^2 + a_n^2 over
F_q (q = 3221225473) ends in 2338775057. The second element (3141592) is the
prover's secret.

Pipeline: trace -> interpolation over the order-1024 subgroup -> low-degree
extension onto the coset 5*<h> of size 8192 -> Merkle commitment -> three
constraint quotients -> composition polynomial -> FRI folding down to a
constant -> query decommitments. All verifier randomness comes from the
transcript.
"""

from __future__ import annotations

import struct
import time
from dataclasses import dataclass, field

from .algebra.field import STARK_Q, FieldElement
from .algebra.polynomial import Polynomial, lagrange_interpolate
from .commit import MerklePath, MerkleTree, Transcript, merkle_commit, merkle_open, merkle_verify

Q = STARK_Q.modulus
GENERATOR = 5

TRACE_LENGTH = 1023
TRACE_DOMAIN_SIZE = 1024
FIRST_VALUE = 1
SECRET_VALUE = 3141592
RESULT_VALUE = 2338775057

DEFAULT_BLOWUP = 8
DEFAULT_NUM_QUERIES = 10
NUM_ALPHAS = 3


class DishonestTraceError(ValueError):
    """A constraint numerator is not divisible by its denominator."""


class StarkFormatError(ValueError):
    """Bytes could not be decoded into a STARK proof."""


def encode_leaf(value: int) -> bytes:
    """Field elements are hashed as 32-byte big-endian integers."""
    return value.to_bytes(32, "big")


@dataclass(frozen=True)
class Trace:
    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> FieldElement:
        return FieldElement(self.values[i], STARK_Q)

    def replace(self, index: int, value: int) -> Trace:
        values = list(self.values)
        values[index] = value % Q
        return Trace(tuple(values))


def generate_trace(
    first: int = FIRST_VALUE, secret: int = SECRET_VALUE, length: int = TRACE_LENGTH
) -> Trace:
    a = [first % Q, secret % Q]
    while len(a) < length:
        a.append((a[-1] * a[-1] + a[-2] * a[-2]) % Q)
    return Trace(tuple(a[:length]))


@dataclass(frozen=True)
class Domains:
    g: int
    trace_domain: tuple[int, ...]
    h: int
    offset: int
    eval_domain: tuple[int, ...]
    blowup: int

    @property
    def eval_size(self) -> int:
        return len(self.eval_domain)


def _powers(base: int, n: int, start: int = 1) -> tuple[int, ...]:
    out = []
    x = start
    for _ in range(n):
        out.append(x)
        x = x * base % Q
    return tuple(out)


def build_domains(blowup: int = DEFAULT_BLOWUP, trace_size: int = TRACE_DOMAIN_SIZE) -> Domains:
    eval_size = trace_size * blowup
    if (Q - 1) % eval_size:
        raise ValueError(f"no subgroup of order {eval_size} in F_q")
    g = pow(GENERATOR, (Q - 1) // trace_size, Q)
    h = pow(GENERATOR, (Q - 1) // eval_size, Q)
    assert pow(g, trace_size, Q) == 1 and pow(g, trace_size // 2, Q) != 1
    assert pow(h, eval_size // 2, Q) == Q - 1
    return Domains(
        g=g,
        trace_domain=_powers(g, trace_size),
        h=h,
        offset=GENERATOR,
        eval_domain=_powers(h, eval_size, GENERATOR),
        blowup=blowup,
    )


def interpolate_trace(trace: Trace, domains: Domains) -> Polynomial:
    points = list(zip(domains.trace_domain, trace.values))
    return lagrange_interpolate(points, STARK_Q)


def low_degree_extend(p: Polynomial, domains: Domains) -> list[int]:
    if p.degree() >= domains.eval_size:
        raise ValueError("polynomial degree exceeds the evaluation domain")
    return p.eval_many(domains.eval_domain)


def recurrence_denominator(domains: Domains, length: int = TRACE_LENGTH) -> Polynomial:
    """Vanishing polynomial of g^0 .. g^(length-3), via (x^N - 1) / tail roots."""
    n = len(domains.trace_domain)
    full = Polynomial([-1] + [0] * (n - 1) + [1], STARK_Q)
    for j in range(length - 2, n):
        full, rem = full.divide_by_linear(domains.trace_domain[j])
        assert rem == 0
    return full


@dataclass(frozen=True)
class ConstraintSet:
    boundary_first: Polynomial
    boundary_last: Polynomial
    recurrence: Polynomial

    def quotients(self) -> tuple[Polynomial, Polynomial, Polynomial]:
        return (self.boundary_first, self.boundary_last, self.recurrence)


def constraint_divisions(
    trace_poly: Polynomial,
    domains: Domains,
    first: int = FIRST_VALUE,
    result: int = RESULT_VALUE,
    length: int = TRACE_LENGTH,
) -> list[tuple[Polynomial, Polynomial]]:
    """``(quotient, remainder)`` for each of the three rational constraints."""
    g = domains.g
    x = Polynomial.x(STARK_Q)
    first_q = (trace_poly - first).divmod(x - 1)
    last_q = (trace_poly - result).divmod(x - pow(g, length - 1, Q))
    shifted = trace_poly.scale_argument(g)
    shifted2 = trace_poly.scale_argument(g * g % Q)
    numerator = shifted2 - shifted.square() - trace_poly.square()
    rec_q = numerator.divmod(recurrence_denominator(domains, length))
    return [first_q, last_q, rec_q]


def generate_program_constraints(
    trace_poly: Polynomial,
    domains: Domains,
    first: int = FIRST_VALUE,
    result: int = RESULT_VALUE,
    length: int = TRACE_LENGTH,
) -> ConstraintSet:
    divisions = constraint_divisions(trace_poly, domains, first, result, length)
    names = ("boundary-first", "boundary-last", "recurrence")
    for name, (_, rem) in zip(names, divisions):
        if not rem.is_zero():
            raise DishonestTraceError(f"{name} constraint has a nonzero remainder")
    return ConstraintSet(*(q for q, _ in divisions))


@dataclass(frozen=True)
class CompositionPoly:
    cp: Polynomial
    alphas: tuple[int, ...]


def draw_alphas(transcript: Transcript) -> tuple[tuple[int, ...], Transcript]:
    alphas = []
    for _ in range(NUM_ALPHAS):
        a, transcript = transcript.challenge_field(STARK_Q)
        alphas.append(a.value)
    return tuple(alphas), transcript


def compose_constraints(
    cs: ConstraintSet, transcript: Transcript
) -> tuple[CompositionPoly, Transcript]:
    alphas, transcript = draw_alphas(transcript)
    cp = Polynomial.zero(STARK_Q)
    for alpha, quotient in zip(alphas, cs.quotients()):
        cp = cp + quotient.scale(alpha)
    return CompositionPoly(cp, alphas), transcript


def fri_fold(p: Polynomial, beta: FieldElement | int) -> Polynomial:
    """p_even(y) + beta * p_odd(y)."""
    beta = beta.value if isinstance(beta, FieldElement) else beta % Q
    even = p.coeffs[0::2]
    odd = p.coeffs[1::2]
    out = list(even)
    for i, c in enumerate(odd):
        out[i] = (out[i] + beta * c) % Q
    return Polynomial(out, STARK_Q)


@dataclass(frozen=True)
class FriLayer:
    poly: Polynomial
    domain: tuple[int, ...]
    evaluations: tuple[int, ...]
    tree: MerkleTree
    beta: int | None = None


def _commit_layer(poly: Polynomial, domain: tuple[int, ...], beta: int | None) -> FriLayer:
    evals = tuple(poly.eval_many(domain))
    tree = merkle_commit([encode_leaf(v) for v in evals])
    return FriLayer(poly, domain, evals, tree, beta)


def fri_commit(
    cp: CompositionPoly | Polynomial, domains: Domains, transcript: Transcript
) -> tuple[list[FriLayer], int, Transcript]:
    """Commit to the composition polynomial and fold until it is constant.

    Layer 0 is ``cp`` on the full evaluation domain. Each later layer is the
    fold with a fresh beta, evaluated on the squares of the first half of the
    previous domain. Returns the layers, the final constant and the advanced
    transcript.
    """
    poly = cp.cp if isinstance(cp, CompositionPoly) else cp
    layer = _commit_layer(poly, domains.eval_domain, None)
    transcript = transcript.absorb(b"cp_root", layer.tree.root)
    layers = [layer]
    while layer.poly.degree() > 0:
        if len(layer.domain) < 2:
            raise ValueError("evaluation domain exhausted before reaching a constant")
        beta_fe, transcript = transcript.challenge_field(STARK_Q)
        half = len(layer.domain) // 2
        domain = tuple(x * x % Q for x in layer.domain[:half])
        layer = _commit_layer(fri_fold(layer.poly, beta_fe.value), domain, beta_fe.value)
        transcript = transcript.absorb(b"fri_root", layer.tree.root)
        layers.append(layer)
    final_constant = layer.poly.coeffs[0] if layer.poly.coeffs else 0
    transcript = transcript.absorb(b"final", final_constant.to_bytes(4, "big"))
    return layers, final_constant, transcript


@dataclass(frozen=True)
class Opening:
    value: int
    path: MerklePath


@dataclass(frozen=True)
class QueryBundle:
    trace: tuple[Opening, Opening, Opening]
    layers: tuple[tuple[Opening, Opening], ...]

    @property
    def cp(self) -> Opening:
        return self.layers[0][0]


@dataclass(frozen=True)
class StarkProof:
    blowup: int
    num_queries: int
    trace_root: bytes
    cp_root: bytes
    fri_roots: tuple[bytes, ...]
    final_constant: int
    queries: tuple[QueryBundle, ...]


def _params_bytes(blowup: int, num_queries: int) -> bytes:
    return struct.pack(">II", blowup, num_queries)


def draw_query_indices(
    transcript: Transcript, num_queries: int, eval_size: int
) -> tuple[list[int], Transcript]:
    indices = []
    for _ in range(num_queries):
        idx, transcript = transcript.challenge_index(eval_size // 2)
        indices.append(idx)
    return indices, transcript


def _open(values, tree: MerkleTree, index: int) -> Opening:
    return Opening(values[index], merkle_open(tree, index))


class _PhaseClock:
    def __init__(self, sink: dict[str, int] | None) -> None:
        self.sink = sink
        self.last = time.perf_counter_ns()

    def mark(self, phase: str) -> None:
        now = time.perf_counter_ns()
        if self.sink is not None:
            self.sink[phase] = self.sink.get(phase, 0) + now - self.last
        self.last = now


@dataclass
class ProverArtifacts:
    """Intermediate values kept for inspection by tests and the bench harness."""

    trace: Trace | None = None
    trace_poly: Polynomial | None = None
    lde: list[int] = field(default_factory=list)
    constraints: ConstraintSet | None = None
    composition: CompositionPoly | None = None
    fri_layers: list[FriLayer] = field(default_factory=list)
    indices: list[int] = field(default_factory=list)
    challenges: list[int] = field(default_factory=list)


def stark_prove(
    num_queries: int = DEFAULT_NUM_QUERIES,
    blowup: int = DEFAULT_BLOWUP,
    secret: int = SECRET_VALUE,
    timings: dict[str, int] | None = None,
    artifacts: ProverArtifacts | None = None,
) -> StarkProof:
    """Prove the FibonacciSq statement.

    ``timings`` (if given) receives nanoseconds per phase: trace, interpolate,
    lde, commit, constraints, fri, queries.
    """
    if num_queries < 1:
        raise ValueError("need at least one query")
    clock = _PhaseClock(timings)
    art = artifacts if artifacts is not None else ProverArtifacts()

    trace = generate_trace(secret=secret)
    domains = build_domains(blowup)
    clock.mark("trace")

    trace_poly = interpolate_trace(trace, domains)
    clock.mark("interpolate")

    lde = low_degree_extend(trace_poly, domains)
    clock.mark("lde")

    trace_tree = merkle_commit([encode_leaf(v) for v in lde])
    transcript = Transcript().absorb(b"params", _params_bytes(blowup, num_queries))
    transcript = transcript.absorb(b"trace_root", trace_tree.root)
    clock.mark("commit")

    constraints = generate_program_constraints(trace_poly, domains)
    composition, transcript = compose_constraints(constraints, transcript)
    clock.mark("constraints")

    layers, final_constant, transcript = fri_commit(composition, domains, transcript)
    clock.mark("fri")

    indices, transcript = draw_query_indices(transcript, num_queries, domains.eval_size)
    queries = []
    for i in indices:
        trace_openings = tuple(_open(lde, trace_tree, i + k * blowup) for k in range(3))
        layer_openings = []
        for layer in layers[:-1]:
            size = len(layer.domain)
            pos = i % size
            layer_openings.append(
                (
                    _open(layer.evaluations, layer.tree, pos),
                    _open(layer.evaluations, layer.tree, (pos + size // 2) % size),
                )
            )
        queries.append(QueryBundle(trace_openings, tuple(layer_openings)))
    clock.mark("queries")

    art.trace, art.trace_poly, art.lde = trace, trace_poly, lde
    art.constraints, art.composition, art.fri_layers = constraints, composition, layers
    art.indices = indices
    art.challenges = list(composition.alphas) + [l.beta for l in layers[1:]] + indices

    return StarkProof(
        blowup=blowup,
        num_queries=num_queries,
        trace_root=trace_tree.root,
        cp_root=layers[0].tree.root,
        fri_roots=tuple(l.tree.root for l in layers[1:]),
        final_constant=final_constant,
        queries=tuple(queries),
    )


def replay_challenges(proof: StarkProof) -> tuple[tuple[int, ...], list[int], list[int]]:
    """Re-derive (alphas, betas, query indices) from the proof's commitments."""
    eval_size = TRACE_DOMAIN_SIZE * proof.blowup
    t = Transcript().absorb(b"params", _params_bytes(proof.blowup, proof.num_queries))
    t = t.absorb(b"trace_root", proof.trace_root)
    alphas, t = draw_alphas(t)
    t = t.absorb(b"cp_root", proof.cp_root)
    betas = []
    for root in proof.fri_roots:
        beta, t = t.challenge_field(STARK_Q)
        betas.append(beta.value)
        t = t.absorb(b"fri_root", root)
    t = t.absorb(b"final", proof.final_constant.to_bytes(4, "big"))
    indices, t = draw_query_indices(t, proof.num_queries, eval_size)
    return alphas, betas, indices


def composition_at(
    x: int,
    p_x: int,
    p_gx: int,
    p_g2x: int,
    alphas: tuple[int, ...],
    domains: Domains,
    first: int = FIRST_VALUE,
    result: int = RESULT_VALUE,
    length: int = TRACE_LENGTH,
) -> int:
    """Value of the composition polynomial at ``x`` from three trace values."""
    g = domains.g
    n = len(domains.trace_domain)
    c0 = (p_x - first) * pow(x - 1, -1, Q)
    c1 = (p_x - result) * pow(x - pow(g, length - 1, Q), -1, Q)
    denom = pow(x, n, Q) - 1
    tail = 1
    for j in range(length - 2, n):
        tail = tail * (x - domains.trace_domain[j]) % Q
    v = denom * pow(tail, -1, Q) % Q
    c2 = (p_g2x - p_gx * p_gx - p_x * p_x) * pow(v, -1, Q)
    return (alphas[0] * c0 + alphas[1] * c1 + alphas[2] * c2) % Q


def max_fri_layers(length: int = TRACE_LENGTH) -> int:
    # quotient degrees: boundaries length-2, recurrence 2(length-1) - (length-2) = length
    return length.bit_length()


def stark_verify(proof: StarkProof) -> bool:
    try:
        return _verify(proof)
    except (ValueError, IndexError, TypeError, AttributeError):
        return False


def _verify(proof: StarkProof) -> bool:
    blowup = proof.blowup
    if blowup < 4 or blowup & (blowup - 1):
        return False
    if proof.num_queries < 1 or len(proof.queries) != proof.num_queries:
        return False
    num_layers = len(proof.fri_roots)
    if not 1 <= num_layers <= max_fri_layers():
        return False
    if not 0 <= proof.final_constant < Q:
        return False
    domains = build_domains(blowup)
    size0 = domains.eval_size

    # the last folded layer is the constant polynomial; its root must match
    final_size = size0 >> num_layers
    final_tree = merkle_commit([encode_leaf(proof.final_constant)] * final_size)
    if final_tree.root != proof.fri_roots[-1]:
        return False

    alphas, betas, indices = replay_challenges(proof)
    roots = (proof.cp_root,) + proof.fri_roots
    inv2 = pow(2, -1, Q)
    w, h = domains.offset, domains.h

    for i, query in zip(indices, proof.queries):
        if len(query.trace) != 3 or len(query.layers) != num_layers:
            return False
        for k, opening in enumerate(query.trace):
            if opening.path.leaf_index != i + k * blowup:
                return False
            if not merkle_verify(proof.trace_root, encode_leaf(opening.value), opening.path):
                return False

        x0 = w * pow(h, i, Q) % Q
        p_x, p_gx, p_g2x = (o.value for o in query.trace)
        if composition_at(x0, p_x, p_gx, p_g2x, alphas, domains) != query.cp.value:
            return False

        for k, (here, sibling) in enumerate(query.layers):
            size = size0 >> k
            pos = i % size
            if here.path.leaf_index != pos or sibling.path.leaf_index != (pos + size // 2) % size:
                return False
            for o in (here, sibling):
                if not merkle_verify(roots[k], encode_leaf(o.value), o.path):
                    return False
            x = pow(x0, 1 << k, Q)
            fx, fnx = here.value, sibling.value
            folded = ((fx + fnx) * inv2 + betas[k] * (fx - fnx) * pow(2 * x, -1, Q)) % Q
            if k + 1 < num_layers:
                expected = query.layers[k + 1][0].value
            else:
                expected = proof.final_constant
            if folded != expected:
                return False
    return True


def _height(size: int) -> int:
    return size.bit_length() - 1


def serialize_stark_proof(proof: StarkProof) -> bytes:
    out = [struct.pack(">III", proof.blowup, proof.num_queries, len(proof.fri_roots))]
    out.append(proof.trace_root)
    out.append(proof.cp_root)
    out.extend(proof.fri_roots)
    out.append(struct.pack(">I", proof.final_constant))
    for query in proof.queries:
        for o in query.trace:
            out.append(struct.pack(">I", o.value) + o.path.to_bytes())
        for pair in query.layers:
            for o in pair:
                out.append(struct.pack(">I", o.value) + o.path.to_bytes())
    return b"".join(out)


def deserialize_stark_proof(data: bytes) -> StarkProof:
    pos = 0

    def take(n: int) -> bytes:
        nonlocal pos
        if pos + n > len(data):
            raise StarkFormatError("truncated STARK proof")
        chunk = data[pos : pos + n]
        pos += n
        return chunk

    def u32() -> int:
        return struct.unpack(">I", take(4))[0]

    def opening(height: int) -> Opening:
        value = u32()
        if value >= Q:
            raise StarkFormatError("field value not reduced modulo q")
        return Opening(value, MerklePath.from_bytes(take(4 + 32 * height), height))

    blowup, num_queries, num_layers = u32(), u32(), u32()
    if blowup < 1 or blowup & (blowup - 1) or blowup > 1 << 16:
        raise StarkFormatError(f"unsupported blowup {blowup}")
    eval_height = _height(TRACE_DOMAIN_SIZE * blowup)
    if num_layers > eval_height:
        raise StarkFormatError(f"too many FRI layers: {num_layers}")
    trace_root = take(32)
    cp_root = take(32)
    fri_roots = tuple(take(32) for _ in range(num_layers))
    final_constant = u32()
    if final_constant >= Q:
        raise StarkFormatError("final constant not reduced modulo q")
    queries = []
    for _ in range(num_queries):
        trace = tuple(opening(eval_height) for _ in range(3))
        layers = tuple(
            (opening(eval_height - k), opening(eval_height - k)) for k in range(num_layers)
        )
        queries.append(QueryBundle(trace, layers))
    if pos != len(data):
        raise StarkFormatError(f"{len(data) - pos} trailing bytes")
    return StarkProof(
        blowup, num_queries, trace_root, cp_root, fri_roots, final_constant, tuple(queries)
    )
