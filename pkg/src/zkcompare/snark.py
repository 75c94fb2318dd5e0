"""Pairing-based SNARK for the statement "I know x such that x^3 + x + 5 = y".

The pipeline is circuit -> R1CS -> witness -> QAP -> trusted setup -> prove
-> verify. Proofs carry eight curve elements (pi_A, pi'_A, pi_B, pi'_B, pi_C,
pi'_C, pi_H, pi_Kp) and are checked with five pairing equations.

Blinding convention: A-terms are scaled by rho_a, B-terms by rho_b and
C-terms by rho_c = rho_a * rho_b, so V_z = rho_c * Z(t) balances the
divisibility check. Proofs are deterministic; there is no prover-side
randomisation, so this demonstrates the mechanics rather than hiding x.
"""

from __future__ import annotations

import random
import struct
from dataclasses import dataclass

from .algebra.field import SNARK_R, FieldElement
from .algebra.polynomial import Polynomial, lagrange_interpolate, vanishing_poly
from .pairing import G1, G2, CurveError, G1Point, G2Point, pairing

R = SNARK_R.modulus

G1_BYTES = 64
G2_BYTES = 128
PROOF_BYTES = 7 * G1_BYTES + G2_BYTES


class UnsatisfiedWitnessError(ValueError):
    """The witness does not satisfy the constraint system."""


class ProofFormatError(ValueError):
    """Bytes could not be decoded into a proof or key."""


@dataclass(frozen=True)
class R1cs:
    a_matrix: tuple[tuple[int, ...], ...]
    b_matrix: tuple[tuple[int, ...], ...]
    c_matrix: tuple[tuple[int, ...], ...]
    num_vars: int
    num_constraints: int
    public_indices: tuple[int, ...]

    def __post_init__(self) -> None:
        for m in (self.a_matrix, self.b_matrix, self.c_matrix):
            if len(m) != self.num_constraints or any(len(row) != self.num_vars for row in m):
                raise ValueError("constraint matrices must be num_constraints x num_vars")
        if not self.public_indices or self.public_indices[0] != 0:
            raise ValueError("index 0 must be the public constant-one wire")

    def is_satisfied(self, witness: Witness) -> bool:
        w = witness.values
        if len(w) != self.num_vars or w[0] != 1:
            return False
        for a, b, c in zip(self.a_matrix, self.b_matrix, self.c_matrix):
            lhs = _dot(a, w) * _dot(b, w) % R
            if lhs != _dot(c, w):
                return False
        return True


def _dot(row, w) -> int:
    return sum(x * y for x, y in zip(row, w)) % R


@dataclass(frozen=True)
class Witness:
    values: tuple[int, ...]

    @property
    def public_output(self) -> int:
        return self.values[1]


# wire layout
ONE, OUT, X, S1, S2, S3 = range(6)
WIRE_NAMES = ("one", "y", "x", "s1", "s2", "s3")


def build_cubic_circuit() -> R1cs:
    """R1CS for y = x^3 + x + 5 over wires [one, y, x, s1, s2, s3].

    Constraints: x*x = s1; s1*x = s2; (s2 + x)*one = s3; y*one = s3 + 5*one.
    """

    def vec(**coeffs: int) -> tuple[int, ...]:
        row = [0] * 6
        for name, c in coeffs.items():
            row[WIRE_NAMES.index(name)] = c % R
        return tuple(row)

    constraints = [
        (vec(x=1), vec(x=1), vec(s1=1)),
        (vec(s1=1), vec(x=1), vec(s2=1)),
        (vec(s2=1, x=1), vec(one=1), vec(s3=1)),
        # y sits on the A side so the public output reaches the input commitment
        (vec(y=1), vec(one=1), vec(s3=1, one=5)),
    ]
    return R1cs(
        a_matrix=tuple(c[0] for c in constraints),
        b_matrix=tuple(c[1] for c in constraints),
        c_matrix=tuple(c[2] for c in constraints),
        num_vars=6,
        num_constraints=4,
        public_indices=(ONE, OUT),
    )


def generate_witness(circuit: R1cs, x: FieldElement | int) -> Witness:
    x = x.value if isinstance(x, FieldElement) else x % R
    s1 = x * x % R
    s2 = s1 * x % R
    s3 = (s2 + x) % R
    y = (s3 + 5) % R
    witness = Witness((1, y, x, s1, s2, s3))
    if not circuit.is_satisfied(witness):
        raise UnsatisfiedWitnessError("circuit does not match the cubic layout")
    return witness


@dataclass(frozen=True)
class Qap:
    a_polys: tuple[Polynomial, ...]
    b_polys: tuple[Polynomial, ...]
    c_polys: tuple[Polynomial, ...]
    z: Polynomial
    domain: tuple[int, ...]
    public_indices: tuple[int, ...]

    def combine(self, witness: Witness) -> tuple[Polynomial, Polynomial, Polynomial]:
        """Witness-weighted sums A(x), B(x), C(x)."""
        w = witness.values

        def weighted(polys):
            acc = Polynomial.zero(SNARK_R)
            for wk, poly in zip(w, polys):
                if wk:
                    acc = acc + poly.scale(wk)
            return acc

        return weighted(self.a_polys), weighted(self.b_polys), weighted(self.c_polys)

    def quotient(self, witness: Witness) -> tuple[Polynomial, Polynomial]:
        """``(H, remainder)`` of (A*B - C) / Z."""
        a, b, c = self.combine(witness)
        return (a * b - c).divmod(self.z)


def r1cs_to_qap(circuit: R1cs) -> Qap:
    domain = tuple(range(1, circuit.num_constraints + 1))

    def columns(matrix):
        return tuple(
            lagrange_interpolate(
                [(d, matrix[i][k]) for i, d in enumerate(domain)], SNARK_R
            )
            for k in range(circuit.num_vars)
        )

    return Qap(
        a_polys=columns(circuit.a_matrix),
        b_polys=columns(circuit.b_matrix),
        c_polys=columns(circuit.c_matrix),
        z=vanishing_poly(domain, SNARK_R),
        domain=domain,
        public_indices=circuit.public_indices,
    )


@dataclass(frozen=True)
class ToxicWaste:
    t: int
    k_alpha: int
    k_beta: int
    k_gamma: int
    rho_a: int
    rho_b: int

    @property
    def rho_c(self) -> int:
        return self.rho_a * self.rho_b % R

    @classmethod
    def from_seed(cls, seed: int, qap: Qap | None = None) -> ToxicWaste:
        rng = random.Random(seed)
        while True:
            values = [rng.randrange(1, R) for _ in range(6)]
            waste = cls(*values)
            if qap is None or qap.z.eval_int(waste.t) != 0:
                return waste

    @classmethod
    def test_vector(cls) -> ToxicWaste:
        return cls(t=17, k_alpha=2, k_beta=3, k_gamma=4, rho_a=5, rho_b=7)


@dataclass(frozen=True)
class ProvingKey:
    public_indices: tuple[int, ...]
    a_g1: tuple[G1Point, ...]
    ap_g1: tuple[G1Point, ...]
    b_g2: tuple[G2Point, ...]
    bp_g1: tuple[G1Point, ...]
    c_g1: tuple[G1Point, ...]
    cp_g1: tuple[G1Point, ...]
    k_g1: tuple[G1Point, ...]
    h_g1: tuple[G1Point, ...]

    def to_bytes(self) -> bytes:
        parts = [_pack_ints(self.public_indices)]
        parts += [_pack_points(getattr(self, name)) for name in _PK_LISTS]
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, data: bytes) -> ProvingKey:
        reader = _Reader(data)
        public = reader.ints()
        lists = {
            name: reader.points(G2Point if name == "b_g2" else G1Point) for name in _PK_LISTS
        }
        reader.finish()
        return cls(public_indices=public, **lists)


_PK_LISTS = ("a_g1", "ap_g1", "b_g2", "bp_g1", "c_g1", "cp_g1", "k_g1", "h_g1")


@dataclass(frozen=True)
class VerificationKey:
    g1: G1Point
    g2: G2Point
    v_a: G2Point
    v_b: G1Point
    v_c: G2Point
    v_z: G2Point
    ic: tuple[G1Point, ...]
    g1_kbg: G1Point
    g2_kbg: G2Point
    g2_kg: G2Point

    def to_bytes(self) -> bytes:
        return b"".join(
            [
                self.g1.to_bytes(),
                self.g2.to_bytes(),
                self.v_a.to_bytes(),
                self.v_b.to_bytes(),
                self.v_c.to_bytes(),
                self.v_z.to_bytes(),
                _pack_points(self.ic),
                self.g1_kbg.to_bytes(),
                self.g2_kbg.to_bytes(),
                self.g2_kg.to_bytes(),
            ]
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> VerificationKey:
        r = _Reader(data)
        vk = cls(
            g1=r.point(G1Point),
            g2=r.point(G2Point),
            v_a=r.point(G2Point),
            v_b=r.point(G1Point),
            v_c=r.point(G2Point),
            v_z=r.point(G2Point),
            ic=r.points(G1Point),
            g1_kbg=r.point(G1Point),
            g2_kbg=r.point(G2Point),
            g2_kg=r.point(G2Point),
        )
        r.finish()
        return vk


def trusted_setup(qap: Qap, waste: ToxicWaste) -> tuple[ProvingKey, VerificationKey]:
    """Evaluate the QAP at the secret point and encode everything in G1/G2.

    Deterministic in ``waste``. Callers that are not tests should drop the
    waste as soon as this returns.
    """
    t = waste.t
    zt = qap.z.eval_int(t)
    if zt == 0:
        raise ValueError("secret point t is a root of the vanishing polynomial")
    for name in ("k_alpha", "k_beta", "k_gamma", "rho_a", "rho_b"):
        if getattr(waste, name) % R == 0:
            raise ValueError(f"toxic waste value {name} must be nonzero")
    ra, rb, rc = waste.rho_a, waste.rho_b, waste.rho_c
    ka, kb, kg = waste.k_alpha, waste.k_beta, waste.k_gamma

    at = [p.eval_int(t) for p in qap.a_polys]
    bt = [p.eval_int(t) for p in qap.b_polys]
    ct = [p.eval_int(t) for p in qap.c_polys]

    a_s = [ra * v % R for v in at]
    b_s = [rb * v % R for v in bt]
    c_s = [rc * v % R for v in ct]

    h_len = max(qap.z.degree() - 1, 1)
    public = qap.public_indices
    pk = ProvingKey(
        public_indices=public,
        a_g1=tuple(G1 * v for v in a_s),
        ap_g1=tuple(G1 * (ka * v) for v in a_s),
        b_g2=tuple(G2 * v for v in b_s),
        bp_g1=tuple(G1 * (kb * v) for v in b_s),
        c_g1=tuple(G1 * v for v in c_s),
        cp_g1=tuple(G1 * (kg * v) for v in c_s),
        k_g1=tuple(G1 * (kb * (a + b + c)) for a, b, c in zip(a_s, b_s, c_s)),
        h_g1=tuple(G1 * pow(t, i, R) for i in range(h_len)),
    )
    vk = VerificationKey(
        g1=G1,
        g2=G2,
        v_a=G2 * ka,
        v_b=G1 * kb,
        v_c=G2 * kg,
        v_z=G2 * (rc * zt),
        ic=tuple(pk.a_g1[i] for i in public),
        g1_kbg=G1 * (kb * kg),
        g2_kbg=G2 * (kb * kg),
        g2_kg=G2 * kg,
    )
    return pk, vk


@dataclass(frozen=True)
class SnarkProof:
    pi_a: G1Point
    pi_ap: G1Point
    pi_b: G2Point
    pi_bp: G1Point
    pi_c: G1Point
    pi_cp: G1Point
    pi_h: G1Point
    pi_kp: G1Point

    FIELDS = ("pi_a", "pi_ap", "pi_b", "pi_bp", "pi_c", "pi_cp", "pi_h", "pi_kp")

    def elements(self) -> list[G1Point | G2Point]:
        return [getattr(self, name) for name in self.FIELDS]

    def is_on_curve(self) -> bool:
        return all(p.is_on_curve() for p in self.elements())


def _msm(points, scalars, zero):
    acc = zero
    for pt, s in zip(points, scalars):
        if s:
            acc = acc + pt * s
    return acc


def prove(pk: ProvingKey, witness: Witness, qap: Qap) -> SnarkProof:
    h, remainder = qap.quotient(witness)
    if not remainder.is_zero():
        raise UnsatisfiedWitnessError("(A*B - C) is not divisible by Z")
    if len(h.coeffs) > len(pk.h_g1):
        raise ValueError("proving key has too few powers of t for this quotient")
    w = witness.values
    private = [0 if k in pk.public_indices else wk for k, wk in enumerate(w)]
    zero1 = G1Point.zero()
    return SnarkProof(
        pi_a=_msm(pk.a_g1, private, zero1),
        pi_ap=_msm(pk.ap_g1, private, zero1),
        pi_b=_msm(pk.b_g2, w, G2Point.zero()),
        pi_bp=_msm(pk.bp_g1, w, zero1),
        pi_c=_msm(pk.c_g1, w, zero1),
        pi_cp=_msm(pk.cp_g1, w, zero1),
        pi_h=_msm(pk.h_g1, h.coeffs, zero1),
        pi_kp=_msm(pk.k_g1, w, zero1),
    )


def pairing_checks(
    vk: VerificationKey, proof: SnarkProof, public_inputs: list[FieldElement | int]
) -> list[bool]:
    """Evaluate the five verification equations individually."""
    if len(public_inputs) != len(vk.ic) - 1:
        raise ValueError(f"expected {len(vk.ic) - 1} public inputs, got {len(public_inputs)}")
    v_k = vk.ic[0]
    for value, ic in zip(public_inputs, vk.ic[1:]):
        v_k = v_k + ic * value
    return [
        pairing(proof.pi_a, vk.v_a) == pairing(proof.pi_ap, vk.g2),
        pairing(vk.v_b, proof.pi_b) == pairing(proof.pi_bp, vk.g2),
        pairing(proof.pi_c, vk.v_c) == pairing(proof.pi_cp, vk.g2),
        pairing(v_k + proof.pi_a, proof.pi_b)
        == pairing(proof.pi_h, vk.v_z) * pairing(proof.pi_c, vk.g2),
        pairing(v_k + proof.pi_a + proof.pi_c, vk.g2_kbg) * pairing(vk.g1_kbg, proof.pi_b)
        == pairing(proof.pi_kp, vk.g2_kg),
    ]


def verify_snark(
    vk: VerificationKey, proof: SnarkProof, public_inputs: list[FieldElement | int]
) -> bool:
    if not proof.is_on_curve():
        return False
    try:
        checks = pairing_checks(vk, proof, public_inputs)
    except CurveError:
        return False
    return all(checks)


def serialize_snark_proof(proof: SnarkProof) -> bytes:
    return b"".join(p.to_bytes() for p in proof.elements())


def deserialize_snark_proof(data: bytes) -> SnarkProof:
    if len(data) != PROOF_BYTES:
        raise ProofFormatError(f"proof must be {PROOF_BYTES} bytes, got {len(data)}")
    r = _Reader(data)
    try:
        proof = SnarkProof(
            pi_a=r.point(G1Point),
            pi_ap=r.point(G1Point),
            pi_b=r.point(G2Point),
            pi_bp=r.point(G1Point),
            pi_c=r.point(G1Point),
            pi_cp=r.point(G1Point),
            pi_h=r.point(G1Point),
            pi_kp=r.point(G1Point),
        )
    except CurveError as exc:
        raise ProofFormatError(str(exc)) from exc
    return proof


def _pack_points(points) -> bytes:
    return struct.pack(">I", len(points)) + b"".join(p.to_bytes() for p in points)


def _pack_ints(values) -> bytes:
    return struct.pack(">I", len(values)) + b"".join(struct.pack(">I", v) for v in values)


class _Reader:
    def __init__(self, data: bytes) -> None:
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise ProofFormatError("unexpected end of data")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u32(self) -> int:
        return struct.unpack(">I", self.take(4))[0]

    def point(self, cls):
        size = G1_BYTES if cls is G1Point else G2_BYTES
        try:
            return cls.from_bytes(self.take(size))
        except CurveError as exc:
            raise ProofFormatError(str(exc)) from exc

    def points(self, cls) -> tuple:
        return tuple(self.point(cls) for _ in range(self.u32()))

    def ints(self) -> tuple[int, ...]:
        return tuple(self.u32() for _ in range(self.u32()))

    def finish(self) -> None:
        if self.pos != len(self.data):
            raise ProofFormatError(f"{len(self.data) - self.pos} trailing bytes")
