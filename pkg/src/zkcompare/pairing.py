"""BN128 (alt_bn128 / BN254) groups G1, G2 and the optimal Ate pairing.

G1 is y^2 = x^3 + 3 over Fq; G2 is the sextic D-twist y^2 = x^3 + 3/xi over
Fq2 with xi = 9 + u. Points are affine. The pairing runs a Miller loop over
the bits of 6u + 2 followed by the final exponentiation to (p^12 - 1)/r.
"""

from __future__ import annotations

from .algebra.field import BN_BASE_P, SNARK_R, FieldElement
from .algebra.tower import _FROBENIUS_GAMMA, Fq2, Fq6, Fq12, XI

P = BN_BASE_P.modulus
R = SNARK_R.modulus

# curve parameter u; the loop count of the optimal Ate pairing is 6u + 2
BN_U = 4965661367192848881
ATE_LOOP_COUNT = 6 * BN_U + 2

B1 = 3
B2 = Fq2(3, 0) * XI.inverse()

FINAL_EXPONENT = (P**12 - 1) // R
HARD_EXPONENT = (P**4 - P**2 + 1) // R


class CurveError(ValueError):
    """A point does not satisfy its curve equation, or bytes do not decode to one."""


def _scalar(k: FieldElement | int) -> int:
    if isinstance(k, FieldElement):
        return k.value
    return k % R


class G1Point:
    __slots__ = ("x", "y", "infinity")

    def __init__(self, x: int, y: int, infinity: bool = False) -> None:
        self.x = x % P
        self.y = y % P
        self.infinity = infinity

    @classmethod
    def zero(cls) -> G1Point:
        return cls(0, 0, True)

    def is_on_curve(self) -> bool:
        if self.infinity:
            return True
        return (self.y * self.y - self.x * self.x * self.x - B1) % P == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, G1Point):
            return NotImplemented
        if self.infinity or other.infinity:
            return self.infinity == other.infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.infinity))

    def __neg__(self) -> G1Point:
        if self.infinity:
            return self
        return G1Point(self.x, -self.y)

    def double(self) -> G1Point:
        if self.infinity or self.y == 0:
            return G1Point.zero()
        x, y = self.x, self.y
        lam = 3 * x * x * pow(2 * y, -1, P) % P
        x3 = (lam * lam - 2 * x) % P
        return G1Point(x3, lam * (x - x3) - y)

    def __add__(self, other: G1Point) -> G1Point:
        if self.infinity:
            return other
        if other.infinity:
            return self
        if self.x == other.x:
            if self.y == other.y:
                return self.double()
            return G1Point.zero()
        lam = (other.y - self.y) * pow(other.x - self.x, -1, P) % P
        x3 = (lam * lam - self.x - other.x) % P
        return G1Point(x3, lam * (self.x - x3) - self.y)

    def __sub__(self, other: G1Point) -> G1Point:
        return self + (-other)

    def __mul__(self, k):
        if not isinstance(k, (int, FieldElement)):
            return NotImplemented
        return g1_scalar_mul(self, k)

    __rmul__ = __mul__

    def to_bytes(self) -> bytes:
        if self.infinity:
            return bytes(64)
        return self.x.to_bytes(32, "big") + self.y.to_bytes(32, "big")

    @classmethod
    def from_bytes(cls, data: bytes) -> G1Point:
        if len(data) != 64:
            raise CurveError(f"G1 encoding must be 64 bytes, got {len(data)}")
        if data == bytes(64):
            return cls.zero()
        x = int.from_bytes(data[:32], "big")
        y = int.from_bytes(data[32:], "big")
        if x >= P or y >= P:
            raise CurveError("G1 coordinate not reduced")
        pt = cls(x, y)
        if not pt.is_on_curve():
            raise CurveError("G1 point not on curve")
        return pt

    def __repr__(self) -> str:
        if self.infinity:
            return "G1Point(infinity)"
        return f"G1Point({self.x}, {self.y})"


class G2Point:
    __slots__ = ("x", "y", "infinity")

    def __init__(self, x: Fq2, y: Fq2, infinity: bool = False) -> None:
        self.x = x
        self.y = y
        self.infinity = infinity

    @classmethod
    def zero(cls) -> G2Point:
        return cls(Fq2.zero(), Fq2.zero(), True)

    def is_on_curve(self) -> bool:
        if self.infinity:
            return True
        return self.y.square() == self.x.square() * self.x + B2

    def __eq__(self, other) -> bool:
        if not isinstance(other, G2Point):
            return NotImplemented
        if self.infinity or other.infinity:
            return self.infinity == other.infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.infinity))

    def __neg__(self) -> G2Point:
        if self.infinity:
            return self
        return G2Point(self.x, -self.y)

    def double(self) -> G2Point:
        if self.infinity or self.y.is_zero():
            return G2Point.zero()
        x, y = self.x, self.y
        lam = x.square() * 3 * (y * 2).inverse()
        x3 = lam.square() - x * 2
        return G2Point(x3, lam * (x - x3) - y)

    def __add__(self, other: G2Point) -> G2Point:
        if self.infinity:
            return other
        if other.infinity:
            return self
        if self.x == other.x:
            if self.y == other.y:
                return self.double()
            return G2Point.zero()
        lam = (other.y - self.y) * (other.x - self.x).inverse()
        x3 = lam.square() - self.x - other.x
        return G2Point(x3, lam * (self.x - x3) - self.y)

    def __sub__(self, other: G2Point) -> G2Point:
        return self + (-other)

    def __mul__(self, k):
        if not isinstance(k, (int, FieldElement)):
            return NotImplemented
        return g2_scalar_mul(self, k)

    __rmul__ = __mul__

    def to_bytes(self) -> bytes:
        # imaginary part first, as in the Ethereum precompile encoding
        if self.infinity:
            return bytes(128)
        return b"".join(
            c.to_bytes(32, "big") for c in (self.x.c1, self.x.c0, self.y.c1, self.y.c0)
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> G2Point:
        if len(data) != 128:
            raise CurveError(f"G2 encoding must be 128 bytes, got {len(data)}")
        if data == bytes(128):
            return cls.zero()
        x1, x0, y1, y0 = (int.from_bytes(data[i : i + 32], "big") for i in range(0, 128, 32))
        if max(x1, x0, y1, y0) >= P:
            raise CurveError("G2 coordinate not reduced")
        pt = cls(Fq2(x0, x1), Fq2(y0, y1))
        if not pt.is_on_curve():
            raise CurveError("G2 point not on twist curve")
        return pt

    def __repr__(self) -> str:
        if self.infinity:
            return "G2Point(infinity)"
        return f"G2Point(({self.x.c0}, {self.x.c1}), ({self.y.c0}, {self.y.c1}))"


G1 = G1Point(1, 2)
G2 = G2Point(
    Fq2(
        10857046999023057135944570762232829481370756359578518086990519993285655852781,
        11559732032986387107991004021392285783925812861821192530917403151452391805634,
    ),
    Fq2(
        8495653923123431417604973247489272438418190587263600148770280649306958101930,
        4082367875863433681332203403145435568316851327593401208105741076214120093531,
    ),
)


def _double_and_add(point, k: int, zero):
    result = zero
    for bit in bin(k)[2:]:
        result = result.double()
        if bit == "1":
            result = result + point
    return result


def g1_scalar_mul(p: G1Point, k: FieldElement | int) -> G1Point:
    if not p.is_on_curve():
        raise CurveError("G1 point not on curve")
    k = _scalar(k)
    if k == 0 or p.infinity:
        return G1Point.zero()
    return _double_and_add(p, k, G1Point.zero())


def g2_scalar_mul(p: G2Point, k: FieldElement | int) -> G2Point:
    if not p.is_on_curve():
        raise CurveError("G2 point not on twist curve")
    k = _scalar(k)
    if k == 0 or p.infinity:
        return G2Point.zero()
    return _double_and_add(p, k, G2Point.zero())


class GtElement:
    """An element of the order-r target group inside Fq12."""

    __slots__ = ("value",)

    def __init__(self, value: Fq12) -> None:
        self.value = value

    @classmethod
    def one(cls) -> GtElement:
        return cls(Fq12.one())

    def is_one(self) -> bool:
        return self.value.is_one()

    def __mul__(self, other: GtElement) -> GtElement:
        return GtElement(self.value * other.value)

    def __truediv__(self, other: GtElement) -> GtElement:
        return GtElement(self.value * other.value.inverse())

    def __pow__(self, k: int) -> GtElement:
        return GtElement(self.value ** k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GtElement):
            return NotImplemented
        return self.value == other.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return "GtElement(1)" if self.is_one() else "GtElement(...)"


def _line(t: G2Point, q: G2Point, px: int, py: int) -> tuple[Fq12, G2Point]:
    """Line through ``t`` and ``q`` (tangent if equal) evaluated at (px, py).

    Returns the sparse Fq12 line value and the point ``t + q``. With the
    twist map (x, y) -> (x w^2, y w^3) the line value is
    py - lam*px*w + (lam*xt - yt)*w^3, where lam is the slope on the twist.
    """
    xt, yt = t.x, t.y
    if t == q:
        if yt.is_zero():
            return _vertical(xt, px), G2Point.zero()
        lam = xt.square() * 3 * (yt * 2).inverse()
    elif xt == q.x:
        return _vertical(xt, px), G2Point.zero()
    else:
        lam = (q.y - yt) * (q.x - xt).inverse()
    x3 = lam.square() - xt - q.x
    y3 = lam * (xt - x3) - yt
    zero = Fq2.zero()
    value = Fq12(
        Fq6(Fq2(py, 0), zero, zero),
        Fq6(-(lam * px), lam * xt - yt, zero),
    )
    return value, G2Point(x3, y3)


def _vertical(xt: Fq2, px: int) -> Fq12:
    zero = Fq2.zero()
    return Fq12(Fq6(Fq2(px, 0), -xt, zero), Fq6.zero())


def _twist_frobenius(q: G2Point) -> G2Point:
    return G2Point(
        q.x.conjugate() * _FROBENIUS_GAMMA[2],
        q.y.conjugate() * _FROBENIUS_GAMMA[3],
    )


def miller_loop(p: G1Point, q: G2Point) -> Fq12:
    if p.infinity or q.infinity:
        return Fq12.one()
    px, py = p.x, p.y
    f = Fq12.one()
    t = q
    for bit in bin(ATE_LOOP_COUNT)[3:]:
        line, t = _line(t, t, px, py)
        f = f.square() * line
        if bit == "1":
            line, t = _line(t, q, px, py)
            f = f * line
    q1 = _twist_frobenius(q)
    neg_q2 = -_twist_frobenius(q1)
    line, t = _line(t, q1, px, py)
    f = f * line
    line, t = _line(t, neg_q2, px, py)
    return f * line


def final_exponentiation(f: Fq12) -> GtElement:
    """Raise ``f`` to (p^12 - 1)/r.

    The easy part (p^6 - 1)(p^2 + 1) uses conjugation and Frobenius; the
    remaining (p^4 - p^2 + 1)/r is a plain square-and-multiply exponentiation.
    """
    if f.is_zero():
        raise ZeroDivisionError("final exponentiation of zero")
    f = f.conjugate() * f.inverse()
    f = f.frobenius(2) * f
    return GtElement(f ** HARD_EXPONENT)


def pairing(p: G1Point, q: G2Point) -> GtElement:
    if not p.is_on_curve():
        raise CurveError("G1 point not on curve")
    if not q.is_on_curve():
        raise CurveError("G2 point not on twist curve")
    if p.infinity or q.infinity:
        return GtElement.one()
    return final_exponentiation(miller_loop(p, q))
