"""The BN128 extension tower Fq2 -> Fq6 -> Fq12.

    Fq2  = Fq[u]  / (u^2 + 1)
    Fq6  = Fq2[v] / (v^3 - xi),  xi = 9 + u
    Fq12 = Fq6[w] / (w^2 - v)

Elements are immutable. Coordinates at the bottom level are raw integers
reduced modulo the base prime.
"""

from __future__ import annotations

from .field import BN_BASE_P, FieldElement

P = BN_BASE_P.modulus


class TowerElement:
    """Shared behaviour for the three extension levels."""

    __slots__ = ()
    level: str
    degree: int

    @classmethod
    def one(cls):
        raise NotImplementedError

    @classmethod
    def zero(cls):
        raise NotImplementedError

    @property
    def coordinates(self) -> tuple:
        raise NotImplementedError

    def square(self):
        return self * self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.one()
        base = self
        for bit in bin(exponent)[2:]:
            result = result.square()
            if bit == "1":
                result = result * base
        return result

    def __truediv__(self, other):
        return self * other.inverse()

    def __hash__(self) -> int:
        return hash((self.level, self.coordinates))

    def __repr__(self) -> str:
        return f"{type(self).__name__}{self.coordinates}"


class Fq2(TowerElement):
    __slots__ = ("c0", "c1")
    level = "Fq2"
    degree = 2

    def __init__(self, c0: int, c1: int) -> None:
        self.c0 = c0 % P
        self.c1 = c1 % P

    @classmethod
    def one(cls) -> Fq2:
        return cls(1, 0)

    @classmethod
    def zero(cls) -> Fq2:
        return cls(0, 0)

    @property
    def coordinates(self) -> tuple[FieldElement, FieldElement]:
        return (FieldElement(self.c0, BN_BASE_P), FieldElement(self.c1, BN_BASE_P))

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fq2):
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1

    def __hash__(self) -> int:
        return hash((self.c0, self.c1))

    def __add__(self, other: Fq2) -> Fq2:
        return Fq2(self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other: Fq2) -> Fq2:
        return Fq2(self.c0 - other.c0, self.c1 - other.c1)

    def __neg__(self) -> Fq2:
        return Fq2(-self.c0, -self.c1)

    def __mul__(self, other):
        if isinstance(other, int):
            return Fq2(self.c0 * other, self.c1 * other)
        a0, a1 = self.c0, self.c1
        b0, b1 = other.c0, other.c1
        t0 = a0 * b0
        t1 = a1 * b1
        return Fq2(t0 - t1, (a0 + a1) * (b0 + b1) - t0 - t1)

    __rmul__ = __mul__

    def square(self) -> Fq2:
        a0, a1 = self.c0, self.c1
        return Fq2((a0 + a1) * (a0 - a1), 2 * a0 * a1)

    def mul_by_xi(self) -> Fq2:
        a0, a1 = self.c0, self.c1
        return Fq2(9 * a0 - a1, a0 + 9 * a1)

    def conjugate(self) -> Fq2:
        return Fq2(self.c0, -self.c1)

    def inverse(self) -> Fq2:
        norm = (self.c0 * self.c0 + self.c1 * self.c1) % P
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Fq2")
        inv = pow(norm, -1, P)
        return Fq2(self.c0 * inv, -self.c1 * inv)


class Fq6(TowerElement):
    __slots__ = ("c0", "c1", "c2")
    level = "Fq6"
    degree = 6

    def __init__(self, c0: Fq2, c1: Fq2, c2: Fq2) -> None:
        self.c0 = c0
        self.c1 = c1
        self.c2 = c2

    @classmethod
    def one(cls) -> Fq6:
        return cls(Fq2.one(), Fq2.zero(), Fq2.zero())

    @classmethod
    def zero(cls) -> Fq6:
        return cls(Fq2.zero(), Fq2.zero(), Fq2.zero())

    @property
    def coordinates(self) -> tuple[Fq2, Fq2, Fq2]:
        return (self.c0, self.c1, self.c2)

    def is_zero(self) -> bool:
        return self.c0.is_zero() and self.c1.is_zero() and self.c2.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fq6):
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1 and self.c2 == other.c2

    def __hash__(self) -> int:
        return hash((self.c0, self.c1, self.c2))

    def __add__(self, other: Fq6) -> Fq6:
        return Fq6(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: Fq6) -> Fq6:
        return Fq6(self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> Fq6:
        return Fq6(-self.c0, -self.c1, -self.c2)

    def __mul__(self, other):
        if isinstance(other, Fq2):
            return Fq6(self.c0 * other, self.c1 * other, self.c2 * other)
        a0, a1, a2 = self.c0, self.c1, self.c2
        b0, b1, b2 = other.c0, other.c1, other.c2
        t0 = a0 * b0
        t1 = a1 * b1
        t2 = a2 * b2
        c0 = ((a1 + a2) * (b1 + b2) - t1 - t2).mul_by_xi() + t0
        c1 = (a0 + a1) * (b0 + b1) - t0 - t1 + t2.mul_by_xi()
        c2 = (a0 + a2) * (b0 + b2) - t0 - t2 + t1
        return Fq6(c0, c1, c2)

    def mul_by_v(self) -> Fq6:
        return Fq6(self.c2.mul_by_xi(), self.c0, self.c1)

    def inverse(self) -> Fq6:
        a0, a1, a2 = self.c0, self.c1, self.c2
        t0 = a0.square() - (a1 * a2).mul_by_xi()
        t1 = a2.square().mul_by_xi() - a0 * a1
        t2 = a1.square() - a0 * a2
        norm = a0 * t0 + (a2 * t1).mul_by_xi() + (a1 * t2).mul_by_xi()
        if norm.is_zero():
            raise ZeroDivisionError("inverse of zero in Fq6")
        inv = norm.inverse()
        return Fq6(t0 * inv, t1 * inv, t2 * inv)


class Fq12(TowerElement):
    __slots__ = ("c0", "c1")
    level = "Fq12"
    degree = 12

    def __init__(self, c0: Fq6, c1: Fq6) -> None:
        self.c0 = c0
        self.c1 = c1

    @classmethod
    def one(cls) -> Fq12:
        return cls(Fq6.one(), Fq6.zero())

    @classmethod
    def zero(cls) -> Fq12:
        return cls(Fq6.zero(), Fq6.zero())

    @property
    def coordinates(self) -> tuple[Fq6, Fq6]:
        return (self.c0, self.c1)

    def is_zero(self) -> bool:
        return self.c0.is_zero() and self.c1.is_zero()

    def is_one(self) -> bool:
        return self == Fq12.one()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fq12):
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1

    def __hash__(self) -> int:
        return hash((self.c0, self.c1))

    def __add__(self, other: Fq12) -> Fq12:
        return Fq12(self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other: Fq12) -> Fq12:
        return Fq12(self.c0 - other.c0, self.c1 - other.c1)

    def __neg__(self) -> Fq12:
        return Fq12(-self.c0, -self.c1)

    def __mul__(self, other: Fq12) -> Fq12:
        a0, a1 = self.c0, self.c1
        b0, b1 = other.c0, other.c1
        t0 = a0 * b0
        t1 = a1 * b1
        return Fq12(t0 + t1.mul_by_v(), (a0 + a1) * (b0 + b1) - t0 - t1)

    def square(self) -> Fq12:
        a0, a1 = self.c0, self.c1
        t = a0 * a1
        c0 = (a0 + a1) * (a0 + a1.mul_by_v()) - t - t.mul_by_v()
        return Fq12(c0, t + t)

    def conjugate(self) -> Fq12:
        """The p^6-power Frobenius: c0 + c1*w -> c0 - c1*w."""
        return Fq12(self.c0, -self.c1)

    def inverse(self) -> Fq12:
        a0, a1 = self.c0, self.c1
        norm = a0 * a0 - (a1 * a1).mul_by_v()
        if norm.is_zero():
            raise ZeroDivisionError("inverse of zero in Fq12")
        inv = norm.inverse()
        return Fq12(a0 * inv, -(a1 * inv))

    def w_coefficients(self) -> list[Fq2]:
        """Coefficients over the basis 1, w, ..., w^5."""
        return [self.c0.c0, self.c1.c0, self.c0.c1, self.c1.c1, self.c0.c2, self.c1.c2]

    @classmethod
    def from_w_coefficients(cls, z: list[Fq2]) -> Fq12:
        return cls(Fq6(z[0], z[2], z[4]), Fq6(z[1], z[3], z[5]))

    def frobenius(self, power: int = 1) -> Fq12:
        """Raise to p**power using precomputed twisting constants."""
        out = self
        for _ in range(power % 12):
            z = out.w_coefficients()
            out = Fq12.from_w_coefficients(
                [z[i].conjugate() * _FROBENIUS_GAMMA[i] for i in range(6)]
            )
        return out


def _fq2_pow(a: Fq2, e: int) -> Fq2:
    result = Fq2.one()
    for bit in bin(e)[2:]:
        result = result.square()
        if bit == "1":
            result = result * a
    return result


XI = Fq2(9, 1)
# w^(i*(p-1)) = xi^(i*(p-1)/6)
_FROBENIUS_GAMMA = [_fq2_pow(XI, i * (P - 1) // 6) for i in range(6)]


def tower_arith(a: TowerElement, b, op: str) -> TowerElement:
    """Dispatch ``op`` (add, mul, square, inv, exp) on tower elements.

    For ``exp`` the second argument is the integer exponent; ``square`` and
    ``inv`` ignore it.
    """
    if op in ("add", "mul") and a.level != b.level:
        raise ValueError(f"level mismatch: {a.level} vs {b.level}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "square":
        return a.square()
    if op == "inv":
        return a.inverse()
    if op == "exp":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")
