"""Prime-field elements for the three fields used by the two proof systems."""

from __future__ import annotations

from dataclasses import dataclass


class FieldMismatchError(ValueError):
    """Arithmetic attempted between elements of different fields."""


@dataclass(frozen=True)
class FieldId:
    modulus: int
    label: str

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value, self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    @property
    def byte_length(self) -> int:
        return 32


STARK_Q = FieldId(3221225473, "stark-q")
SNARK_R = FieldId(
    21888242871839275222246405745257275088548364400416034343698204186575808495617,
    "snark-r",
)
BN_BASE_P = FieldId(
    21888242871839275222246405745257275088696311157297823662689037894645226208583,
    "bn-base-p",
)


class FieldElement:
    """An integer modulo ``field.modulus``.

    Plain ``int`` operands are coerced into the same field, so ``a + 1`` and
    ``3 * a`` work. Mixing two different fields raises ``FieldMismatchError``.
    """

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: FieldId) -> None:
        self.value = value % field.modulus
        self.field = field

    def _coerce(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"cannot combine {self.field.label} with {other.field.label}"
                )
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value + v, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value - v, self.field)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(v - self.value, self.field)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value * v, self.field)

    __rmul__ = __mul__

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.value, self.field)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError(f"zero has no inverse in {self.field.label}")
        return FieldElement(pow(self.value, -1, self.field.modulus), self.field)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * FieldElement(v, self.field).inverse()

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(v, self.field) * self.inverse()

    def __pow__(self, exponent: int) -> FieldElement:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElement(pow(self.value, exponent, self.field.modulus), self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.modulus))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, {self.field.label})"

    def to_bytes(self, length: int = 32) -> bytes:
        return self.value.to_bytes(length, "big")

    @classmethod
    def from_bytes(cls, data: bytes, field: FieldId) -> FieldElement:
        value = int.from_bytes(data, "big")
        if value >= field.modulus:
            raise ValueError(f"encoded value is not reduced modulo {field.label}")
        return cls(value, field)


def fe_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` (add, sub, mul, neg) to two elements of one field."""
    if a.field != b.field:
        raise FieldMismatchError(f"cannot combine {a.field.label} with {b.field.label}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def fe_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def fe_exp(base: FieldElement, exponent: int) -> FieldElement:
    """Square-and-multiply exponentiation; ``exponent`` must be non-negative."""
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    result = 1
    b = base.value
    m = base.field.modulus
    while exponent:
        if exponent & 1:
            result = result * b % m
        b = b * b % m
        exponent >>= 1
    return FieldElement(result, base.field)
