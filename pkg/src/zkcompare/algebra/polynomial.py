"""Dense univariate polynomials over a prime field.

Coefficients are kept as plain reduced integers, lowest degree first, with
trailing zeros trimmed. Multiplication is schoolbook; there is no FFT path.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .field import FieldElement, FieldId, FieldMismatchError


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _raw(value: FieldElement | int, field: FieldId) -> int:
    if isinstance(value, FieldElement):
        if value.field != field:
            raise FieldMismatchError(f"expected {field.label}, got {value.field.label}")
        return value.value
    return value % field.modulus


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs: Iterable[FieldElement | int], field: FieldId) -> None:
        self.field = field
        self.coeffs = _trim([_raw(c, field) for c in coeffs])

    @classmethod
    def _from_reduced(cls, coeffs: list[int], field: FieldId) -> Polynomial:
        p = cls.__new__(cls)
        p.field = field
        p.coeffs = _trim(coeffs)
        return p

    @classmethod
    def zero(cls, field: FieldId) -> Polynomial:
        return cls._from_reduced([], field)

    @classmethod
    def constant(cls, c: FieldElement | int, field: FieldId) -> Polynomial:
        return cls([c], field)

    @classmethod
    def x(cls, field: FieldId) -> Polynomial:
        return cls._from_reduced([0, 1], field)

    @property
    def coefficients(self) -> list[FieldElement]:
        return [FieldElement(c, self.field) for c in self.coeffs]

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _check(self, other: Polynomial) -> None:
        if other.field != self.field:
            raise FieldMismatchError(
                f"cannot combine polynomials over {self.field.label} and {other.field.label}"
            )

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)):
            return Polynomial([other], self.field)
        return NotImplemented

    def eval_int(self, x: int) -> int:
        m = self.field.modulus
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % m
        return acc

    def eval(self, x: FieldElement | int) -> FieldElement:
        """Horner evaluation."""
        return FieldElement(self.eval_int(_raw(x, self.field)), self.field)

    __call__ = eval

    def eval_many(self, xs: Sequence[int]) -> list[int]:
        """Evaluate at each raw integer point in ``xs``."""
        m = self.field.modulus
        rev = self.coeffs[::-1]
        out = []
        for x in xs:
            acc = 0
            for c in rev:
                acc = (acc * x + c) % m
            out.append(acc)
        return out

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        m = self.field.modulus
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % m
        return Polynomial._from_reduced(out, self.field)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        m = self.field.modulus
        return Polynomial._from_reduced([(-c) % m for c in self.coeffs], self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial.zero(self.field)
        if len(b) == 1:
            return self.scale(b[0])
        if len(a) == 1:
            return other.scale(a[0])
        # lazy reduction: accumulate unreduced products, reduce once per slot
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        m = self.field.modulus
        return Polynomial._from_reduced([c % m for c in out], self.field)

    __rmul__ = __mul__

    def scale(self, k: FieldElement | int) -> Polynomial:
        k = _raw(k, self.field)
        m = self.field.modulus
        return Polynomial._from_reduced([c * k % m for c in self.coeffs], self.field)

    def square(self) -> Polynomial:
        return self * self

    def __pow__(self, exponent: int) -> Polynomial:
        result = Polynomial.constant(1, self.field)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def divmod(self, den: Polynomial) -> tuple[Polynomial, Polynomial]:
        """Long division: returns ``(q, r)`` with ``self == q*den + r``."""
        self._check(den)
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        m = self.field.modulus
        num = list(self.coeffs)
        d = den.coeffs
        dn = len(d) - 1
        if len(num) <= dn:
            return Polynomial.zero(self.field), self
        inv_lead = pow(d[-1], -1, m)
        quot = [0] * (len(num) - dn)
        for k in range(len(num) - 1, dn - 1, -1):
            c = num[k] % m
            if c == 0:
                continue
            c = c * inv_lead % m
            quot[k - dn] = c
            base = k - dn
            for j in range(dn):
                num[base + j] -= c * d[j]
            num[k] = 0
        rem = [c % m for c in num[:dn]]
        return (
            Polynomial._from_reduced(quot, self.field),
            Polynomial._from_reduced(rem, self.field),
        )

    def __divmod__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.divmod(other)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divide_by_linear(self, root: int) -> tuple[Polynomial, int]:
        """Synthetic division by ``(x - root)``; returns quotient and remainder."""
        m = self.field.modulus
        c = self.coeffs
        if not c:
            return Polynomial.zero(self.field), 0
        quot = [0] * (len(c) - 1)
        acc = 0
        for k in range(len(c) - 1, 0, -1):
            acc = (acc * root + c[k]) % m
            quot[k - 1] = acc
        rem = (acc * root + c[0]) % m
        return Polynomial._from_reduced(quot, self.field), rem

    def scale_argument(self, k: FieldElement | int) -> Polynomial:
        """Return ``p(k*x)`` by scaling coefficient ``c_i`` by ``k**i``."""
        k = _raw(k, self.field)
        m = self.field.modulus
        out = []
        power = 1
        for c in self.coeffs:
            out.append(c * power % m)
            power = power * k % m
        return Polynomial._from_reduced(out, self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElement)):
            return self == Polynomial([other], self.field)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs, self.field.modulus))

    def __repr__(self) -> str:
        if len(self.coeffs) > 8:
            return f"Polynomial(degree={self.degree()}, {self.field.label})"
        return f"Polynomial({list(self.coeffs)}, {self.field.label})"


def poly_eval(p: Polynomial, x: FieldElement | int) -> FieldElement:
    return p.eval(x)


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def poly_divrem(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    return num.divmod(den)


def vanishing_poly(roots: Sequence[FieldElement | int], field: FieldId) -> Polynomial:
    """Monic polynomial prod(x - r) over ``roots``."""
    m = field.modulus
    coeffs = [1]
    for r in roots:
        r = _raw(r, field)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= c * r
        coeffs = [c % m for c in nxt]
    return Polynomial._from_reduced(coeffs, field)


def lagrange_interpolate(
    points: Sequence[tuple[FieldElement | int, FieldElement | int]], field: FieldId
) -> Polynomial:
    """The unique polynomial of degree < len(points) through ``points``.

    Builds the full vanishing polynomial once and peels each basis polynomial
    off it by synthetic division, so the cost is quadratic in the point count.
    """
    if not points:
        return Polynomial.zero(field)
    m = field.modulus
    xs = [_raw(x, field) for x, _ in points]
    ys = [_raw(y, field) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation points must have distinct x-coordinates")
    full = vanishing_poly(xs, field)
    acc = [0] * len(xs)
    for xi, yi in zip(xs, ys):
        if yi == 0:
            continue
        basis, _ = full.divide_by_linear(xi)
        denom = basis.eval_int(xi)
        w = yi * pow(denom, -1, m) % m
        for k, c in enumerate(basis.coeffs):
            acc[k] += w * c
    return Polynomial._from_reduced([c % m for c in acc], field)
