# ZStab - Exact asymptotic stability of numerical sheaf classes
# Copyright (C) 2025 Oleg Tokmakov
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""Exact scalar and polynomial arithmetic over the Gaussian rationals.

Every stability verdict in this package reduces to the sign of an exact
quantity, so no floating point value ever enters these types. Rationals are
``fractions.Fraction`` (always in lowest terms with a positive denominator)
and polynomials are trimmed coefficient tuples indexed by the power of the
indeterminate. Whether the indeterminate is read as ``ε`` (orders at 0⁺) or
as ``k`` (orders at infinity) is decided by the caller.
"""

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import total_ordering
from typing import Optional, Sequence, Tuple, Union

from zstab.errors import PreconditionError

RationalLike = Union[int, Fraction, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: an inexact input would silently corrupt a sign.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise PreconditionError(f"inexact value {value!r} is not accepted")
    return Fraction(value)


class Ordering(IntEnum):
    """Result of a three-way comparison."""

    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def from_sign(cls, sign: int) -> "Ordering":
        if sign < 0:
            return cls.LESS
        if sign > 0:
            return cls.GREATER
        return cls.EQUAL


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_rational(self.re))
        object.__setattr__(self, "im", as_rational(self.im))

    @classmethod
    def of(cls, value) -> "GaussianRational":
        """Build from a GaussianRational, a rational, or a ``(re, im)`` pair."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (tuple, list)):
            if len(value) != 2:
                raise PreconditionError(f"expected a (re, im) pair, got {value!r}")
            return cls(value[0], value[1])
        return cls(value, 0)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus."""
        return self.re * self.re + self.im * self.im

    def im_conj(self, other: "GaussianRational") -> Fraction:
        """Return ``Im(conj(self) * other)``."""
        return self.re * other.im - self.im * other.re

    def re_conj(self, other: "GaussianRational") -> Fraction:
        """Return ``Re(conj(self) * other)``."""
        return self.re * other.re + self.im * other.im

    def __add__(self, other):
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        norm = other.abs2()
        if norm == 0:
            raise ZeroDivisionError("division by the zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce_scalar(value) -> Optional[GaussianRational]:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return GaussianRational(value, 0)
    return None


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)


def _trim(coeffs: Sequence, is_zero) -> tuple:
    end = len(coeffs)
    while end and is_zero(coeffs[end - 1]):
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class RPoly:
    """Polynomial with rational coefficients, index = power of the indeterminate."""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        values = [as_rational(c) for c in self.coeffs]
        object.__setattr__(self, "coeffs", _trim(values, lambda c: c == 0))

    @classmethod
    def zero(cls) -> "RPoly":
        return cls(())

    @classmethod
    def constant(cls, value: RationalLike) -> "RPoly":
        return cls((value,))

    @classmethod
    def monomial(cls, value: RationalLike, power: int) -> "RPoly":
        return cls((0,) * power + (value,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Highest power with a nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lowest_index(self) -> Optional[int]:
        for index, value in enumerate(self.coeffs):
            if value != 0:
                return index
        return None

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def lowest_coefficient(self) -> Fraction:
        index = self.lowest_index
        return Fraction(0) if index is None else self.coeffs[index]

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def evaluate(self, point: RationalLike) -> Fraction:
        x = as_rational(point)
        total = Fraction(0)
        for value in reversed(self.coeffs):
            total = total * x + value
        return total

    __call__ = evaluate

    def scale(self, factor: RationalLike) -> "RPoly":
        factor = as_rational(factor)
        return RPoly(tuple(c * factor for c in self.coeffs))

    def reciprocal(self, power: int) -> "RPoly":
        """Return ``x^power * P(1/x)``; ``power`` must bound the degree."""
        if power < self.degree:
            raise PreconditionError(
                f"reciprocal power {power} is below the degree {self.degree}"
            )
        padded = list(self.coeffs) + [Fraction(0)] * (power + 1 - len(self.coeffs))
        return RPoly(tuple(reversed(padded)))

    def __add__(self, other: "RPoly") -> "RPoly":
        size = max(len(self.coeffs), len(other.coeffs))
        return RPoly(tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)))

    def __sub__(self, other: "RPoly") -> "RPoly":
        size = max(len(self.coeffs), len(other.coeffs))
        return RPoly(tuple(self.coefficient(i) - other.coefficient(i) for i in range(size)))

    def __neg__(self) -> "RPoly":
        return RPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, RPoly):
            if self.is_zero or other.is_zero:
                return RPoly.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return RPoly(tuple(out))
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for power, value in enumerate(self.coeffs):
            if value == 0:
                continue
            if power == 0:
                terms.append(f"{value}")
            elif power == 1:
                terms.append(f"{value}*x")
            else:
                terms.append(f"{value}*x^{power}")
        return " + ".join(terms)


@dataclass(frozen=True)
class CPoly:
    """Polynomial with Gaussian-rational coefficients."""

    coeffs: Tuple[GaussianRational, ...] = ()

    def __post_init__(self):
        values = [GaussianRational.of(c) for c in self.coeffs]
        object.__setattr__(self, "coeffs", _trim(values, lambda c: c.is_zero))

    @classmethod
    def zero(cls) -> "CPoly":
        return cls(())

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lowest_index(self) -> Optional[int]:
        for index, value in enumerate(self.coeffs):
            if not value.is_zero:
                return index
        return None

    def coefficient(self, power: int) -> GaussianRational:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return ZERO

    def real_part(self) -> RPoly:
        return RPoly(tuple(c.re for c in self.coeffs))

    def imag_part(self) -> RPoly:
        return RPoly(tuple(c.im for c in self.coeffs))

    def conjugate(self) -> "CPoly":
        return CPoly(tuple(c.conjugate() for c in self.coeffs))

    def scale(self, factor) -> "CPoly":
        factor = GaussianRational.of(factor)
        return CPoly(tuple(c * factor for c in self.coeffs))

    def __add__(self, other: "CPoly") -> "CPoly":
        size = max(len(self.coeffs), len(other.coeffs))
        return CPoly(tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)))

    def __sub__(self, other: "CPoly") -> "CPoly":
        size = max(len(self.coeffs), len(other.coeffs))
        return CPoly(tuple(self.coefficient(i) - other.coefficient(i) for i in range(size)))

    def __neg__(self) -> "CPoly":
        return CPoly(tuple(-c for c in self.coeffs))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(
            f"({value})*x^{power}" for power, value in enumerate(self.coeffs) if not value.is_zero
        )


def im_conj_product(p: CPoly, q: CPoly) -> RPoly:
    """Return the real polynomial ``x -> Im(conj(p(x)) * q(x))``."""
    if p.is_zero or q.is_zero:
        return RPoly.zero()
    out = [Fraction(0)] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a.is_zero:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] += a.re * b.im - a.im * b.re
    return RPoly(tuple(out))


def sign_at_zero_plus(poly: RPoly) -> int:
    """Sign of ``poly(x)`` for every sufficiently small ``x > 0``."""
    return _sign(poly.lowest_coefficient)


def sign_at_infinity(poly: RPoly) -> int:
    """Sign of ``poly(x)`` for every sufficiently large ``x``."""
    return _sign(poly.leading_coefficient)


def compare_at_zero_plus(a: RPoly, b: RPoly) -> Ordering:
    """Compare ``a`` and ``b`` by their values just right of 0."""
    return Ordering.from_sign(-sign_at_zero_plus(b - a))


def compare_at_infinity(a: RPoly, b: RPoly) -> Ordering:
    """Compare ``a`` and ``b`` by their values for large arguments."""
    return Ordering.from_sign(-sign_at_infinity(b - a))


@total_ordering
@dataclass(frozen=True)
class ExtReal:
    """A rational or ``+inf``; ``value is None`` encodes ``+inf``."""

    value: Optional[Fraction] = None

    def __post_init__(self):
        if self.value is not None:
            object.__setattr__(self, "value", as_rational(self.value))

    @classmethod
    def of(cls, value: Optional[RationalLike]) -> "ExtReal":
        return cls(None if value is None else as_rational(value))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def _key(self):
        return (1, Fraction(0)) if self.value is None else (0, self.value)

    def __lt__(self, other: "ExtReal") -> bool:
        if not isinstance(other, ExtReal):
            return NotImplemented
        return self._key() < other._key()

    def __str__(self) -> str:
        return "+inf" if self.value is None else str(self.value)


POS_INF = ExtReal(None)


def lex_compare(u: Sequence[ExtReal], v: Sequence[ExtReal]) -> Ordering:
    """Lexicographic comparison, index 0 most significant."""
    if len(u) != len(v):
        raise PreconditionError(f"cannot compare vectors of lengths {len(u)} and {len(v)}")
    for a, b in zip(u, v):
        if a < b:
            return Ordering.LESS
        if b < a:
            return Ordering.GREATER
    return Ordering.EQUAL
