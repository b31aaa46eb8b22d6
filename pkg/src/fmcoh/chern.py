"""Chern characters on an elliptic curve and their SL(2, Z) transforms.

A Chern character is an integer pair ``(rank, degree)``.  Every
Fourier-Mukai transform acts on these pairs through a unimodular matrix,
and for semistable bundles the sign of the transformed rank decides in
which cohomological degree the transform lives.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple


class DomainError(ValueError):
    """An input violates the precondition of a numerical operation."""


class ChernCharacter(NamedTuple):
    """Integer pair ``(rank, degree)``.

    The pair is a K-theory class and may be negative (e.g. ``M @ ch`` before
    the sign of the WIT index is applied).  ``is_sheaf_type`` tells whether it
    is the character of an actual sheaf.
    """

    rank: int
    degree: int

    @classmethod
    def sheaf(cls, rank: int, degree: int) -> "ChernCharacter":
        ch = cls(rank, degree)
        if not ch.is_sheaf_type:
            raise DomainError(f"{ch.show()} is not the Chern character of a sheaf")
        return ch

    @property
    def is_sheaf_type(self) -> bool:
        if self.rank > 0:
            return True
        return self.rank == 0 and self.degree >= 0

    @property
    def is_torsion(self) -> bool:
        return self.rank == 0 and self.degree > 0

    def __neg__(self) -> "ChernCharacter":
        return ChernCharacter(-self.rank, -self.degree)

    def scale(self, n: int) -> "ChernCharacter":
        return ChernCharacter(n * self.rank, n * self.degree)

    def show(self) -> str:
        return f"({self.rank},{self.degree})"


def gcd_type(ch: ChernCharacter) -> int:
    """``gcd(rank, |degree|)`` with ``gcd(r, 0) = r``."""
    return math.gcd(ch.rank, ch.degree)


def slope(ch: ChernCharacter) -> Fraction:
    if ch.rank == 0:
        raise DomainError("slope undefined for torsion type")
    return Fraction(ch.degree, ch.rank)


@dataclass(frozen=True)
class FMMatrix:
    """Chern-level image ``((alpha, beta), (gamma, delta))`` of a transform.

    ``geometric`` marks matrices realised by a sheaf kernel on ``X x X``,
    which needs ``beta > 0``.  Group operations do not need the flag.
    """

    alpha: int
    beta: int
    gamma: int
    delta: int
    geometric: bool = False

    def __post_init__(self) -> None:
        if self.alpha * self.delta - self.beta * self.gamma != 1:
            raise DomainError(f"{self.rows()} does not have determinant 1")
        if self.geometric and self.beta <= 0:
            raise DomainError("a geometric transform needs beta > 0")

    @classmethod
    def of(cls, alpha: int, beta: int, gamma: int, delta: int) -> "FMMatrix":
        """Build a matrix, flagging it geometric whenever ``beta > 0``."""
        return cls(alpha, beta, gamma, delta, geometric=beta > 0)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.alpha, self.beta), (self.gamma, self.delta))

    def entries(self) -> tuple[int, int, int, int]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def inverse(self) -> "FMMatrix":
        return FMMatrix(self.delta, -self.beta, -self.gamma, self.alpha)

    def __neg__(self) -> "FMMatrix":
        # -M has determinant 1 as well; geometric needs beta > 0 on the result
        return FMMatrix(-self.alpha, -self.beta, -self.gamma, -self.delta)

    def __matmul__(self, other: "FMMatrix") -> "FMMatrix":
        return compose(self, other)


IDENTITY = FMMatrix(1, 0, 0, 1)
MINUS_IDENTITY = FMMatrix(-1, 0, 0, -1)


def apply_matrix(m: FMMatrix, ch: ChernCharacter) -> ChernCharacter:
    r, d = ch
    return ChernCharacter(m.alpha * r + m.beta * d, m.gamma * r + m.delta * d)


def compose(m1: FMMatrix, m2: FMMatrix) -> FMMatrix:
    """Matrix product ``m1 @ m2`` (apply ``m2`` first).

    The product is geometric when both factors are and its ``beta`` is
    positive.
    """
    a = m1.alpha * m2.alpha + m1.beta * m2.gamma
    b = m1.alpha * m2.beta + m1.beta * m2.delta
    c = m1.gamma * m2.alpha + m1.delta * m2.gamma
    d = m1.gamma * m2.beta + m1.delta * m2.delta
    return FMMatrix(a, b, c, d, geometric=m1.geometric and m2.geometric and b > 0)


def _positive(a: int) -> None:
    if isinstance(a, bool) or not isinstance(a, int) or a <= 0:
        raise DomainError("a must be a positive integer")


def phi_a(a: int) -> FMMatrix:
    """The transform fixing the structure sheaf, ``((1, a), (0, 1))``."""
    _positive(a)
    return FMMatrix(1, a, 0, 1, geometric=True)


def psi_a(a: int) -> FMMatrix:
    """Chern action ``((-1, a), (0, -1))`` of the adjoint of ``phi_a(a)``.

    Not flagged geometric: the matrix already carries the adjoint sign
    convention, so it is never fed to ``wit_index`` directly.
    """
    _positive(a)
    return FMMatrix(-1, a, 0, -1)


class WitIndex(enum.Enum):
    IT0 = "IT0"
    WIT1_TORSION = "WIT1_TORSION"
    IT1 = "IT1"

    @property
    def degree(self) -> int:
        return 0 if self is WitIndex.IT0 else 1


class WitResult(NamedTuple):
    index: WitIndex
    transformed: ChernCharacter


def _check_bundle_input(m: FMMatrix, ch: ChernCharacter) -> None:
    if ch.rank <= 0:
        raise DomainError("WIT classification defined for bundle types only")
    if not m.geometric:
        raise DomainError("WIT classification needs a geometric matrix (beta > 0)")


def _classify(sign_test: int) -> WitIndex:
    if sign_test > 0:
        return WitIndex.IT0
    if sign_test == 0:
        return WitIndex.WIT1_TORSION
    return WitIndex.IT1


def wit_index(m: FMMatrix, ch: ChernCharacter) -> WitResult:
    """WIT index and transformed character of a semistable bundle type.

    The index is read off the degree ``alpha*r + beta*d`` of ``E`` twisted by
    a fibre of the kernel; the transform lives in degree ``i`` and has
    character ``(-1)**i * M @ ch``.
    """
    _check_bundle_input(m, ch)
    r, d = ch
    rank = m.alpha * r + m.beta * d
    degree = m.gamma * r + m.delta * d
    index = _classify(rank)
    if index is WitIndex.IT0:
        return WitResult(index, ChernCharacter(rank, degree))
    return WitResult(index, ChernCharacter(-rank, -degree))


def wit_index_adjoint(m: FMMatrix, ch: ChernCharacter) -> WitResult:
    """Same classification for the adjoint ``Psi`` of the transform ``m``.

    Sign test ``-delta*r + beta*d``; the transform in degree ``i`` has
    character ``(-1)**(i+1) * M^{-1} @ ch``.
    """
    _check_bundle_input(m, ch)
    r, d = ch
    # M^{-1} @ ch = (delta*r - beta*d, -gamma*r + alpha*d)
    inv_rank = m.delta * r - m.beta * d
    inv_degree = m.alpha * d - m.gamma * r
    index = _classify(-inv_rank)
    if index is WitIndex.IT0:
        return WitResult(index, ChernCharacter(-inv_rank, -inv_degree))
    return WitResult(index, ChernCharacter(inv_rank, inv_degree))


def slope_transform(m: FMMatrix, mu: Fraction) -> Fraction:
    """Image slope ``(gamma + delta*mu) / (alpha + beta*mu)``."""
    mu = Fraction(mu)
    p, q = mu.numerator, mu.denominator
    den = m.alpha * q + m.beta * p
    if den == 0:
        raise DomainError("slope undefined: image is torsion")
    return Fraction(m.gamma * q + m.delta * p, den)
