"""BGN extension types ``0 -> O^k -> E -> F -> 0`` and the large-alpha test.

Only the numerical shadow is modelled.  Linear independence of the ``k``
extension classes reduces to ``k <= dim H^1(F^dual) = d``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Union

from .chern import ChernCharacter, DomainError, slope

SEMISTABLE = "semistable"
STABLE = "stable"


@dataclass(frozen=True)
class BGNType:
    r: int
    d: int
    k: int
    quotient_status: str = SEMISTABLE

    def __post_init__(self) -> None:
        if not self.r > self.k >= 1:
            raise DomainError("BGN types need r > k >= 1")
        if self.d <= 0:
            raise DomainError("BGN types need d > 0")
        if self.quotient_status not in (SEMISTABLE, STABLE):
            raise DomainError(f"unknown quotient status {self.quotient_status!r}")
        if self.quotient_status == STABLE and math.gcd(self.r - self.k, self.d) != 1:
            raise DomainError("a stable quotient needs gcd(r - k, d) = 1")

    @property
    def quotient(self) -> ChernCharacter:
        return ChernCharacter(self.r - self.k, self.d)

    def astuple(self) -> tuple[int, int, int]:
        return (self.r, self.d, self.k)


def ext_dimension(q: ChernCharacter) -> int:
    """``dim H^1(F^dual)`` for a semistable quotient type ``q``."""
    if q.rank < 1:
        raise DomainError("quotient must be a bundle type")
    if q.degree <= 0:
        raise DomainError("condition H^0(F^∨)=0 not guaranteed at type level")
    return q.degree


class Feasibility(NamedTuple):
    feasible: bool
    reason: str

    def __bool__(self) -> bool:
        return self.feasible


def bgn_feasible(r: int, d: int, k: int) -> Feasibility:
    if not r > k:
        return Feasibility(False, "rank: need r > k")
    if k < 1:
        return Feasibility(False, "sections: need k >= 1")
    if d <= 0:
        return Feasibility(False, "degree: need d > 0")
    if k > ext_dimension(ChernCharacter(r - k, d)):
        return Feasibility(False, f"extension space has dimension {d} < k = {k}")
    return Feasibility(True, "ok")


def transform_bgn(a: int, t: BGNType, direction: str) -> BGNType:
    if isinstance(a, bool) or not isinstance(a, int) or a <= 0:
        raise DomainError("a must be a positive integer")
    if direction == "phi":
        r = t.r + a * t.d
    elif direction == "psi":
        r = t.r - a * t.d
        if r <= t.k:
            raise DomainError("not a BGN type after transform")
    else:
        raise DomainError(f"unknown direction {direction!r}")
    return BGNType(r, t.d, t.k, t.quotient_status)


ZERO = None


def delta_alpha(
    t: BGNType,
    r_sub: int,
    k_sub: int,
    f_sub: Optional[ChernCharacter],
    epsilon: Union[int, Fraction],
) -> Fraction:
    """Difference ``mu_alpha(E) - mu_alpha(E')`` at ``alpha = mu(F) - epsilon``.

    ``(r_sub, k_sub)`` is the subsystem ``O^{k'} -> E'`` and ``f_sub`` the
    character of its image ``F'`` in ``F`` (``None`` for ``F' = 0``).
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    if r_sub < 1:
        raise DomainError("subsystem rank must be >= 1")
    if not 0 <= k_sub <= t.k:
        raise DomainError("subsystem needs 0 <= k' <= k")
    if f_sub is None:
        if r_sub != k_sub:
            raise DomainError("F' = 0 forces E' = O^k', i.e. r' = k'")
        return epsilon * Fraction(t.r - t.k, t.r)
    f_sub = ChernCharacter(*f_sub)
    if f_sub.rank == 0:
        if f_sub.degree != 0:
            raise DomainError("rk F' = 0 forces F' = 0; torsion F' rejected")
        if r_sub != k_sub:
            raise DomainError("F' = 0 forces E' = O^k', i.e. r' = k'")
        return epsilon * Fraction(t.r - t.k, t.r)
    if f_sub.rank != r_sub - k_sub:
        raise DomainError("rank of F' must be r' - k'")
    gap = slope(t.quotient) - slope(f_sub)
    return Fraction(r_sub - k_sub, r_sub) * gap + epsilon * (
        Fraction(k_sub, r_sub) - Fraction(t.k, t.r)
    )


def safe_epsilon(
    t: BGNType, subs: Iterable[tuple[int, int, Optional[ChernCharacter]]]
) -> Fraction:
    """An epsilon below which no ``delta_alpha`` in ``subs`` changes sign.

    Each entry with ``mu(F') != mu(F)`` contributes the epsilon where the
    alpha-term would catch up with the slope term; half the minimum is
    returned, also kept below ``mu(F)`` so that ``alpha > 0``.
    """
    mu_f = slope(t.quotient)
    best = mu_f
    for r_sub, k_sub, f_sub in subs:
        if f_sub is None or ChernCharacter(*f_sub).rank == 0:
            continue
        gap = mu_f - slope(ChernCharacter(*f_sub))
        tilt = Fraction(k_sub, r_sub) - Fraction(t.k, t.r)
        if gap == 0 or tilt == 0:
            continue
        best = min(best, abs(Fraction(r_sub - k_sub, r_sub) * gap / tilt))
    return best / 2


class BGNTest(enum.Enum):
    COMPATIBLE = "compatible"
    VIOLATING = "violating"


def esta_bgn_test(t: BGNType, r_sub: int, d_sub: int, k_sub: int) -> BGNTest:
    """Large-alpha test on a subextension with ``mu(F') = mu(F)``.

    The subextension is compatible with alpha-stability iff
    ``k'/r' > k/r`` strictly.
    """
    if not r_sub > k_sub >= 0:
        raise DomainError("not a wall subextension; use delta_alpha")
    if Fraction(d_sub, r_sub - k_sub) != slope(t.quotient):
        raise DomainError("not a wall subextension; use delta_alpha")
    if Fraction(k_sub, r_sub) > Fraction(t.k, t.r):
        return BGNTest.COMPATIBLE
    return BGNTest.VIOLATING
