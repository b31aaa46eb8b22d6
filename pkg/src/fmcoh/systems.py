"""Numerical types of coherent systems ``(E, V)`` and their alpha-stability.

A coherent system of type ``(r, d, k)`` is a bundle of rank ``r`` and
degree ``d`` with a ``k``-dimensional space of sections.  Everything here
works with types only: walls are *candidate* critical values, i.e. values
of alpha where some numerically possible subsystem type has the same
alpha-slope as the system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from .bundles import cohomology_dims, jh_type
from .chern import ChernCharacter, DomainError

Rational = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class SystemType:
    r: int
    d: int
    k: int

    def __post_init__(self) -> None:
        if self.r < 1:
            raise DomainError("coherent systems need rank r >= 1")
        if self.k < 0:
            raise DomainError("coherent systems need k >= 0")

    def astuple(self) -> tuple[int, int, int]:
        return (self.r, self.d, self.k)

    def show(self) -> str:
        return f"({self.r},{self.d},{self.k})"


@dataclass(frozen=True)
class SubsystemCandidate:
    r: int
    d: int
    k: int
    proper: bool = True

    @classmethod
    def of(cls, system: SystemType, r: int, d: int, k: int) -> "SubsystemCandidate":
        if not 0 <= r <= system.r or not 0 <= k <= system.k:
            raise DomainError("subsystem ranks must satisfy 0 <= r' <= r, 0 <= k' <= k")
        proper = (r, d, k) != system.astuple() and (r, d, k) != (0, 0, 0)
        return cls(r, d, k, proper)

    def astuple(self) -> tuple[int, int, int]:
        return (self.r, self.d, self.k)

    def show(self) -> str:
        return f"({self.r},{self.d},{self.k})"


def witness_key(c: SubsystemCandidate) -> tuple[int, int, int]:
    """Deterministic witness order: by rank, then sections, then degree."""
    return (c.r, c.k, c.d)


@dataclass(frozen=True)
class WallSet:
    """Sorted candidate critical values in ``(0, upper)`` with witnesses.

    Candidates over-approximate the true critical values: a type-level
    witness need not be realised by an actual subsystem.
    """

    system: SystemType
    upper: Fraction
    walls: tuple[Fraction, ...]
    witnesses: dict = field(default_factory=dict, compare=True)
    candidate_only: bool = True

    @property
    def largest(self) -> Optional[Fraction]:
        return self.walls[-1] if self.walls else None

    def chambers(self) -> list[tuple[Fraction, Fraction]]:
        points = [Fraction(0), *self.walls, self.upper]
        return list(zip(points, points[1:]))


def alpha_slope(s: SystemType, alpha: Rational) -> Fraction:
    return Fraction(s.d, s.r) + Fraction(alpha) * Fraction(s.k, s.r)


def stability_margin(s: SystemType, c: SubsystemCandidate, alpha: Rational) -> Fraction:
    """``mu_alpha(s) - mu_alpha(c)``; positive means ``c`` does not destabilise."""
    if not c.proper:
        raise DomainError("stability margin needs a proper subsystem")
    if c.r < 1:
        raise DomainError("rank-zero subsystem has no slope")
    sub = Fraction(c.d, c.r) + Fraction(alpha) * Fraction(c.k, c.r)
    return alpha_slope(s, alpha) - sub


def auto_upper(s: SystemType) -> Fraction:
    """Right end ``d / (r - k)`` of the alpha-range when ``k < r``."""
    if s.k >= s.r:
        raise DomainError("finite upper bound required when k >= r")
    return Fraction(s.d, s.r - s.k)


def _check_wall_input(s: SystemType) -> None:
    if s.d == 0:
        raise DomainError("walls need d != 0")
    if s.k == 0:
        raise DomainError("walls need k >= 1")


def _resolve_upper(s: SystemType, upper: Union[Rational, str, None]) -> Fraction:
    if upper is None or upper == "auto":
        return auto_upper(s)
    return Fraction(upper)


def _ceil_strict_above(x: Fraction) -> int:
    """Smallest integer strictly greater than ``x``."""
    return math.floor(x) + 1


def _floor_strict_below(x: Fraction) -> int:
    """Largest integer strictly smaller than ``x``."""
    return math.ceil(x) - 1


def wall_candidates(s: SystemType, upper: Union[Rational, str, None] = "auto") -> WallSet:
    """Candidate walls from the closed form ``(d r' - d' r) / (k' r - k r')``.

    Subsystem ranks run over ``1 <= r' < r``: a subbundle of full rank is
    ``E`` itself, whose alpha-slope differs from ``mu_alpha(E, V)`` only at
    ``alpha = 0``.
    """
    _check_wall_input(s)
    top = _resolve_upper(s, upper)
    r, d, k = s.astuple()
    found: dict[Fraction, list[SubsystemCandidate]] = {}
    if top > 0:
        for rp in range(1, r):
            for kp in range(0, k + 1):
                den = kp * r - k * rp
                if den == 0:
                    continue
                # 0 < (d rp - d' r) / den < top, solved for integer d'
                if den > 0:
                    lo = _ceil_strict_above((d * rp - top * den) / Fraction(r))
                    hi = _floor_strict_below(Fraction(d * rp, r))
                else:
                    lo = _ceil_strict_above(Fraction(d * rp, r))
                    hi = _floor_strict_below((d * rp - top * den) / Fraction(r))
                for dp in range(lo, hi + 1):
                    wall = Fraction(d * rp - dp * r, den)
                    found.setdefault(wall, []).append(SubsystemCandidate(rp, dp, kp))
    walls = tuple(sorted(found))
    witnesses = {w: tuple(sorted(found[w], key=witness_key)) for w in walls}
    return WallSet(s, top, walls, witnesses)


def first_wall(s: SystemType) -> Optional[Fraction]:
    """Smallest positive candidate wall, with no upper bound.

    For fixed ``r'`` the numerator ``|d r' - d' r|`` has smallest positive
    value ``n`` depending only on the sign of ``k' r - k r'``, so the minimum
    over ``k'`` sits at ``k' = k`` (positive side) or ``k' = 0`` (negative).
    """
    _check_wall_input(s)
    r, d, k = s.astuple()
    best: Optional[tuple[int, int]] = None
    for rp in range(1, r):
        # den = k (r - rp) > 0: numerator d rp - d' r
        cands = (((d * rp - 1) % r + 1, k * (r - rp)), ((-d * rp - 1) % r + 1, k * rp))
        for num, den in cands:
            if best is None or num * best[1] < best[0] * den:
                best = (num, den)
    return None if best is None else Fraction(*best)


def g0_sample_alpha(s: SystemType) -> Fraction:
    """A value of alpha inside the first chamber ``(0, alpha_1)``."""
    if s.k == 0:
        return Fraction(1)
    first = first_wall(s)
    if s.k < s.r:
        upper = auto_upper(s)
        if upper <= 0:
            return Fraction(1)
        first = upper if first is None else min(first, upper)
    return Fraction(1) if first is None else first / 2


def gl_sample_alpha(s: SystemType) -> Fraction:
    """A value of alpha inside the last chamber ``(alpha_L, d/(r-k))``."""
    top = auto_upper(s)
    walls = wall_candidates(s, top)
    last = walls.largest if walls.walls else Fraction(0)
    return (last + top) / 2


def brill_noether(d: int, k: int) -> int:
    return k * (d - k) + 1


class Nonemptiness(NamedTuple):
    """Outcome of the Lange-Newstead test; ``clause`` names the rule used."""

    nonempty: bool
    clause: str

    def __bool__(self) -> bool:
        return self.nonempty


def ln_nonempty(s: SystemType, alpha: Rational) -> Nonemptiness:
    """Is there an alpha-stable coherent system of type ``s``?"""
    r, d, k = s.astuple()
    if k == 0:
        return Nonemptiness(math.gcd(r, d) == 1, "ii")
    if Fraction(alpha) <= 0:
        return Nonemptiness(False, "alpha_nonpositive")
    if r == 1:
        return Nonemptiness((d == 0 and k == 1) or k <= d, "iii")
    ok = (r - k) * Fraction(alpha) < d and (k < d or (k == d and math.gcd(r, d) == 1))
    return Nonemptiness(ok, "iv")


def gl_nonempty(s: SystemType) -> bool:
    """Non-emptiness of the last-chamber moduli space, for ``0 < k < r``."""
    if not 0 < s.k < s.r:
        raise DomainError("the last chamber is defined for 0 < k < r")
    if s.d <= 0:
        return False
    return s.k < s.d or (s.k == s.d and math.gcd(s.r, s.d) == 1)


def moduli_dimension(s: SystemType, alpha: Rational) -> int:
    if not ln_nonempty(s, alpha):
        raise DomainError("moduli space empty; dimension undefined")
    return brill_noether(s.d, s.k)


class G0Row(NamedTuple):
    t: int
    sub_rank: int
    sub_degree: int
    k_max: int


def g0_constraints(s: SystemType) -> tuple[G0Row, ...]:
    """Largest admissible ``k'`` on each slope-equal subbundle type.

    The slope-equal subtypes of a semistable ``E`` are ``t * (r/h, d/h)``
    for ``1 <= t < h``.  In the first chamber a subsystem on such a subtype
    needs ``k'/r' < k/r``; ``k'`` is also capped by ``h^0`` of the subtype
    (generic, no trivial factors).
    """
    if s.d == 0:
        raise DomainError("G0 constraints need d != 0")
    if s.k < 1:
        raise DomainError("G0 constraints need k >= 1")
    r, d, k = s.astuple()
    h = math.gcd(r, d)
    rows = []
    for t in range(1, h):
        sub = ChernCharacter(t * r // h, t * d // h)
        # k'/(t r/h) < k/r  <=>  k' < k t / h
        k_max = -((-k * t) // h) - 1
        cap = cohomology_dims(jh_type(sub)).h0
        rows.append(G0Row(t, sub.rank, sub.degree, min(k_max, cap)))
    return tuple(rows)


def transform_system(a: int, s: SystemType, direction: str) -> SystemType:
    """Type of the transformed system: ``(r +- a d, d, k)``.

    ``phi`` needs the bundle to be IT_0 (``r + a d > 0``); ``psi`` needs it
    to be IT_1 for the adjoint (``-r + a d < 0``).
    """
    if isinstance(a, bool) or not isinstance(a, int) or a <= 0:
        raise DomainError("a must be a positive integer")
    if direction == "phi":
        if s.r + a * s.d < 1:
            raise DomainError("not Φ_a-IT_0 at type level")
        return SystemType(s.r + a * s.d, s.d, s.k)
    if direction == "psi":
        if -s.r + a * s.d >= 0:
            raise DomainError("not Ψ_a-IT_1 at type level")
        return SystemType(s.r - a * s.d, s.d, s.k)
    raise DomainError(f"unknown direction {direction!r}")
