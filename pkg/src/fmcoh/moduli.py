"""Residue classes mod ``d``, isomorphism certificates and birational classes.

The moduli spaces of types ``(r, d, k)`` and ``(r + a d, d, k)`` are
identified by ``phi_a`` in the first chamber (and in the last chamber when
``k < r``).  Equal residues are sufficient for a certificate, not
necessary, so a residue mismatch yields ``None`` rather than a claim of
non-isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .chern import DomainError
from .systems import SystemType, g0_sample_alpha, ln_nonempty, transform_system

G0 = "G0"
GL = "GL"
BIRATIONAL = "BIRATIONAL"


@dataclass(frozen=True)
class ModuliClass:
    residue: int
    d: int
    k: int
    regime: str


@dataclass(frozen=True)
class IsoCertificate:
    source: SystemType
    target: SystemType
    chain: tuple[tuple[str, int], ...]
    regime: str

    def replay(self) -> SystemType:
        """Run the chain through ``transform_system``, checking every step."""
        current = self.source
        for direction, a in self.chain:
            current = transform_system(a, current, direction)
            _check_regime(current, self.regime)
        if current != self.target:
            raise DomainError(f"certificate ends at {current.show()}, not {self.target.show()}")
        return current

    def inverse(self) -> "IsoCertificate":
        flip = {"phi": "psi", "psi": "phi"}
        chain = tuple((flip[direction], a) for direction, a in reversed(self.chain))
        return IsoCertificate(self.target, self.source, chain, self.regime)


def residue_class(r: int, d: int) -> int:
    if d < 1:
        raise DomainError("residue class needs d >= 1")
    return r % d


def _check_regime(s: SystemType, regime: str) -> None:
    if regime == G0:
        return
    if regime == GL:
        if not 0 < s.k < s.r:
            raise DomainError(f"GL regime needs 0 < k < r, got {s.show()}")
        return
    raise DomainError(f"unknown regime {regime!r}")


def iso_certificate(s1: SystemType, s2: SystemType, regime: str = G0) -> Optional[IsoCertificate]:
    if s1.d != s2.d or s1.d <= 0:
        raise DomainError("certificates need equal degree d > 0")
    if s1.k != s2.k or s1.k < 1:
        raise DomainError("certificates need equal k >= 1")
    _check_regime(s1, regime)
    _check_regime(s2, regime)
    d = s1.d
    if residue_class(s1.r, d) != residue_class(s2.r, d):
        return None
    a = abs(s1.r - s2.r) // d
    if a == 0:
        chain: tuple[tuple[str, int], ...] = ()
    elif s1.r < s2.r:
        chain = (("phi", a),)
    else:
        chain = (("psi", a),)
    cert = IsoCertificate(s1, s2, chain, regime)
    cert.replay()
    return cert


def birational_class(s: SystemType) -> ModuliClass:
    if s.d <= 0:
        raise DomainError("birational classes need d > 0")
    if s.k < 1:
        raise DomainError("birational classes need k >= 1")
    return ModuliClass(residue_class(s.r, s.d), s.d, s.k, BIRATIONAL)


def census_residues(d: int, k: int, r_range: Iterable[int]) -> set[int]:
    """Residues of the ranks whose first-chamber moduli space is non-empty."""
    if d < 1:
        raise DomainError("census needs d >= 1")
    seen = set()
    for r in r_range:
        s = SystemType(r, d, k)
        if ln_nonempty(s, g0_sample_alpha(s)):
            seen.add(residue_class(r, d))
    return seen


def class_census(d: int, k: int, r_range: Iterable[int]) -> int:
    """Upper bound on the number of birational types among ``r_range``."""
    return len(census_residues(d, k, r_range))
