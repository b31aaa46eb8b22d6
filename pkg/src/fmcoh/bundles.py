"""Numerical model of semistable bundles on an elliptic curve.

A semistable bundle of type ``(r, d)`` has Jordan-Hoelder factors that are
all stable of type ``(r/h, d/h)`` with ``h = gcd(r, |d|)``.  Cohomology is
determined by the degree, except in degree zero where the number of
trivial factors has to be supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from .chern import (
    ChernCharacter,
    DomainError,
    FMMatrix,
    WitIndex,
    WitResult,
    gcd_type,
    phi_a,
    wit_index,
    wit_index_adjoint,
)


@dataclass(frozen=True)
class SemistableBundleType:
    """Chern character together with its Jordan-Hoelder data.

    ``trivial_count`` is the number of trivial factors (``h^0`` of the
    bundle) and only means something in degree zero.  ``None`` records that
    it is unknown, which blocks cohomology claims.
    """

    ch: ChernCharacter
    h: int
    jh_factor: ChernCharacter
    trivial_count: Optional[int] = 0

    def __post_init__(self) -> None:
        if self.ch.rank < 1:
            raise DomainError("semistable bundle types need rank >= 1")
        if self.jh_factor.scale(self.h) != self.ch:
            raise DomainError("h * jh_factor must equal ch")
        if gcd_type(self.jh_factor) != 1:
            raise DomainError("Jordan-Hoelder factor must be a stable type")
        if self.trivial_count is not None:
            if self.ch.degree != 0 and self.trivial_count != 0:
                raise DomainError("trivial factors only occur in degree 0")
            if not 0 <= self.trivial_count <= self.h:
                raise DomainError("trivial_count must lie in [0, h]")

    @property
    def is_stable(self) -> bool:
        return self.h == 1


class CohomologyDims(NamedTuple):
    h0: int
    h1: int

    def euler(self) -> int:
        return self.h0 - self.h1


def jh_type(ch: ChernCharacter, trivial_count: Optional[int] = 0) -> SemistableBundleType:
    ch = ChernCharacter(*ch)
    if ch.rank < 1:
        raise DomainError("Jordan-Hoelder type defined for bundle types only")
    h = gcd_type(ch)
    factor = ChernCharacter(ch.rank // h, ch.degree // h)
    if ch.degree != 0 and trivial_count is None:
        trivial_count = 0
    return SemistableBundleType(ch, h, factor, trivial_count)


def is_stable_type(ch: ChernCharacter) -> bool:
    if ch.rank < 1:
        raise DomainError("stability is defined for bundle types only")
    return gcd_type(ch) == 1


def cohomology_dims(b: SemistableBundleType) -> CohomologyDims:
    """``(h^0, h^1)`` of a semistable bundle of the given type.

    Positive degree forces ``h^1 = 0`` (Serre duality plus vanishing of
    sections in negative degree); negative degree forces ``h^0 = 0``.
    """
    d = b.ch.degree
    if d > 0:
        return CohomologyDims(d, 0)
    if d < 0:
        return CohomologyDims(0, -d)
    if b.trivial_count is None:
        raise DomainError("trivial-factor count unknown; cohomology undetermined")
    return CohomologyDims(b.trivial_count, b.trivial_count)


def _is_phi_shaped(m: FMMatrix) -> bool:
    return m.alpha == 1 and m.gamma == 0 and m.delta == 1


def transform_bundle(
    m: FMMatrix, b: SemistableBundleType
) -> tuple[WitResult, Union[SemistableBundleType, ChernCharacter]]:
    """Transform a semistable type; torsion output is returned as ``(0, h)``."""
    wit = wit_index(m, b.ch)
    if wit.index is WitIndex.WIT1_TORSION:
        return wit, wit.transformed
    out = wit.transformed
    if out.degree != 0:
        count: Optional[int] = 0
    elif b.ch.degree == 0 and _is_phi_shaped(m):
        # (r, 0) is fixed and h^0 is preserved
        count = b.trivial_count
    else:
        count = None
    return wit, jh_type(out, count)


def cohomology_transfer(
    a: int,
    ch: ChernCharacter,
    dims: CohomologyDims,
    direction: str = "phi",
    index: Optional[WitIndex] = None,
) -> CohomologyDims:
    """Cohomology of the transform of ``E`` under ``phi_a`` or its adjoint.

    Uses the two exact sequences relating ``H^*(E)`` with ``H^*`` of the
    transforms.  ``dims`` are the dimensions of ``E``; an optional ``index``
    is cross-checked against the computed WIT index.
    """
    ch = ChernCharacter(*ch)
    dims = CohomologyDims(*dims)
    if dims.h0 < 0 or dims.h1 < 0:
        raise DomainError("cohomology dimensions must be nonnegative")
    if dims.euler() != ch.degree:
        raise DomainError("cohomology transfer contradiction: h0 - h1 != degree")
    m = phi_a(a)
    if direction == "phi":
        wit = wit_index(m, ch)
    elif direction == "psi":
        wit = wit_index_adjoint(m, ch)
    else:
        raise DomainError(f"unknown direction {direction!r}")
    if index is not None and index is not wit.index:
        raise DomainError(
            f"cohomology transfer contradiction: index {index.value} given, "
            f"{wit.index.value} computed"
        )

    if direction == "phi":
        if wit.index is WitIndex.IT0:
            # H^0 preserved; H^0(Phi^1) = 0 so H^1 preserved too
            out = CohomologyDims(dims.h0, dims.h0 - wit.transformed.degree)
        else:
            # Phi^0 = 0 forces H^0(E) = 0, H^1(E) = H^0(Phi^1), H^1(Phi^1) = 0
            if dims.h0 != 0:
                raise DomainError("cohomology transfer contradiction: h0 must vanish")
            out = CohomologyDims(dims.h1, 0)
    else:
        if wit.index is WitIndex.IT0:
            # Psi^1 = 0 forces H^1(E) = 0, H^0(E) = H^1(Psi^0), H^0(Psi^0) = 0
            if dims.h1 != 0:
                raise DomainError("cohomology transfer contradiction: h1 must vanish")
            out = CohomologyDims(0, dims.h0)
        else:
            # Psi^0 = 0: H^0(E) = H^0(Psi^1), H^1(Psi^1) = H^1(E)
            out = CohomologyDims(dims.h0, dims.h1)
            if wit.index is WitIndex.WIT1_TORSION and out.h1 != 0:
                raise DomainError("cohomology transfer contradiction: torsion has no h1")

    if out.euler() != wit.transformed.degree:
        raise DomainError("cohomology transfer contradiction: Riemann-Roch fails")
    return out
