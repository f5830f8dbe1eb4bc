"""Exact probability that two VNs of one section form a size-2 stopping set.

The evaluator follows the socket-counting argument: VN ``v1`` fixes its d_l
neighbours, ``a`` of them in its own segment and ``b`` in the other segments,
and ``v2`` picks d_l distinct sockets among the in-segment pool of
``n0 = gamma1 M d_l / d_r`` CNs and the off-segment pool of
``n1 = gamma1 (gamma2 - 1) M d_l / d_r`` CNs. Everything is carried as
:class:`fractions.Fraction` so values far below float resolution stay exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

from ..exceptions import DegenerateCoupling, PreconditionViolated
from .params import EnsembleParams

logger = logging.getLogger(__name__)


def pool_sizes(p: EnsembleParams, M: Optional[int]) -> tuple[int, int]:
    """Return ``(n0, n1)``, the in-segment and off-segment CN pool sizes seen by a VN."""

    per_section = p.cns_per_section(M)
    return p.gamma1 * per_section, p.gamma1 * (p.gamma2 - 1) * per_section


def check_pstop_preconditions(p: EnsembleParams, M: Optional[int]) -> tuple[int, int]:
    n0, n1 = pool_sizes(p, M)
    if p.T > 0 and p.gamma2 == 1:
        raise DegenerateCoupling("T > 0 requires gamma2 >= 2", T=str(p.T), gamma2=p.gamma2)
    if n0 <= p.dl:
        raise PreconditionViolated(
            f"gamma1*M*d_l/d_r = {n0} must exceed d_l = {p.dl}", n0=n0, dl=p.dl, M=M
        )
    if p.T > 0 and n1 < p.dl:
        raise PreconditionViolated(
            f"gamma1*(gamma2-1)*M*d_l/d_r = {n1} must be at least d_l = {p.dl}",
            n1=n1,
            dl=p.dl,
            M=M,
        )
    return n0, n1


def split_weight(p: EnsembleParams, a: int) -> Fraction:
    """Probability that both VNs put ``a`` edges in-segment and ``d_l - a`` off-segment."""

    b = p.dl - a
    return (1 - p.T) ** (2 * a) * p.T ** (2 * b) * comb(p.dl, a) ** 2


def configuration_weight(p: EnsembleParams, n0: int, n1: int, a: int) -> Fraction:
    """Weighted count of v2's non-parallel assignments given the ``(a, b)`` split.

    Sharing ``a - l`` of v1's in-segment CNs and ``b - k`` of its off-segment CNs
    leaves ``d_r - 1`` free sockets on each shared CN and ``d_r`` on the others,
    which is where the ``(1 - 1/d_r)^(l + k)`` factor comes from.
    """

    b = p.dl - a
    keep = 1 - Fraction(1, p.dr)
    total = Fraction(0)
    for l in range(a + 1):
        for k in range(b + 1):
            count = comb(a, l) * comb(b, k) * comb(n0 - a, a - l) * comb(n1 - b, b - k)
            if count:
                total += count * keep ** (l + k)
    return total


def p_stop(p: EnsembleParams, M: Optional[int] = None) -> Fraction:
    """Exact size-2 in-section stopping-set probability P_stop."""

    size = p.M if M is None else M
    n0, n1 = check_pstop_preconditions(p, size)
    numerator_factor = (1 - Fraction(1, p.dr)) ** p.dl
    value = Fraction(0)
    for a in range(p.dl + 1):
        weight = split_weight(p, a)
        if not weight:
            continue
        value += weight * numerator_factor / configuration_weight(p, n0, n1, a)
    logger.debug("p_stop evaluated", extra={"event": "p_stop", "probe": size})
    return value


def p_stop_one_d(p: EnsembleParams, M: int) -> Fraction:
    """The single-term ``a = d_l`` expression for the uncoupled-in-j ensemble."""

    n0, _ = pool_sizes(p, M)
    if n0 <= p.dl:
        raise PreconditionViolated(
            f"gamma1*M*d_l/d_r = {n0} must exceed d_l = {p.dl}", n0=n0, dl=p.dl, M=M
        )
    keep = 1 - Fraction(1, p.dr)
    denominator = sum(
        (comb(p.dl, l) * comb(n0 - p.dl, p.dl - l) * keep**l for l in range(p.dl + 1)),
        Fraction(0),
    )
    return keep**p.dl / denominator


@dataclass(frozen=True)
class FullyCoupledComparison:
    """Comparison point for the MD ensemble against an equally sized 1D code.

    ``balanced`` uses the density that equalises per-section edge probability,
    ``(gamma2 - 1) / gamma2``; ``caption`` uses ``(gamma2 - 1) / gamma1`` and is
    ``None`` whenever that value leaves ``[0, 1]``.
    """

    one_d: EnsembleParams
    M: int
    M_tilde: int
    balanced: EnsembleParams
    caption: Optional[EnsembleParams]
    note: str


def fully_coupled_equivalent(p: EnsembleParams, M: int) -> FullyCoupledComparison:
    p.cns_per_section(M)
    M_tilde = M * p.L2
    one_d = EnsembleParams(p.dl, p.dr, p.L1, p.gamma1, M=M_tilde)
    gamma2 = p.L2
    if gamma2 == 1:
        balanced = p.replace(gamma2=1, T=Fraction(0), M=M)
        return FullyCoupledComparison(one_d, M, M_tilde, balanced, balanced, "L2 = 1: both densities are 0")

    balanced_T = Fraction(gamma2 - 1, gamma2)
    caption_T = Fraction(gamma2 - 1, p.gamma1)
    balanced = p.replace(gamma2=gamma2, T=balanced_T, M=M)
    caption: Optional[EnsembleParams] = None
    if caption_T <= 1:
        caption = p.replace(gamma2=gamma2, T=caption_T, M=M)
    else:
        logger.warning(
            "fully coupled density (gamma2-1)/gamma1 = %s exceeds 1 and is skipped",
            caption_T,
            extra={"event": "fully_coupled"},
        )
    note = (
        f"equal per-section edge probability gives T={balanced_T}; "
        f"(gamma2-1)/gamma1 gives T={caption_T}"
    )
    if balanced_T != caption_T:
        note += " (the two candidate densities differ)"
    return FullyCoupledComparison(one_d, M, M_tilde, balanced, caption, note)


@dataclass(frozen=True)
class PStopRow:
    label: str
    M: int
    gamma2: int
    T: Fraction
    value: Fraction


def pstop_sweep(
    p: EnsembleParams,
    sizes: Iterable[int],
    couplings: Sequence[tuple[int, Fraction]] = (),
) -> Iterator[PStopRow]:
    """Rows of P_stop versus M for the given ensemble and each ``(gamma2, T)``."""

    points = list(couplings) or [(p.gamma2, p.T)]
    for M in sizes:
        for gamma2, T in points:
            variant = p.replace(gamma2=gamma2, T=T, M=None)
            yield PStopRow(f"MD g2={gamma2} T={float(variant.T):g}", M, gamma2, variant.T, p_stop(variant, M))


def fully_coupled_sweep(
    p: EnsembleParams,
    sizes: Iterable[int],
    couplings: Sequence[tuple[int, Fraction]] = (),
) -> Iterator[PStopRow]:
    """Rows for the 1D code at M and at M*L2, each MD coupling, and the fully coupled points."""

    base = p.one_d().replace(M=None)
    for M in sizes:
        comparison = fully_coupled_equivalent(p, M)
        yield PStopRow("1D M", M, 1, Fraction(0), p_stop(base, M))
        yield PStopRow("1D M*L2", M, 1, Fraction(0), p_stop(base, comparison.M_tilde))
        yield from pstop_sweep(p, [M], couplings)
        for label, variant in (("fully coupled balanced", comparison.balanced), ("fully coupled caption", comparison.caption)):
            if variant is None:
                continue
            yield PStopRow(label, M, variant.gamma2, variant.T, p_stop(variant.replace(M=None), M))


__all__ = [
    "pool_sizes",
    "check_pstop_preconditions",
    "p_stop",
    "p_stop_one_d",
    "FullyCoupledComparison",
    "fully_coupled_equivalent",
    "PStopRow",
    "pstop_sweep",
    "fully_coupled_sweep",
]
