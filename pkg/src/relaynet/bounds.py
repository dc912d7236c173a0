"""Cut-set outer bound and the four-slot TDMA baseline."""

import math
from dataclasses import dataclass

from relaynet.model import ChannelRealization, PowerBudget
from relaynet.numerics import gram_eigenvalues, maximize_piecewise_concave, norm_sq
from relaynet.optimizer import PowerSplit
from relaynet.rates import RateQuadruple


@dataclass(frozen=True)
class CutSetBound:
    """Cut terms are in bits before the half-duplex factor; the two bounds
    already include it."""

    alpha1: float
    alpha2: float
    beta1: float
    beta2: float
    delta1: float
    delta2: float
    psi1: float
    psi2: float
    bound_12: float
    bound_34: float
    lambda1: float
    lambda2: float
    split_used: PowerSplit


def _lg(x: float) -> float:
    return math.log2(1.0 + x)


class _CutConstants:
    """Channel/budget constants shared by every split evaluation."""

    def __init__(self, ch: ChannelRealization, budget: PowerBudget, strict_paper: bool):
        self.lam1, self.lam2 = gram_eigenvalues(ch.h1, ch.h2)
        self.a3, self.a4 = abs(ch.h3) ** 2, abs(ch.h4) ** 2
        self.n1, self.n2 = norm_sq(ch.h1), norm_sq(ch.h2)
        pr1, pr2 = budget.p_r1_max, budget.p_r2_max
        pu1, pu2 = budget.p_u1_max, budget.p_u2_max
        # larger relay power on the larger eigenvalue; equals the textbook
        # form whenever the relay powers agree, and stays a valid bound otherwise
        self.alpha2 = _lg(self.lam1 * max(pr1, pr2)) + _lg(self.lam2 * min(pr1, pr2))
        self.psi1_relay = _lg(self.a3 * (pr2 if strict_paper else pr1))
        self.beta1 = _lg(self.a3 * pr1) + _lg(self.a4 * pr2)
        self.beta2 = _lg(self.a3 * pu1) + _lg(self.a4 * pu2)
        self.delta1_relay = _lg(self.a4 * pr2)
        self.delta2 = _lg(self.n1 * pr1) + _lg(self.a4 * pu2)
        self.psi2 = _lg(self.n2 * pr2) + _lg(self.a3 * pu1)

    def split_terms(self, p1: float, p2: float):
        # sorted like alpha2: ZF gains are submajorized by the eigenvalues,
        # so this dominates any ZF sum rate at the same split
        alpha1 = _lg(self.lam1 * max(p1, p2)) + _lg(self.lam2 * min(p1, p2))
        delta1 = _lg(self.n1 * p1) + self.delta1_relay
        psi1 = _lg(self.n2 * p2) + self.psi1_relay
        return alpha1, delta1, psi1

    def bound(self, p1: float, p2: float) -> CutSetBound:
        alpha1, delta1, psi1 = self.split_terms(p1, p2)
        return CutSetBound(
            alpha1=alpha1,
            alpha2=self.alpha2,
            beta1=self.beta1,
            beta2=self.beta2,
            delta1=delta1,
            delta2=self.delta2,
            psi1=psi1,
            psi2=self.psi2,
            bound_12=0.5 * min(alpha1, self.beta1, delta1, psi1),
            bound_34=0.5 * min(self.alpha2, self.beta2, self.delta2, self.psi2),
            lambda1=self.lam1,
            lambda2=self.lam2,
            split_used=PowerSplit(p1, p2),
        )


def cut_terms(
    ch: ChannelRealization,
    budget: PowerBudget,
    p1: float,
    p2: float,
    strict_paper: bool = False,
) -> CutSetBound:
    """All eight cut terms for a fixed macro-BS split ``(p1, p2)``.

    The Cut-4 relay term uses relay 1's own power; ``strict_paper`` pairs it
    with relay 2's power instead, as originally published.
    """
    return _CutConstants(ch, budget, strict_paper).bound(p1, p2)


def cut_set_bound(
    ch: ChannelRealization, budget: PowerBudget, strict_paper: bool = False
) -> CutSetBound:
    """Cut-set bound with the macro-BS split chosen to maximize the
    broadcast-side bound.

    ``min(alpha1, delta1, psi1)`` is concave in ``p1`` on either side of
    the even split, so a section search per half finds its maximum.
    """
    k = _CutConstants(ch, budget, strict_paper)
    p_max = budget.p_bs_max

    def objective(p1):
        return min(k.split_terms(p1, p_max - p1))

    p1, _ = maximize_piecewise_concave(objective, (0.5 * p_max,), 0.0, p_max)
    return k.bound(p1, p_max - p1)


def tdma_rates(ch: ChannelRealization, budget: PowerBudget) -> RateQuadruple:
    """One message per slot over four slots, each slot interference-free with
    matched beamforming and full device power."""
    a3, a4 = abs(ch.h3) ** 2, abs(ch.h4) ** 2
    n1, n2 = norm_sq(ch.h1), norm_sq(ch.h2)
    b = budget
    return RateQuadruple(
        0.25 * min(_lg(n1 * b.p_bs_max), _lg(a3 * b.p_r1_max)),
        0.25 * min(_lg(n2 * b.p_bs_max), _lg(a4 * b.p_r2_max)),
        0.25 * min(_lg(a3 * b.p_u1_max), _lg(n1 * b.p_r1_max)),
        0.25 * min(_lg(a4 * b.p_u2_max), _lg(n2 * b.p_r2_max)),
    )
