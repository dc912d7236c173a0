"""Zero-forcing efficient power allocation (ZF-EPA).

With ZF beamformers every rate constraint decouples into one uplink and one
downlink term per message. Relay and user powers are set to their maxima,
the macro-BS split ``(P1, P2)`` is found by a breakpoint-partitioned section
search for each of the four order pairs, and the minimal powers that still
reach the optimal rates are recovered by inverting the binding constraints.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from relaynet.beamforming import EffectiveGains, beamformer_set, effective_gains
from relaynet.errors import InfeasibleError
from relaynet.model import ALL_ORDERS, ChannelRealization, OrderPair, PowerBudget
from relaynet.numerics import maximize_piecewise_concave
from relaynet.rates import (
    RateQuadruple,
    downlink_rate,
    downlink_rates,
    downlink_sinrs,
    end_to_end_rates,
    simplified_uplink_rate,
    uplink_rates,
    uplink_sinrs,
)

RATE_EPS = 1e-12
TIE_EPS = 1e-12


@dataclass(frozen=True)
class PowerSplit:
    p1: float
    p2: float

    @property
    def total(self) -> float:
        return self.p1 + self.p2


@dataclass(frozen=True)
class EpaPowers:
    p_bs: float
    p_r1: float
    p_r2: float
    p_u1: float
    p_u2: float
    split: PowerSplit


@dataclass(frozen=True)
class ZfEpaSolution:
    rates: RateQuadruple
    split: PowerSplit
    orders: OrderPair
    epa: EpaPowers
    sum_rate: float
    gains: EffectiveGains
    order_sums: Tuple[float, float, float, float]  # indexed like ALL_ORDERS
    unused_bs_power: float


def _uplink_power(rate: float, gain: float) -> float:
    """Smallest P with ``1/2 log2(1/2 + gain * P) >= rate``."""
    if rate <= RATE_EPS:
        return 0.0
    if gain <= 0.0:
        raise InfeasibleError(f"rate {rate} requested through a zero-gain path")
    return (2.0 ** (2.0 * rate) - 0.5) / gain


def _downlink_power(rate: float, gain: float) -> float:
    """Smallest P with ``1/2 log2(1 + gain * P) >= rate``."""
    if rate <= RATE_EPS:
        return 0.0
    if gain <= 0.0:
        raise InfeasibleError(f"rate {rate} requested through a zero-gain path")
    return (2.0 ** (2.0 * rate) - 1.0) / gain


def _split_breakpoints(g: float, cap: float):
    """Positivity kink and cap kink of ``min(1/2 [log2(1/2 + g P)]^+, cap)``."""
    if g <= 0.0:
        return []
    pts = [0.5 / g]
    if math.isfinite(cap):
        pts.append((2.0 ** (2.0 * cap) - 0.5) / g)
    return pts


def solve_power_split(
    g1: float, g2: float, cap1: float, cap2: float, p_bs_max: float
) -> Tuple[PowerSplit, float, float]:
    """Best split of the macro-BS power between the two ZF beamformers.

    Maximizes ``min(u(g1 P1), cap1) + min(u(g2 (p_bs_max - P1)), cap2)`` with
    ``u(x) = 1/2 [log2(1/2 + x)]^+``. The returned split holds the minimal
    powers for the optimal rates, so ``p1 + p2`` can fall short of
    ``p_bs_max`` once a cap binds; the remainder is unused.
    """
    if not p_bs_max >= 0.0:
        raise ValueError(f"p_bs_max must be >= 0, got {p_bs_max}")
    if g1 <= 0.0 and g2 <= 0.0:
        return PowerSplit(0.0, 0.0), 0.0, 0.0

    def terms(p1):
        p2 = max(p_bs_max - p1, 0.0)
        return (
            min(simplified_uplink_rate(g1 * p1), cap1),
            min(simplified_uplink_rate(g2 * p2), cap2),
        )

    def objective(p1):
        a, b = terms(p1)
        return a + b

    breaks = _split_breakpoints(g1, cap1)
    breaks += [p_bs_max - q for q in _split_breakpoints(g2, cap2)]
    p1_star, f_star = maximize_piecewise_concave(objective, breaks, 0.0, p_bs_max)
    if g1 > 0.0 and g2 > 0.0:
        # stationary point of the uncapped sum; the flat top defeats section search
        p1_wf = 0.5 * (p_bs_max + 0.5 / g2 - 0.5 / g1)
        if 0.0 <= p1_wf <= p_bs_max and objective(p1_wf) >= f_star:
            p1_star = p1_wf
    r1, r2 = terms(p1_star)
    q1 = min(_uplink_power(r1, g1), p1_star)
    q2 = min(_uplink_power(r2, g2), p_bs_max - p1_star)
    # re-derive the rates from the minimal powers so split and rates agree
    r1 = min(simplified_uplink_rate(g1 * q1), cap1)
    r2 = min(simplified_uplink_rate(g2 * q2), cap2)
    return PowerSplit(q1, q2), r1, r2


def epa_powers(
    rates: RateQuadruple, gains: EffectiveGains, ch: ChannelRealization
) -> EpaPowers:
    """Minimal device powers that still meet every constraint at ``rates``."""
    r1, r2, r3, r4 = rates
    a3, a4 = abs(ch.h3) ** 2, abs(ch.h4) ** 2
    p1 = _uplink_power(r1, gains.g1)
    p2 = _uplink_power(r2, gains.g2)
    p_u1 = _uplink_power(r3, a3)
    p_u2 = _uplink_power(r4, a4)
    p_r1 = max(_downlink_power(r1, a3), _downlink_power(r3, gains.f1))
    p_r2 = max(_downlink_power(r2, a4), _downlink_power(r4, gains.f2))
    return EpaPowers(p1 + p2, p_r1, p_r2, p_u1, p_u2, PowerSplit(p1, p2))


def _solve_order(ch, budget, orders, strict_paper):
    gains = effective_gains(ch, orders, strict_paper)
    a3, a4 = abs(ch.h3) ** 2, abs(ch.h4) ** 2
    cap1 = downlink_rate(a3 * budget.p_r1_max)
    cap2 = downlink_rate(a4 * budget.p_r2_max)
    split, r1, r2 = solve_power_split(gains.g1, gains.g2, cap1, cap2, budget.p_bs_max)
    r3 = min(
        simplified_uplink_rate(a3 * budget.p_u1_max),
        downlink_rate(gains.f1 * budget.p_r1_max),
    )
    r4 = min(
        simplified_uplink_rate(a4 * budget.p_u2_max),
        downlink_rate(gains.f2 * budget.p_r2_max),
    )
    return RateQuadruple(r1, r2, r3, r4), split, gains


def solve_zf_epa(
    ch: ChannelRealization, budget: PowerBudget, strict_paper: bool = False
) -> ZfEpaSolution:
    """Optimal ZF-EPA rates over all four order pairs.

    Ties between order pairs go to the lexicographically smallest
    ``(b_eo, b_do)``.
    """
    best = None
    sums = []
    for orders in ALL_ORDERS:
        rates, split, gains = _solve_order(ch, budget, orders, strict_paper)
        total = math.fsum(rates)
        sums.append(total)
        if best is None or total > best[0] + TIE_EPS:
            best = (total, rates, split, gains, orders)
    total, rates, split, gains, orders = best
    epa = epa_powers(rates, gains, ch)
    return ZfEpaSolution(
        rates=rates,
        split=split,
        orders=orders,
        epa=epa,
        sum_rate=total,
        gains=gains,
        order_sums=tuple(sums),
        unused_bs_power=max(budget.p_bs_max - epa.p_bs, 0.0),
    )


def pipeline_rates(
    ch: ChannelRealization,
    orders: OrderPair,
    p1: float,
    p2: float,
    p_r1: float,
    p_r2: float,
    p_u1: float,
    p_u2: float,
    strict_paper: bool = False,
    identical_lattices: bool = True,
) -> RateQuadruple:
    """End-to-end rates from first principles: build the beamformers, form
    every SINR including leakage terms, then take per-message minima."""
    bf = beamformer_set(ch, p1, p2, orders, strict_paper)
    ul = uplink_sinrs(ch, bf.w1, bf.w2, p_u1, p_u2, orders.b_eo)
    dl = downlink_sinrs(ch, bf.v1, bf.v2, p_r1, p_r2, orders.b_do)
    return end_to_end_rates(uplink_rates(ul, identical_lattices), downlink_rates(dl))


def solution_pipeline_rates(
    ch: ChannelRealization, sol: ZfEpaSolution, strict_paper: bool = False,
    epa: Optional[EpaPowers] = None,
) -> RateQuadruple:
    """``pipeline_rates`` evaluated at a solution's EPA powers."""
    e = sol.epa if epa is None else epa
    return pipeline_rates(
        ch, sol.orders, e.split.p1, e.split.p2, e.p_r1, e.p_r2, e.p_u1, e.p_u2, strict_paper
    )
