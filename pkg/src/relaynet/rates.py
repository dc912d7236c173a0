"""SINR and rate expressions for the two-phase (uplink, downlink) protocol.

All rates are in bits per channel use and include the half-duplex factor 1/2
exactly once.
"""

import math
from typing import NamedTuple

import numpy as np

from relaynet.model import ChannelRealization


class SinrQuadruple(NamedTuple):
    gamma1: float
    gamma2: float
    gamma3: float
    gamma4: float
    phase: str  # "uplink" or "downlink"


class RateQuadruple(NamedTuple):
    r1: float
    r2: float
    r3: float
    r4: float

    @property
    def total(self) -> float:
        return self.r1 + self.r2 + self.r3 + self.r4


def _gain(a, b) -> float:
    return abs(complex(np.vdot(a, b))) ** 2


def uplink_sinrs(
    ch: ChannelRealization, w1, w2, p_u1: float, p_u2: float, b_eo: int
) -> SinrQuadruple:
    """SINRs at the relays while the BS and users transmit.

    Dirty-paper coding removes the leakage of whichever BS message is encoded
    first from the other's relay; the remaining leakage hits both the BS
    message and the user message arriving at that relay.
    """
    if p_u1 < 0 or p_u2 < 0:
        raise ValueError("user powers must be >= 0")
    leak1 = b_eo * _gain(w2, ch.h1)
    leak2 = (1 - b_eo) * _gain(w1, ch.h2)
    return SinrQuadruple(
        _gain(w1, ch.h1) / (1.0 + leak1),
        _gain(w2, ch.h2) / (1.0 + leak2),
        abs(ch.h3) ** 2 * p_u1 / (1.0 + leak1),
        abs(ch.h4) ** 2 * p_u2 / (1.0 + leak2),
        "uplink",
    )


def downlink_sinrs(
    ch: ChannelRealization, v1, v2, p_r1: float, p_r2: float, b_do: int
) -> SinrQuadruple:
    """SNRs at the users and post-beamforming SINRs at the macro BS."""
    if p_r1 < 0 or p_r2 < 0:
        raise ValueError("relay powers must be >= 0")
    return SinrQuadruple(
        abs(ch.h3) ** 2 * p_r1,
        abs(ch.h4) ** 2 * p_r2,
        _gain(v1, ch.h1) * p_r1 / (1.0 + b_do * _gain(v1, ch.h2) * p_r2),
        _gain(v2, ch.h2) * p_r2 / (1.0 + (1 - b_do) * _gain(v2, ch.h1) * p_r1),
        "downlink",
    )


def cf_uplink_rate(gamma_own: float, gamma_partner: float) -> float:
    """Compute-and-forward rate of one message at a relay.

    ``gamma_partner`` is the SINR of the other message superimposed at the
    same relay (m1 pairs with m3, m2 with m4). ``0/0`` is taken as 0.
    """
    denom = gamma_own + gamma_partner
    frac = gamma_own / denom if denom > 0.0 else 0.0
    arg = frac + gamma_own
    if arg <= 1.0:
        return 0.0
    return 0.5 * math.log2(arg)


def simplified_uplink_rate(gamma: float) -> float:
    """Identical-lattice form ``1/2 [log2(1/2 + gamma)]^+``."""
    arg = 0.5 + gamma
    if arg <= 1.0:
        return 0.0
    return 0.5 * math.log2(arg)


def downlink_rate(gamma: float) -> float:
    return 0.5 * math.log2(1.0 + gamma)


def end_to_end_rates(ul: RateQuadruple, dl: RateQuadruple) -> RateQuadruple:
    """Each message is limited by its weaker hop."""
    return RateQuadruple(*(min(u, d) for u, d in zip(ul, dl)))


def uplink_rates(sinrs: SinrQuadruple, identical_lattices: bool = True) -> RateQuadruple:
    g1, g2, g3, g4, _ = sinrs
    if identical_lattices:
        return RateQuadruple(*(simplified_uplink_rate(g) for g in (g1, g2, g3, g4)))
    return RateQuadruple(
        cf_uplink_rate(g1, g3),
        cf_uplink_rate(g2, g4),
        cf_uplink_rate(g3, g1),
        cf_uplink_rate(g4, g2),
    )


def downlink_rates(sinrs: SinrQuadruple) -> RateQuadruple:
    return RateQuadruple(*(downlink_rate(g) for g in sinrs[:4]))
