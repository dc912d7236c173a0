"""Zero-forcing / matched beamformers and their effective gains.

Transmit side (macro BS to relays), default labelling::

    b_eo = 1: w1 matched to h1,     w2 along h2 projected off h1
    b_eo = 0: w1 along h1 off h2,   w2 matched to h2

The orthogonalized beamformer is always the one whose leakage would survive
in the uplink SINR denominators for that order, so every denominator is 1.
With ``strict_paper=True`` the two transmit branches are swapped back to the
published labelling, which leaves the active leakage term in place.

Receive side (relays to macro BS)::

    b_do = 0: v1 matched to h1,     v2 along h2 off h1
    b_do = 1: v1 along h1 off h2,   v2 matched to h2
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from relaynet.errors import DegenerateChannelError
from relaynet.model import ChannelRealization, OrderPair
from relaynet.numerics import as_vector, norm_sq, orthogonal_component

# parallel-channel threshold on ||h_perp||^2 / ||h||^2
DEGENERACY_REL = 1e-12


@dataclass(frozen=True, eq=False)
class BeamformerSet:
    w1: np.ndarray
    w2: np.ndarray
    v1: np.ndarray
    v2: np.ndarray
    orders: OrderPair
    degenerate: bool = False


@dataclass(frozen=True)
class EffectiveGains:
    """Per-unit-power transmit gains ``g = |h^H w|^2 / P`` and receive gains
    ``f = |v^H h|^2`` of the constructed beamformers."""

    g1: float
    g2: float
    f1: float
    f2: float
    orders: OrderPair


def _check_nonzero(ch: ChannelRealization) -> None:
    if norm_sq(ch.h1) == 0.0 or norm_sq(ch.h2) == 0.0:
        raise DegenerateChannelError("h1 and h2 must be nonzero")


def _unit(v: np.ndarray, ref_norm_sq: float) -> np.ndarray:
    """``v / ||v||``, or the zero vector when ``v`` is negligible next to
    the channel it was projected from."""
    n2 = norm_sq(v)
    if n2 < DEGENERACY_REL * ref_norm_sq or n2 == 0.0:
        return np.zeros_like(v)
    return v / np.sqrt(n2)


def _directions(ch: ChannelRealization):
    """Unit directions: matched h1, matched h2, h1 off h2, h2 off h1."""
    _check_nonzero(ch)
    n1, n2 = norm_sq(ch.h1), norm_sq(ch.h2)
    m1 = ch.h1 / np.sqrt(n1)
    m2 = ch.h2 / np.sqrt(n2)
    z1 = _unit(orthogonal_component(ch.h1, ch.h2), n1)
    z2 = _unit(orthogonal_component(ch.h2, ch.h1), n2)
    return m1, m2, z1, z2


def _transmit_matched_first(b_eo: int, strict_paper: bool) -> bool:
    """True when w1 is the matched beamformer (and w2 the orthogonalized)."""
    return (b_eo == 1) != strict_paper


def transmit_beamformers(
    ch: ChannelRealization, p1: float, p2: float, b_eo: int, strict_paper: bool = False
) -> Tuple[np.ndarray, np.ndarray]:
    """Power-bearing transmit pair with ``||w1||^2 = p1`` and ``||w2||^2 = p2``.

    For parallel channels the orthogonalized beamformer is the zero vector.
    """
    if p1 < 0 or p2 < 0:
        raise ValueError("beamformer powers must be >= 0")
    m1, m2, z1, z2 = _directions(ch)
    if _transmit_matched_first(b_eo, strict_paper):
        d1, d2 = m1, z2
    else:
        d1, d2 = z1, m2
    return np.sqrt(p1) * d1, np.sqrt(p2) * d2


def receive_beamformers(ch: ChannelRealization, b_do: int) -> Tuple[np.ndarray, np.ndarray]:
    """Unit-norm receive pair at the macro BS."""
    m1, m2, z1, z2 = _directions(ch)
    if b_do == 0:
        return m1, z2
    return z1, m2


def beamformer_set(
    ch: ChannelRealization,
    p1: float,
    p2: float,
    orders: OrderPair,
    strict_paper: bool = False,
) -> BeamformerSet:
    w1, w2 = transmit_beamformers(ch, p1, p2, orders.b_eo, strict_paper)
    v1, v2 = receive_beamformers(ch, orders.b_do)
    degenerate = any(norm_sq(v) == 0.0 for v in (v1, v2))
    return BeamformerSet(w1, w2, v1, v2, orders, degenerate)


def effective_gains(
    ch: ChannelRealization, orders: OrderPair, strict_paper: bool = False
) -> EffectiveGains:
    """Matched side gets ``||h||^2``, orthogonalized side ``||h_perp||^2``.

    Degenerate (parallel) channels give an orthogonalized gain of 0.
    """
    _check_nonzero(ch)
    n1, n2 = norm_sq(ch.h1), norm_sq(ch.h2)
    p1 = norm_sq(orthogonal_component(ch.h1, ch.h2))
    p2 = norm_sq(orthogonal_component(ch.h2, ch.h1))
    perp1 = p1 if p1 >= DEGENERACY_REL * n1 else 0.0
    perp2 = p2 if p2 >= DEGENERACY_REL * n2 else 0.0
    if _transmit_matched_first(orders.b_eo, strict_paper):
        g1, g2 = n1, perp2
    else:
        g1, g2 = perp1, n2
    if orders.b_do == 0:
        f1, f2 = n1, perp2
    else:
        f1, f2 = perp1, n2
    return EffectiveGains(g1, g2, f1, f2, orders)


def project_to_channel_span(w, ch: ChannelRealization) -> np.ndarray:
    """Orthogonal projection of ``w`` onto ``span(h1, h2)``.

    Inner products with ``h1`` and ``h2`` are preserved while any
    out-of-span component, which only costs power, is removed.
    """
    w = as_vector(w)
    if w.size != ch.m:
        raise ValueError(f"w has length {w.size}, channels have M={ch.m}")
    basis = []
    for h in (ch.h1, ch.h2):
        r = h.copy()
        for e in basis:
            r = r - np.vdot(e, r) * e
        for e in basis:
            r = r - np.vdot(e, r) * e
        n2 = norm_sq(r)
        if n2 > DEGENERACY_REL * max(norm_sq(h), 1e-300):
            basis.append(r / np.sqrt(n2))
    out = np.zeros_like(w)
    for e in basis:
        out = out + np.vdot(e, w) * e
    return out
