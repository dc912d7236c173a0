"""Achievable rates, zero-forcing power allocation and cut-set bounds for a
two-way two-tier relay network (one multi-antenna macro basestation, two
single-antenna femtocell relays, two single-antenna users)."""

from relaynet.errors import (
    ChannelFileError,
    ConfigError,
    DegenerateChannelError,
    DimensionError,
    InfeasibleError,
    ModelError,
    RelayNetError,
)
from relaynet.model import (
    ChannelModel,
    ChannelRealization,
    OrderPair,
    PowerBudget,
    budget_from_p,
    sample_channels,
)
from relaynet.beamforming import (
    BeamformerSet,
    EffectiveGains,
    beamformer_set,
    effective_gains,
    project_to_channel_span,
    receive_beamformers,
    transmit_beamformers,
)
from relaynet.rates import RateQuadruple, SinrQuadruple
from relaynet.optimizer import (
    EpaPowers,
    PowerSplit,
    ZfEpaSolution,
    epa_powers,
    pipeline_rates,
    solve_power_split,
    solve_zf_epa,
)
from relaynet.bounds import CutSetBound, cut_set_bound, cut_terms, tdma_rates

__version__ = "0.1.0"
