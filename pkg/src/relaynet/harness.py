"""Seeded Monte-Carlo sweeps, the two-power surface, and single-instance
reports.

Trial ``i`` always draws its channel from child ``i`` of
``SeedSequence(seed)``, and the same draw is reused at every grid point, so
results do not depend on how trials are distributed across workers.
Per-point averages use ``math.fsum``, which is exact and order independent.
"""

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from statistics import multimode
from typing import List, Optional, Sequence

import numpy as np

from relaynet.beamforming import beamformer_set
from relaynet.bounds import cut_set_bound, tdma_rates
from relaynet.errors import ConfigError
from relaynet.model import (
    ChannelKind,
    ChannelModel,
    ChannelRealization,
    PowerBudget,
    budget_from_p,
    sample_channels,
)
from relaynet.numerics import inner_product
from relaynet.optimizer import solution_pipeline_rates, solve_zf_epa

MODES = ("sweep", "surface", "solve", "bound")

CSV_HEADER = (
    "p,sum_zfepa,sum_tdma,sum_cutset,gap,r1,r2,r3,r4,b_eo,b_do,"
    "epa_p_bs,epa_p_r1,epa_p_r2,epa_p_u1,epa_p_u2"
)


def default_p_grid() -> List[float]:
    return [float(p) for p in range(26)]


@dataclass(frozen=True)
class SweepConfig:
    m: int = 5
    trials: int = 500
    seed: int = 0
    channel_model: ChannelModel = field(default_factory=ChannelModel)
    p_grid: Sequence[float] = field(default_factory=default_p_grid)
    mode: str = "sweep"
    strict_paper: bool = False

    def __post_init__(self):
        object.__setattr__(self, "p_grid", tuple(float(p) for p in self.p_grid))
        if not isinstance(self.m, int) or self.m < 2:
            raise ConfigError("m", f"antenna count must be an integer >= 2, got {self.m!r}")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError("trials", f"must be a positive integer, got {self.trials!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ConfigError("seed", f"must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.mode not in MODES:
            raise ConfigError("mode", f"must be one of {MODES}, got {self.mode!r}")
        grid = self.p_grid
        if not grid:
            raise ConfigError("p_grid", "must be non-empty")
        if any(not (math.isfinite(p) and p >= 0.0) for p in grid):
            raise ConfigError("p_grid", "entries must be finite and >= 0")
        if any(b <= a for a, b in zip(grid[:-1], grid[1:])):
            raise ConfigError("p_grid", "must be strictly increasing")


@dataclass(frozen=True)
class SweepRow:
    p: float
    sum_zfepa: float
    sum_tdma: float
    sum_cutset: float
    gap: float
    r1: float
    r2: float
    r3: float
    r4: float
    b_eo: int
    b_do: int
    epa_p_bs: float
    epa_p_r1: float
    epa_p_r2: float
    epa_p_u1: float
    epa_p_u2: float


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def trial_channels(cfg: SweepConfig, trial: int) -> ChannelRealization:
    return sample_channels(trial_rng(cfg.seed, trial), cfg.m, cfg.channel_model)


# --- sweep -----------------------------------------------------------------

def _sweep_trial(args):
    cfg, trial = args
    ch = trial_channels(cfg, trial)
    out = []
    for p in cfg.p_grid:
        budget = budget_from_p(p)
        sol = solve_zf_epa(ch, budget, cfg.strict_paper)
        bound = cut_set_bound(ch, budget, cfg.strict_paper)
        tdma = tdma_rates(ch, budget)
        e = sol.epa
        out.append(
            (
                sol.sum_rate,
                math.fsum(tdma),
                bound.bound_12 + bound.bound_34,
                *sol.rates,
                sol.orders.b_eo,
                sol.orders.b_do,
                e.p_bs,
                e.p_r1,
                e.p_r2,
                e.p_u1,
                e.p_u2,
            )
        )
    return out


def _map_trials(fn, cfg, items, workers):
    if workers is None or workers <= 1:
        return [fn((cfg, i)) for i in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, [(cfg, i) for i in items], chunksize=max(1, len(items) // (4 * workers))))


def _modal(values) -> int:
    return min(multimode(values))


def run_sweep(cfg: SweepConfig, workers: Optional[int] = None) -> List[SweepRow]:
    """Trial-averaged ZF-EPA, TDMA and cut-set sum rates at every grid point,
    with budgets from :func:`budget_from_p`."""
    if cfg.mode != "sweep":
        raise ConfigError("mode", f"run_sweep needs mode 'sweep', got {cfg.mode!r}")
    per_trial = _map_trials(_sweep_trial, cfg, range(cfg.trials), workers)
    n = cfg.trials
    rows = []
    for k, p in enumerate(cfg.p_grid):
        cols = list(zip(*(t[k] for t in per_trial)))
        mean = [math.fsum(c) / n for c in cols]
        zf, td, cs = mean[0], mean[1], mean[2]
        rows.append(
            SweepRow(
                p=p,
                sum_zfepa=zf,
                sum_tdma=td,
                sum_cutset=cs,
                gap=cs - zf,
                r1=mean[3],
                r2=mean[4],
                r3=mean[5],
                r4=mean[6],
                b_eo=_modal(cols[7]),
                b_do=_modal(cols[8]),
                epa_p_bs=mean[9],
                epa_p_r1=mean[10],
                epa_p_r2=mean[11],
                epa_p_u1=mean[12],
                epa_p_u2=mean[13],
            )
        )
    return rows


def _fmt(x) -> str:
    if isinstance(x, int):
        return str(x)
    return format(x, ".12g")


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for row in rows:
        buf.write(",".join(_fmt(getattr(row, f.name)) for f in fields(SweepRow)) + "\n")
    return buf.getvalue()


def rows_to_json(rows: Sequence[SweepRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2) + "\n"


# --- surface ---------------------------------------------------------------

def surface_for_channel(
    ch: ChannelRealization,
    p_bs_grid: Sequence[float],
    p_u_grid: Sequence[float],
    p_r_fixed: float,
    strict_paper: bool = False,
) -> np.ndarray:
    """ZF-EPA sum rate on a ``(p_bs, p_u)`` grid with both relays at
    ``p_r_fixed``. Rows index ``p_bs``, columns ``p_u``."""
    out = np.empty((len(p_bs_grid), len(p_u_grid)))
    for i, p_bs in enumerate(p_bs_grid):
        for j, p_u in enumerate(p_u_grid):
            budget = PowerBudget(p_bs, p_r_fixed, p_r_fixed, p_u, p_u)
            out[i, j] = solve_zf_epa(ch, budget, strict_paper).sum_rate
    return out


def _surface_trial(args):
    (cfg, p_bs_grid, p_u_grid, p_r_fixed), trial = args
    ch = trial_channels(cfg, trial)
    return surface_for_channel(ch, p_bs_grid, p_u_grid, p_r_fixed, cfg.strict_paper)


def run_surface(
    cfg: SweepConfig,
    p_bs_grid: Sequence[float],
    p_u_grid: Sequence[float],
    p_r_fixed: float = 5.0,
    workers: Optional[int] = None,
) -> np.ndarray:
    """Trial-averaged sum-rate surface at fixed relay power."""
    if cfg.mode != "surface":
        raise ConfigError("mode", f"run_surface needs mode 'surface', got {cfg.mode!r}")
    if len(p_bs_grid) == 0:
        raise ConfigError("p_bs_grid", "must be non-empty")
    if len(p_u_grid) == 0:
        raise ConfigError("p_u_grid", "must be non-empty")
    if not p_r_fixed >= 0.0:
        raise ConfigError("p_r_fixed", f"must be >= 0, got {p_r_fixed}")
    key = (cfg, tuple(p_bs_grid), tuple(p_u_grid), float(p_r_fixed))
    per_trial = _map_trials(_surface_trial, key, range(cfg.trials), workers)
    stacked = np.stack(per_trial)
    out = np.empty(stacked.shape[1:])
    for idx in np.ndindex(*out.shape):
        out[idx] = math.fsum(stacked[(slice(None),) + idx]) / cfg.trials
    return out


def surface_to_csv(p_bs_grid, p_u_grid, grid: np.ndarray) -> str:
    lines = ["p_bs,p_u,sum_rate"]
    for i, p_bs in enumerate(p_bs_grid):
        for j, p_u in enumerate(p_u_grid):
            lines.append(f"{_fmt(float(p_bs))},{_fmt(float(p_u))},{_fmt(float(grid[i, j]))}")
    return "\n".join(lines) + "\n"


# --- single instance ---------------------------------------------------------

def interference_diagnostics(ch, sol, strict_paper=False) -> dict:
    """Leakage terms left in the SINR denominators at the chosen orders and
    EPA split; all zero (to round-off) unless ``strict_paper`` is set."""
    o = sol.orders
    e = sol.epa
    bf = beamformer_set(ch, e.split.p1, e.split.p2, o, strict_paper)
    leak_r1 = abs(inner_product(bf.w2, ch.h1)) ** 2
    leak_r2 = abs(inner_product(bf.w1, ch.h2)) ** 2
    rx_31 = abs(inner_product(bf.v1, ch.h2)) ** 2
    rx_42 = abs(inner_product(bf.v2, ch.h1)) ** 2
    return {
        "uplink_denominator_relay1": 1.0 + o.b_eo * leak_r1,
        "uplink_denominator_relay2": 1.0 + (1 - o.b_eo) * leak_r2,
        "downlink_denominator_m3": 1.0 + o.b_do * rx_31 * e.p_r2,
        "downlink_denominator_m4": 1.0 + (1 - o.b_do) * rx_42 * e.p_r1,
        "active_tx_leakage": o.b_eo * leak_r1 + (1 - o.b_eo) * leak_r2,
        "active_rx_cross_gain": o.b_do * rx_31 + (1 - o.b_do) * rx_42,
        "pipeline_rates": list(solution_pipeline_rates(ch, sol, strict_paper)),
        "beamformer_degenerate": bf.degenerate,
    }


def _budget_dict(b: PowerBudget) -> dict:
    return asdict(b)


def bound_report(ch: ChannelRealization, budget: PowerBudget, strict_paper: bool = False) -> dict:
    bound = cut_set_bound(ch, budget, strict_paper)
    d = asdict(bound)
    d["sum_bound"] = bound.bound_12 + bound.bound_34
    return {
        "channels": ch.to_dict(),
        "budget": _budget_dict(budget),
        "strict_paper": strict_paper,
        "cut_set": d,
    }


def solve_single(
    ch: ChannelRealization, budget: PowerBudget, strict_paper: bool = False
) -> dict:
    """Full JSON-ready report for one channel realization and budget."""
    sol = solve_zf_epa(ch, budget, strict_paper)
    bound = cut_set_bound(ch, budget, strict_paper)
    tdma = tdma_rates(ch, budget)
    cut = asdict(bound)
    cut["sum_bound"] = bound.bound_12 + bound.bound_34
    return {
        "channels": ch.to_dict(),
        "budget": _budget_dict(budget),
        "strict_paper": strict_paper,
        "zf_epa": {
            "rates": list(sol.rates),
            "sum_rate": sol.sum_rate,
            "orders": asdict(sol.orders),
            "split": asdict(sol.split),
            "unused_bs_power": sol.unused_bs_power,
            "epa": asdict(sol.epa),
            "gains": {k: v for k, v in asdict(sol.gains).items() if k != "orders"},
            "order_sums": {
                f"{eo}{do}": s for (eo, do), s in zip(((0, 0), (0, 1), (1, 0), (1, 1)), sol.order_sums)
            },
        },
        "cut_set": cut,
        "tdma": {"rates": list(tdma), "sum_rate": math.fsum(tdma)},
        "gap": cut["sum_bound"] - sol.sum_rate,
        "diagnostics": interference_diagnostics(ch, sol, strict_paper),
    }


def channel_model_from_name(name: str, variance: float = 1.0) -> ChannelModel:
    return ChannelModel(ChannelKind(name), variance)
