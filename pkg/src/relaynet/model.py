"""Network instance data: channels, power budgets, en-/decoding orders.

Noise variance is 1 at every receiver, so all powers are SNR-normalized.
"""

import enum
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Union

import numpy as np

from relaynet.errors import ChannelFileError, ModelError
from relaynet.numerics import as_vector


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """Macro-BS to relay vectors ``h1``, ``h2`` (length M) and relay to user
    scalars ``h3``, ``h4``."""

    h1: np.ndarray
    h2: np.ndarray
    h3: complex
    h4: complex

    def __post_init__(self):
        h1, h2 = as_vector(self.h1), as_vector(self.h2)
        if h1.size != h2.size:
            raise ModelError(f"h1 and h2 lengths differ ({h1.size} vs {h2.size})")
        if h1.size < 2:
            raise ModelError(f"need M >= 2 antennas, got {h1.size}")
        h3, h4 = complex(self.h3), complex(self.h4)
        if not (math.isfinite(abs(h3)) and math.isfinite(abs(h4))):
            raise ModelError("h3 and h4 must be finite")
        h1.setflags(write=False)
        h2.setflags(write=False)
        object.__setattr__(self, "h1", h1)
        object.__setattr__(self, "h2", h2)
        object.__setattr__(self, "h3", h3)
        object.__setattr__(self, "h4", h4)

    @property
    def m(self) -> int:
        return int(self.h1.size)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "h1_re": self.h1.real.tolist(),
            "h1_im": self.h1.imag.tolist(),
            "h2_re": self.h2.real.tolist(),
            "h2_im": self.h2.imag.tolist(),
            "h3_re": self.h3.real,
            "h3_im": self.h3.imag,
            "h4_re": self.h4.real,
            "h4_im": self.h4.imag,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ChannelRealization":
        """Build from the channels-file document; errors name the bad field."""
        if not isinstance(doc, dict):
            raise ChannelFileError("top level must be a JSON object")

        def get(name):
            if name not in doc:
                raise ChannelFileError(f"missing field '{name}'")
            return doc[name]

        def vec(name, m):
            value = get(name)
            if not isinstance(value, list) or len(value) != m:
                raise ChannelFileError(f"field '{name}' must be a list of {m} numbers")
            try:
                out = np.array([float(x) for x in value])
            except (TypeError, ValueError):
                raise ChannelFileError(f"field '{name}' contains a non-numeric entry") from None
            if not np.all(np.isfinite(out)):
                raise ChannelFileError(f"field '{name}' contains a non-finite entry")
            return out

        def num(name):
            value = get(name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ChannelFileError(f"field '{name}' must be a number")
            if not math.isfinite(value):
                raise ChannelFileError(f"field '{name}' must be finite")
            return float(value)

        m = get("m")
        if isinstance(m, bool) or not isinstance(m, int) or m < 2:
            raise ChannelFileError("field 'm' must be an integer >= 2")
        return cls(
            h1=vec("h1_re", m) + 1j * vec("h1_im", m),
            h2=vec("h2_re", m) + 1j * vec("h2_im", m),
            h3=complex(num("h3_re"), num("h3_im")),
            h4=complex(num("h4_re"), num("h4_im")),
        )

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ChannelRealization":
        text = Path(path).read_text()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ChannelFileError(
                f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from None
        try:
            return cls.from_dict(doc)
        except ChannelFileError as exc:
            raise ChannelFileError(f"{path}: {exc}") from None

    def dump(self, path: Union[str, Path]) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")


@dataclass(frozen=True)
class PowerBudget:
    """Maximum transmit powers of the five transmitting devices (linear)."""

    p_bs_max: float
    p_r1_max: float
    p_r2_max: float
    p_u1_max: float
    p_u2_max: float

    def __post_init__(self):
        for name in ("p_bs_max", "p_r1_max", "p_r2_max", "p_u1_max", "p_u2_max"):
            value = float(getattr(self, name))
            if not value >= 0.0:
                raise ModelError(f"{name} must be >= 0, got {value}")
            object.__setattr__(self, name, value)

    def __iter__(self) -> Iterator[float]:
        return iter((self.p_bs_max, self.p_r1_max, self.p_r2_max, self.p_u1_max, self.p_u2_max))


@dataclass(frozen=True)
class OrderPair:
    """Dirty-paper encoding order and successive-decoding order flags.

    ``b_eo == 1``: message m1 is encoded first, so the m2 signal interferes
    at relay 1. ``b_do == 1``: the m3 codeword is decoded first at the
    macro BS.
    """

    b_eo: int
    b_do: int

    def __post_init__(self):
        for name in ("b_eo", "b_do"):
            if getattr(self, name) not in (0, 1):
                raise ModelError(f"{name} must be 0 or 1")
            object.__setattr__(self, name, int(getattr(self, name)))


ALL_ORDERS = tuple(OrderPair(eo, do) for eo in (0, 1) for do in (0, 1))


class ChannelKind(enum.Enum):
    REAL_GAUSSIAN = "real"
    COMPLEX_GAUSSIAN = "complex"


@dataclass(frozen=True)
class ChannelModel:
    kind: ChannelKind = ChannelKind.REAL_GAUSSIAN
    variance: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ChannelKind(self.kind))
        if not self.variance > 0.0:
            raise ModelError(f"variance must be > 0, got {self.variance}")


def sample_channels(
    rng: np.random.Generator, m: int, model: ChannelModel = ChannelModel()
) -> ChannelRealization:
    """Draw an i.i.d. channel realization from ``rng``.

    Draw order is fixed (h1, h2, h3, h4), so replaying a generator state
    reproduces the realization bit for bit.
    """
    if m < 2:
        raise ModelError(f"need M >= 2 antennas, got {m}")
    n = 2 * m + 2
    if model.kind is ChannelKind.REAL_GAUSSIAN:
        z = rng.normal(0.0, math.sqrt(model.variance), size=n).astype(np.complex128)
    else:
        s = math.sqrt(model.variance / 2.0)
        parts = rng.normal(0.0, s, size=(2, n))
        z = parts[0] + 1j * parts[1]
    return ChannelRealization(h1=z[:m], h2=z[m : 2 * m], h3=z[2 * m], h4=z[2 * m + 1])


def budget_from_p(p: float) -> PowerBudget:
    """Relative budgets used in the sweeps: BS gets P, relays P/2, users P/4."""
    if not p >= 0.0:
        raise ValueError(f"P must be >= 0, got {p}")
    return PowerBudget(p, p / 2.0, p / 2.0, p / 4.0, p / 4.0)
