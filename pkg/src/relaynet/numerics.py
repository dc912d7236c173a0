"""Complex vector helpers and a piecewise-concave scalar maximizer.

Vectors are 1-D ``complex128`` numpy arrays. Only the 2x2 Gram matrix of two
channel vectors is ever needed, so eigenvalues are computed in closed form.
"""

import math
from typing import Callable, Iterable, Optional, Tuple

import numpy as np

from relaynet.errors import DegenerateChannelError, DimensionError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def as_vector(a) -> np.ndarray:
    """Coerce ``a`` to a finite 1-D complex vector of length >= 1."""
    v = np.asarray(a, dtype=np.complex128)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1 or v.size < 1:
        raise DimensionError(f"expected a non-empty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def _check_same_length(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.size} vs {b.size}")


def inner_product(a, b) -> complex:
    """Return ``a^H b`` (conjugate-linear in the first argument)."""
    a, b = as_vector(a), as_vector(b)
    _check_same_length(a, b)
    return complex(np.vdot(a, b))


def norm_sq(a) -> float:
    """Squared Euclidean norm."""
    a = as_vector(a)
    return float(np.vdot(a, a).real)


def orthogonal_component(a, b) -> np.ndarray:
    """Component of ``a`` orthogonal to ``b``: ``a - (b^H a / ||b||^2) b``."""
    a, b = as_vector(a), as_vector(b)
    _check_same_length(a, b)
    nb = norm_sq(b)
    if nb == 0.0:
        raise DegenerateChannelError("cannot project against the zero vector")
    out = a - (np.vdot(b, a) / nb) * b
    # one re-orthogonalization pass keeps |b^H out| at round-off level
    out = out - (np.vdot(b, out) / nb) * b
    return out


def gram_eigenvalues(h1, h2) -> Tuple[float, float]:
    """Eigenvalues of ``[[|h1|^2, h1^H h2], [h2^H h1, |h2|^2]]``, descending.

    Closed-form 2x2 Hermitian solution. The smaller eigenvalue is recovered as
    ``det / lambda_1`` with the determinant taken as ``|h1|^2 |h2_perp|^2``,
    which avoids the cancellation in ``a d - |c|^2`` for nearly parallel
    channels. Round-off negatives are clamped to zero.
    """
    h1, h2 = as_vector(h1), as_vector(h2)
    _check_same_length(h1, h2)
    a, d = norm_sq(h1), norm_sq(h2)
    c = abs(complex(np.vdot(h1, h2))) ** 2
    trace = a + d
    lam1 = 0.5 * (trace + math.sqrt((a - d) ** 2 + 4.0 * c))
    if lam1 <= 0.0:
        return 0.0, 0.0
    if a > 0.0:
        det = a * norm_sq(orthogonal_component(h2, h1))
    else:
        det = 0.0
    lam2 = max(det / lam1, 0.0)
    return lam1, lam2


def golden_section_max(
    f: Callable[[float], float], lo: float, hi: float, tol: float
) -> Tuple[float, float]:
    """Golden-section search for the maximum of a unimodal ``f`` on [lo, hi].

    Stops once the bracket is no wider than ``tol``. Returns the best point
    evaluated, including both bracket ends.
    """
    a, b = lo, hi
    best_x, best_f = a, f(a)
    fb = f(b)
    if fb > best_f:
        best_x, best_f = b, fb
    if b - a <= tol:
        return best_x, best_f
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    for x, fx in ((c, fc), (d, fd)):
        if fx > best_f:
            best_x, best_f = x, fx
    return best_x, best_f


def maximize_piecewise_concave(
    f: Callable[[float], float],
    breakpoints: Iterable[float],
    lo: float,
    hi: float,
    tol: Optional[float] = None,
) -> Tuple[float, float]:
    """Global maximum of ``f`` on [lo, hi] when ``f`` is concave between
    consecutive breakpoints.

    Each segment is searched independently with golden-section search and the
    best candidate wins; segment ends are always evaluated, so a maximum that
    sits exactly on a kink is found exactly. ``tol`` is an argument-axis
    tolerance and defaults to ``1e-9 * (hi - lo)``. Ties keep the leftmost
    candidate.
    """
    if hi < lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    if tol is None:
        tol = 1e-9 * (hi - lo)
        if tol == 0.0:
            return lo, f(lo)
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")

    knots = sorted({lo, hi, *(x for x in breakpoints if lo < x < hi and math.isfinite(x))})
    best_x, best_f = lo, -math.inf
    for left, right in zip(knots[:-1], knots[1:]):
        x, fx = golden_section_max(f, left, right, tol)
        if fx > best_f:
            best_x, best_f = x, fx
    if len(knots) == 1:
        best_x, best_f = lo, f(lo)
    return best_x, best_f
