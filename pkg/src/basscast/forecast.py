"""Demand prediction under the classical recursion and its mean-corrected variants.

Two generation modes exist. In one-step mode each in-sample prediction uses
the actual lagged cumulative demand, so prediction errors never compound; in
simulated mode the recursion accumulates its own output from D(0) = 0 and
produces a fully self-contained curve. Simulated mode is the default because
it is the honest end-to-end test of the model shape.

The modified variants add a constant correction to every prediction:
+r1 * mean demand for the additive variant, -r2 * mean demand for the
subtractive one, with r1/r2 taken from the tail profile.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DivergenceError, ParameterError
from .fitting import QuadraticCoefficients
from .series import TimeSeries, cumulative, mean_demand
from .tail import TailProfile

# Simulated cumulative demand beyond this magnitude is treated as divergence.
DIVERGENCE_GUARD = 1e15


class ModelVariant(str, Enum):
    CLASSICAL = "classical"
    MODIFIED_ADD = "modified_add"
    MODIFIED_SUBTRACT = "modified_subtract"
    AUTO = "auto"


# Candidate order doubles as the tie-break order for auto selection.
_AUTO_CANDIDATES = (
    ModelVariant.CLASSICAL,
    ModelVariant.MODIFIED_ADD,
    ModelVariant.MODIFIED_SUBTRACT,
)

_MODES = ("one_step", "simulated")


@dataclass(frozen=True)
class ForecastConfig:
    mode: str = "simulated"
    horizon: int = 0
    clamp_nonnegative: bool = False
    variant: ModelVariant = ModelVariant.AUTO

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ParameterError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if self.horizon < 0:
            raise ParameterError(f"horizon must be >= 0, got {self.horizon}")
        if not isinstance(self.variant, ModelVariant):
            object.__setattr__(self, "variant", ModelVariant(self.variant))


@dataclass(frozen=True, eq=False)
class ForecastResult:
    """Predicted demand sequence plus the provenance needed to reproduce it."""

    predicted: np.ndarray = field(repr=False)
    variant_used: ModelVariant
    correction_term: float
    config: ForecastConfig


def predict_classical(coeffs: QuadraticCoefficients, cumulative_value: float) -> float:
    """Predicted demand a + b*D + c*D**2 at lagged cumulative demand D."""
    if not np.isfinite(cumulative_value):
        raise ParameterError(f"cumulative value must be finite, got {cumulative_value}")
    D = cumulative_value
    return coeffs.a + coeffs.b * D + coeffs.c * D * D


def predict_modified(
    coeffs: QuadraticCoefficients, cumulative_value: float, correction: float
) -> float:
    """Classical prediction plus a signed constant correction term."""
    if not np.isfinite(correction):
        raise ParameterError(f"correction must be finite, got {correction}")
    return predict_classical(coeffs, cumulative_value) + correction


def _correction_for(variant: ModelVariant, tail: TailProfile, mean: float) -> float:
    if variant is ModelVariant.CLASSICAL:
        return 0.0
    if variant is ModelVariant.MODIFIED_ADD:
        return tail.r1 * mean
    if variant is ModelVariant.MODIFIED_SUBTRACT:
        return -(tail.r2 * mean)
    raise ParameterError(f"no correction defined for variant {variant}")


def _generate(
    series: TimeSeries,
    coeffs: QuadraticCoefficients,
    correction: float,
    mode: str,
    horizon: int,
    clamp: bool,
) -> np.ndarray:
    n = len(series)
    a, b, c = coeffs.a, coeffs.b, coeffs.c
    out = np.empty(n + horizon)

    def step(D: float, t: int) -> float:
        value = a + b * D + c * D * D + correction
        if clamp and value < 0.0:
            value = 0.0
        if not np.isfinite(value):
            raise DivergenceError(f"prediction overflowed at period {t}", period=t)
        return value

    if mode == "one_step":
        lagged = cumulative(series).values
        for t in range(n):
            out[t] = step(float(lagged[t]), t + 1)
        # Beyond the data the recursion has to feed on its own output.
        running = float(lagged[-1]) + float(series.demands[-1])
        for h in range(horizon):
            t = n + h + 1
            value = step(running, t)
            out[n + h] = value
            running += value
            if abs(running) > DIVERGENCE_GUARD:
                raise DivergenceError(
                    f"simulated cumulative demand exceeded {DIVERGENCE_GUARD:g} "
                    f"at period {t}",
                    period=t,
                )
    else:
        running = 0.0
        for t in range(1, n + horizon + 1):
            value = step(running, t)
            out[t - 1] = value
            running += value
            if abs(running) > DIVERGENCE_GUARD:
                raise DivergenceError(
                    f"simulated cumulative demand exceeded {DIVERGENCE_GUARD:g} "
                    f"at period {t}",
                    period=t,
                )
    return out


def _in_sample_sse(series: TimeSeries, predicted: np.ndarray) -> float:
    resid = series.demands - predicted[: len(series)]
    return float(resid @ resid)


def forecast(
    series: TimeSeries,
    coeffs: QuadraticCoefficients,
    tail: TailProfile,
    config: ForecastConfig = ForecastConfig(),
) -> ForecastResult:
    """Generate the predicted demand sequence for the observed range plus horizon.

    With variant ``auto`` the in-sample SSE of all three variants is computed
    in the configured mode and the minimiser wins; ties break in the order
    classical, modified_add, modified_subtract, so the correction is only
    applied when it strictly helps. The mean demand entering the correction is
    computed once from the observed series and frozen for the whole horizon.
    """
    mean = mean_demand(series)

    variant = config.variant
    if variant is ModelVariant.AUTO:
        best = None
        for candidate in _AUTO_CANDIDATES:
            corr = _correction_for(candidate, tail, mean)
            sse = _in_sample_sse(
                series,
                _generate(series, coeffs, corr, config.mode, 0, config.clamp_nonnegative),
            )
            if best is None or sse < best[0]:
                best = (sse, candidate)
        variant = best[1]

    correction = _correction_for(variant, tail, mean)
    predicted = _generate(
        series, coeffs, correction, config.mode, config.horizon, config.clamp_nonnegative
    )
    predicted.flags.writeable = False
    return ForecastResult(
        predicted=predicted,
        variant_used=variant,
        correction_term=correction,
        config=config,
    )
